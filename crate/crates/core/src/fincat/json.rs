//! `category.v1` and `functor.v1` documents.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{CategoryTable, FinCategory, Functor, Morphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<usize>,
    pub morphisms: Vec<MorphismJson>,
    #[serde(deserialize_with = "numeric_keys")]
    pub identities: BTreeMap<usize, usize>,
    pub composition: Vec<[usize; 3]>,
}

/// JSON object keys are strings; inside untagged enums serde will not
/// convert them to integers on its own.
fn numeric_keys<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<usize, usize>, D::Error> {
    let raw = BTreeMap::<String, usize>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.parse()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("identity key {k:?} is not an object id")))
        })
        .collect()
}

impl CategoryJson {
    /// Converts to a raw table. Ids must be dense; the axioms are not checked.
    pub fn to_table(&self) -> Result<CategoryTable> {
        let n = self.objects.len();
        let mut sorted = self.objects.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::Precondition("object ids must be exactly 0..n".into()));
        }
        let m = self.morphisms.len();
        let mut morphisms = vec![None; m];
        for mj in &self.morphisms {
            if mj.id >= m || morphisms[mj.id].is_some() {
                return Err(Error::Precondition(format!(
                    "morphism id {} is duplicated or not in 0..{m}",
                    mj.id
                )));
            }
            morphisms[mj.id] = Some(Morphism {
                src: mj.src,
                dst: mj.dst,
            });
        }
        let mut identities = vec![None; n];
        for (&obj, &mor) in &self.identities {
            if obj < n {
                identities[obj] = Some(mor);
            }
        }
        Ok(CategoryTable {
            objects: n,
            morphisms: morphisms.into_iter().map(Option::unwrap).collect(),
            identities,
            composition: self.composition.iter().map(|&[g, f, gf]| (g, f, gf)).collect(),
        })
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        FinCategory::new(self.to_table()?)
    }
}

impl From<&FinCategory> for CategoryJson {
    fn from(c: &FinCategory) -> Self {
        let table = c.table();
        CategoryJson {
            objects: (0..table.objects).collect(),
            morphisms: table
                .morphisms
                .iter()
                .enumerate()
                .map(|(id, m)| MorphismJson {
                    id,
                    src: m.src,
                    dst: m.dst,
                })
                .collect(),
            identities: table
                .identities
                .iter()
                .enumerate()
                .map(|(x, id)| (x, id.unwrap()))
                .collect(),
            composition: table.composition.iter().map(|&(g, f, gf)| [g, f, gf]).collect(),
        }
    }
}

/// A category inline or by path (relative to the referring document).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(CategoryJson),
}

impl CategoryRef {
    pub fn resolve(&self, base: Option<&Path>) -> Result<FinCategory> {
        match self {
            CategoryRef::Inline(c) => c.to_category(),
            CategoryRef::Path(p) => {
                let path = match base {
                    Some(dir) => dir.join(p),
                    None => p.into(),
                };
                let text = std::fs::read_to_string(path)?;
                let json: CategoryJson = serde_json::from_str(&text)?;
                json.to_category()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: CategoryRef,
    pub target: CategoryRef,
    pub on_objects: BTreeMap<usize, usize>,
    pub on_morphisms: BTreeMap<usize, usize>,
}

impl FunctorJson {
    pub fn to_functor(&self, base: Option<&Path>) -> Result<Functor> {
        let source = Arc::new(self.source.resolve(base)?);
        let target = Arc::new(self.target.resolve(base)?);
        let dense = |map: &BTreeMap<usize, usize>, n: usize, what: &str| -> Result<Vec<usize>> {
            (0..n)
                .map(|i| {
                    map.get(&i)
                        .copied()
                        .ok_or_else(|| Error::InvalidFunctor(format!("{what} {i} is not mapped")))
                })
                .collect()
        };
        let on_objects = dense(&self.on_objects, source.object_count(), "object")?;
        let on_morphisms = dense(&self.on_morphisms, source.morphism_count(), "morphism")?;
        Functor::new(source, target, on_objects, on_morphisms)
    }
}

impl From<&Functor> for FunctorJson {
    fn from(f: &Functor) -> Self {
        FunctorJson {
            source: CategoryRef::Inline(f.source().as_ref().into()),
            target: CategoryRef::Inline(f.target().as_ref().into()),
            on_objects: f.object_map().iter().copied().enumerate().collect(),
            on_morphisms: f.morphism_map().iter().copied().enumerate().collect(),
        }
    }
}
