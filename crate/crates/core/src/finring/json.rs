//! `ring.v1` and `ringhom.v1` documents.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_ring, Elem, FinCommRing, Presentation, RingHom};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesJson {
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
}

/// A ring either as explicit tables or as a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingJson {
    Tables { tables: TablesJson },
    Presentation { presentation: Presentation },
}

impl RingJson {
    pub fn to_ring(&self) -> Result<FinCommRing> {
        match self {
            RingJson::Tables { tables } => FinCommRing::from_tables(&tables.add, &tables.mul),
            RingJson::Presentation { presentation } => build_ring(presentation),
        }
    }
}

impl From<&FinCommRing> for RingJson {
    fn from(a: &FinCommRing) -> Self {
        RingJson::Tables {
            tables: TablesJson {
                add: a.add_table(),
                mul: a.mul_table(),
            },
        }
    }
}

/// A ring given inline or by a path relative to the referring document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingJson),
}

impl RingRef {
    pub fn resolve(&self, base: Option<&Path>) -> Result<FinCommRing> {
        match self {
            RingRef::Inline(r) => r.to_ring(),
            RingRef::Path(p) => {
                let path = match base {
                    Some(dir) => dir.join(p),
                    None => p.into(),
                };
                let json: RingJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                json.to_ring()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingHomJson {
    pub source: RingRef,
    pub target: RingRef,
    pub map: Vec<Elem>,
}

impl RingHomJson {
    pub fn to_hom(&self, base: Option<&Path>) -> Result<RingHom> {
        let source = Arc::new(self.source.resolve(base)?);
        let target = Arc::new(self.target.resolve(base)?);
        RingHom::new(source, target, self.map.clone())
    }
}

impl From<&RingHom> for RingHomJson {
    fn from(f: &RingHom) -> Self {
        RingHomJson {
            source: RingRef::Inline(f.source().as_ref().into()),
            target: RingRef::Inline(f.target().as_ref().into()),
            map: f.map().to_vec(),
        }
    }
}
