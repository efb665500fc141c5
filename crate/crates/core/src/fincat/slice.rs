use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::{FinCategory, Functor, MorId, Morphism, ObjId};

/// Which comma category to form at a base object `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `(F ↓ d)`: objects `(x, u: F x -> d)`.
    Right,
    /// `(d ↓ F)`: objects `(x, u: d -> F x)`.
    Left,
}

/// A comma category together with the data naming its objects and morphisms.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: FinCategory,
    /// Object `i` is the pair `(x, u)`.
    pub objects: Vec<(ObjId, MorId)>,
    /// Underlying source morphism of each comma morphism.
    pub morphisms: Vec<MorId>,
    pub base: ObjId,
    pub orientation: Orientation,
    index: HashMap<(ObjId, MorId), usize>,
}

impl Comma {
    pub fn object_index(&self, x: ObjId, u: MorId) -> Option<usize> {
        self.index.get(&(x, u)).copied()
    }

    /// The comma morphism `i -> j` lying over source morphism `m`.
    pub fn morphism_between(&self, i: usize, j: usize, m: MorId) -> Option<MorId> {
        self.category
            .hom(i, j)
            .iter()
            .copied()
            .find(|&k| self.morphisms[k] == m)
    }
}

pub(crate) fn comma_raw(
    source: &FinCategory,
    target: &FinCategory,
    on_objects: &dyn Fn(ObjId) -> ObjId,
    on_morphisms: &dyn Fn(MorId) -> MorId,
    base: ObjId,
    orientation: Orientation,
) -> Comma {
    let mut objects = Vec::new();
    for x in source.objects() {
        let fx = on_objects(x);
        let homs = match orientation {
            Orientation::Right => target.hom(fx, base),
            Orientation::Left => target.hom(base, fx),
        };
        objects.extend(homs.iter().map(|&u| (x, u)));
    }
    let index: HashMap<(ObjId, MorId), usize> =
        objects.iter().enumerate().map(|(i, &key)| (key, i)).collect();

    let mut arrows: Vec<(usize, usize, MorId)> = Vec::new();
    for (i, &(x, u)) in objects.iter().enumerate() {
        for m in source.morphisms_out_of(x) {
            let fm = on_morphisms(m);
            let y = source.dst(m);
            match orientation {
                Orientation::Right => {
                    // u' ∘ F m = u
                    for &v in target.hom(on_objects(y), base) {
                        if target.comp(v, fm) == u {
                            arrows.push((i, index[&(y, v)], m));
                        }
                    }
                }
                Orientation::Left => {
                    let v = target.comp(fm, u);
                    arrows.push((i, index[&(y, v)], m));
                }
            }
        }
    }
    let arrow_index: HashMap<(usize, usize, MorId), MorId> =
        arrows.iter().enumerate().map(|(k, &key)| (key, k)).collect();
    let morphisms: Vec<Morphism> = arrows
        .iter()
        .map(|&(i, j, _)| Morphism { src: i, dst: j })
        .collect();
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, &(x, _))| arrow_index[&(i, i, source.identity(x))])
        .collect();
    let category = FinCategory::from_fn(objects.len(), morphisms, identities, |g, f| {
        let (i, _, m1) = arrows[f];
        let (_, k, m2) = arrows[g];
        arrow_index[&(i, k, source.comp(m2, m1))]
    })
    .expect("comma category of a valid functor");
    Comma {
        category,
        objects,
        morphisms: arrows.iter().map(|&(_, _, m)| m).collect(),
        base,
        orientation,
        index,
    }
}

/// The comma category of `f` at `d` in the given orientation.
pub fn comma(f: &Functor, d: ObjId, orientation: Orientation) -> Result<Comma> {
    f.target().check_object(d)?;
    Ok(comma_raw(
        f.source(),
        f.target(),
        &|x| f.object(x),
        &|m| f.morphism(m),
        d,
        orientation,
    ))
}

/// `C_{/x}`: objects are morphisms into `x`, morphisms commuting triangles.
pub fn slice(c: &FinCategory, x: ObjId) -> Result<Comma> {
    c.check_object(x)?;
    Ok(comma_raw(c, c, &|y| y, &|m| m, x, Orientation::Right))
}

/// `C_{x/}`: objects are morphisms out of `x`.
pub fn coslice(c: &FinCategory, x: ObjId) -> Result<Comma> {
    c.check_object(x)?;
    Ok(comma_raw(c, c, &|y| y, &|m| m, x, Orientation::Left))
}

fn induced(f: &Functor, x: ObjId, orientation: Orientation) -> Result<Functor> {
    let (from, to) = match orientation {
        Orientation::Right => (slice(f.source(), x)?, slice(f.target(), f.object(x))?),
        Orientation::Left => (coslice(f.source(), x)?, coslice(f.target(), f.object(x))?),
    };
    let on_objects: Vec<ObjId> = from
        .objects
        .iter()
        .map(|&(y, u)| to.object_index(f.object(y), f.morphism(u)).unwrap())
        .collect();
    let on_morphisms: Vec<MorId> = from
        .morphisms
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            let arrow = from.category.morphism(k);
            to.morphism_between(on_objects[arrow.src], on_objects[arrow.dst], f.morphism(m))
                .unwrap()
        })
        .collect();
    Functor::new(
        Arc::new(from.category),
        Arc::new(to.category),
        on_objects,
        on_morphisms,
    )
}

/// `C_{/x} -> D_{/F x}`.
pub fn slice_functor(f: &Functor, x: ObjId) -> Result<Functor> {
    f.source().check_object(x)?;
    induced(f, x, Orientation::Right)
}

/// `C_{x/} -> D_{F x/}`.
pub fn coslice_functor(f: &Functor, x: ObjId) -> Result<Functor> {
    f.source().check_object(x)?;
    induced(f, x, Orientation::Left)
}
