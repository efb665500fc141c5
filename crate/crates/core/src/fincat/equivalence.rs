use crate::caps::Caps;
use crate::check::{Check, Witness};
use crate::error::Result;

use super::{Functor, MorId, ObjId};

/// Outcome of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub check: Check,
    /// When the functor is an equivalence: for each target object `d`, the
    /// least source object `x` with an isomorphism `F x -> d`, and that iso.
    /// This is the object part of a quasi-inverse.
    pub quasi_inverse: Vec<(ObjId, MorId)>,
}

/// Bijective on every hom-set. Pairs are scanned in ascending order and the
/// first failure is reported.
pub fn fully_faithful(f: &Functor) -> Check {
    let (c, d) = (f.source(), f.target());
    for x in c.objects() {
        for y in c.objects() {
            let source_hom = c.hom(x, y);
            let target_hom = d.hom(f.object(x), f.object(y));
            let mut hit = vec![None; target_hom.len()];
            for &m in source_hom {
                let pos = target_hom.binary_search(&f.morphism(m)).expect("endpoints preserved");
                if let Some(prev) = hit[pos] {
                    return Check::fail(Witness::NotFaithful { x, y, f: prev, g: m });
                }
                hit[pos] = Some(m);
            }
            if let Some(pos) = hit.iter().position(Option::is_none) {
                return Check::fail(Witness::NotFull {
                    x,
                    y,
                    missing: target_hom[pos],
                });
            }
        }
    }
    Check::pass()
}

/// Decides whether `f` is an equivalence of categories: fully faithful and
/// essentially surjective. Inputs above the object/morphism caps are refused.
pub fn equivalence(f: &Functor) -> Result<EquivalenceReport> {
    let caps = Caps::global();
    for category in [f.source(), f.target()] {
        Caps::ensure("object", category.object_count(), caps.objects)?;
        Caps::ensure("morphism", category.morphism_count(), caps.morphisms)?;
    }
    let ff = fully_faithful(f);
    if !ff.holds {
        return Ok(EquivalenceReport {
            check: ff,
            quasi_inverse: Vec::new(),
        });
    }
    let d = f.target();
    let mut quasi_inverse = Vec::with_capacity(d.object_count());
    for target in d.objects() {
        let found = f.source().objects().find_map(|x| {
            d.hom(f.object(x), target)
                .iter()
                .copied()
                .find(|&u| d.is_iso(u))
                .map(|u| (x, u))
        });
        match found {
            Some(pair) => quasi_inverse.push(pair),
            None => {
                return Ok(EquivalenceReport {
                    check: Check::fail(Witness::NotEssentiallySurjective { object: target }),
                    quasi_inverse: Vec::new(),
                })
            }
        }
    }
    Ok(EquivalenceReport {
        check: Check::pass(),
        quasi_inverse,
    })
}

pub fn is_equivalence(f: &Functor) -> Result<bool> {
    Ok(equivalence(f)?.check.holds)
}
