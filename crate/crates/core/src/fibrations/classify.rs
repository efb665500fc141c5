use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::fibers::{fiber_profile, point_counts, FiberSize};
use super::subcat;
use crate::check::{Check, Witness};
use crate::error::Result;
use crate::fincat::{self, FullSubcategory, Functor, ObjId};

fn slice_criterion(f: &Functor, left: bool) -> Result<Check> {
    for x in f.source().objects() {
        let induced = if left {
            fincat::coslice_functor(f, x)?
        } else {
            fincat::slice_functor(f, x)?
        };
        let report = fincat::equivalence(&induced)?;
        if let Some(cause) = report.check.witness {
            return Ok(Check::fail(Witness::SliceNotEquivalent {
                object: x,
                cause: Box::new(cause),
            }));
        }
    }
    Ok(Check::pass())
}

/// `C_{/x} -> D_{/F x}` is an equivalence for every `x`.
pub fn is_right_fibration(f: &Functor) -> Result<Check> {
    slice_criterion(f, false)
}

/// `C_{x/} -> D_{F x/}` is an equivalence for every `x`.
pub fn is_left_fibration(f: &Functor) -> Result<Check> {
    slice_criterion(f, true)
}

pub fn is_kan_fibration(f: &Functor) -> Result<Check> {
    let left = is_left_fibration(f)?;
    if !left.holds {
        return Ok(left);
    }
    is_right_fibration(f)
}

/// Every target morphism `ψ: y -> F ξ` lifts to some `φ: x -> ξ` up to an
/// isomorphism `α: y ≅ F x`, i.e. `ψ = F φ ∘ α`.
pub fn specialization_lifting(f: &Functor) -> Check {
    let (c, d) = (f.source(), f.target());
    for xi in c.objects() {
        let mut reachable = HashSet::new();
        for phi in c.morphisms_into(xi) {
            let fx = f.object(c.src(phi));
            let fphi = f.morphism(phi);
            for y in d.objects() {
                for &alpha in d.hom(y, fx) {
                    if d.is_iso(alpha) {
                        reachable.insert(d.comp(fphi, alpha));
                    }
                }
            }
        }
        if let Some(psi) = d.morphisms_into(f.object(xi)).find(|psi| !reachable.contains(psi)) {
            return Check::fail(Witness::LiftMissing {
                object: xi,
                morphism: psi,
            });
        }
    }
    Check::pass()
}

/// Essential image of `f` as a full subcategory of the target (replete).
pub fn essential_image(f: &Functor) -> FullSubcategory {
    let d = f.target();
    let objects = d.objects().filter(|&y| {
        f.source()
            .objects()
            .any(|x| d.hom(f.object(x), y).iter().any(|&u| d.is_iso(u)))
    });
    FullSubcategory::new(d.clone(), objects.collect::<Vec<_>>()).expect("objects of target")
}

fn up_to_equivalence(f: &Functor, shape: fn(&FullSubcategory) -> Check) -> Check {
    let ff = fincat::fully_faithful(f);
    if !ff.holds {
        return ff;
    }
    shape(&essential_image(f))
}

/// Equivalent to the inclusion of a sieve.
pub fn is_sieve_inclusion(f: &Functor) -> Check {
    up_to_equivalence(f, subcat::is_sieve)
}

/// Equivalent to the inclusion of a cosieve.
pub fn is_cosieve_inclusion(f: &Functor) -> Check {
    up_to_equivalence(f, subcat::is_cosieve)
}

/// Equivalent to the inclusion of an interval.
pub fn is_interval_inclusion(f: &Functor) -> Check {
    up_to_equivalence(f, subcat::is_interval)
}

/// Per-property verdicts for one functor (`report.v1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub functor: String,
    pub sieve: bool,
    pub cosieve: bool,
    pub interval: bool,
    pub left: bool,
    pub right: bool,
    pub kan: bool,
    pub equivalence: bool,
    pub finite_fibers: bool,
    pub fibers: BTreeMap<ObjId, FiberSize>,
    /// Iso classes of source objects over each target object.
    pub points: BTreeMap<ObjId, usize>,
    pub lifting: bool,
    pub witnesses: BTreeMap<String, Witness>,
}

pub fn classify(name: &str, f: &Functor) -> Result<ClassificationReport> {
    let mut witnesses = BTreeMap::new();
    let mut record = |key: &str, check: Check| -> bool {
        if let Some(w) = check.witness {
            witnesses.insert(key.to_string(), w);
        }
        check.holds
    };
    let sieve = record("sieve", is_sieve_inclusion(f));
    let cosieve = record("cosieve", is_cosieve_inclusion(f));
    let interval = record("interval", is_interval_inclusion(f));
    let left = record("left", is_left_fibration(f)?);
    let right = record("right", is_right_fibration(f)?);
    let equivalence = record("equivalence", fincat::equivalence(f)?.check);
    let profile = fiber_profile(f)?;
    let finite_fibers = record("fibers", profile.check.clone());
    let lifting = record("lifting", specialization_lifting(f));
    Ok(ClassificationReport {
        functor: name.to_string(),
        sieve,
        cosieve,
        interval,
        left,
        right,
        kan: left && right,
        equivalence,
        finite_fibers,
        fibers: profile.sizes,
        points: point_counts(f),
        lifting,
        witnesses,
    })
}

/// Restriction of `f` to the preimage of a full subcategory of the target
/// (the base change of `f` along a sieve or cosieve inclusion).
pub fn restrict_to_preimage(f: &Functor, targets: &[ObjId]) -> Result<Functor> {
    let d = f.target();
    let base = FullSubcategory::new(d.clone(), targets.iter().copied())?;
    let sources: Vec<ObjId> = f
        .source()
        .objects()
        .filter(|&x| base.contains(f.object(x)))
        .collect();
    let source_sub = FullSubcategory::new(f.source().clone(), sources)?.inclusion();
    let base_inc = base.inclusion();
    let target_index = |y: ObjId| base.objects().binary_search(&y).unwrap();
    let on_objects = source_sub
        .object_map()
        .iter()
        .map(|&x| target_index(f.object(x)))
        .collect();
    let on_morphisms = source_sub
        .morphism_map()
        .iter()
        .map(|&m| {
            let image = f.morphism(m);
            base_inc.morphism_map().binary_search(&image).unwrap()
        })
        .collect();
    Functor::new(
        source_sub.source().clone(),
        Arc::clone(base_inc.source()),
        on_objects,
        on_morphisms,
    )
}
