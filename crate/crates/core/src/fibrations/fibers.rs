//! Fibers of a functor, computed equivalence-invariantly as comma categories.
//!
//! The *essential fiber* of `F` at `d` is the full subcategory of `(F ↓ d)` on
//! the objects `(x, u)` with `u: F x -> d` invertible. It is always a
//! groupoid when `F` is conservative, and it is the fiber that finite-fiber
//! and radicial checks look at: a "finite set" is a disjoint union of
//! contractible groupoids.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::Result;
use crate::fincat::{self, Comma, FinCategory, FullSubcategory, Functor, MorId, ObjId, Orientation};

/// A comma category of a functor at a base object.
#[derive(Clone, Debug)]
pub struct CommaFiber {
    pub base: ObjId,
    pub orientation: Orientation,
    pub comma: Comma,
}

impl CommaFiber {
    pub fn category(&self) -> &FinCategory {
        &self.comma.category
    }

    pub fn component_count(&self) -> usize {
        self.comma.category.components().1.len()
    }
}

pub fn comma_fiber(f: &Functor, d: ObjId, orientation: Orientation) -> Result<CommaFiber> {
    Ok(CommaFiber {
        base: d,
        orientation,
        comma: fincat::comma(f, d, orientation)?,
    })
}

/// Groupoid of pairs `(x, u: F x ≅ d)`.
#[derive(Clone, Debug)]
pub struct EssentialFiber {
    pub base: ObjId,
    pub category: FinCategory,
    /// Object `i` is the pair `(x, u)`.
    pub objects: Vec<(ObjId, MorId)>,
    /// Component index of each object, components ordered by least object.
    pub component_of: Vec<usize>,
    pub components: usize,
}

impl EssentialFiber {
    pub fn index_of(&self, x: ObjId, u: MorId) -> Option<usize> {
        self.objects.iter().position(|&p| p == (x, u))
    }

    /// Each component is a contractible groupoid.
    pub fn is_discrete(&self) -> Check {
        self.category.contractible_components()
    }
}

pub fn essential_fiber(f: &Functor, d: ObjId) -> Result<EssentialFiber> {
    let comma = fincat::comma(f, d, Orientation::Right)?;
    let target = f.target();
    let keep: Vec<usize> = comma
        .objects
        .iter()
        .enumerate()
        .filter(|(_, &(_, u))| target.is_iso(u))
        .map(|(i, _)| i)
        .collect();
    let objects = keep.iter().map(|&i| comma.objects[i]).collect();
    let sub = FullSubcategory::new(Arc::new(comma.category), keep)?;
    let inclusion = sub.inclusion();
    let category = inclusion.source().as_ref().clone();
    let (component_of, reps) = category.components();
    Ok(EssentialFiber {
        base: d,
        category,
        objects,
        component_of,
        components: reps.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FiberSize {
    Finite(usize),
    NonFinite { nonfinite: Witness },
}

impl FiberSize {
    pub fn size(&self) -> Option<usize> {
        match self {
            FiberSize::Finite(n) => Some(*n),
            FiberSize::NonFinite { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberProfile {
    pub check: Check,
    pub sizes: BTreeMap<ObjId, FiberSize>,
}

impl FiberProfile {
    /// Every fiber is empty or a single contractible component.
    pub fn empty_or_singleton(&self) -> Check {
        if !self.check.holds {
            return self.check.clone();
        }
        for (&object, size) in &self.sizes {
            if size.size().unwrap_or(0) > 1 {
                return Check::fail(Witness::Object { object });
            }
        }
        Check::pass()
    }

    /// Every fiber is a single contractible component.
    pub fn all_singletons(&self) -> Check {
        if !self.check.holds {
            return self.check.clone();
        }
        for (&object, size) in &self.sizes {
            if size.size() != Some(1) {
                return Check::fail(Witness::Object { object });
            }
        }
        Check::pass()
    }
}

/// For every target object, whether the essential fiber is a disjoint union
/// of contractible groupoids, and its number of components.
pub fn fiber_profile(f: &Functor) -> Result<FiberProfile> {
    let mut sizes = BTreeMap::new();
    let mut first_failure = None;
    for d in f.target().objects() {
        let fiber = essential_fiber(f, d)?;
        let discrete = fiber.is_discrete();
        let size = match discrete.witness {
            None => FiberSize::Finite(fiber.components),
            Some(w) => {
                let reason = match &w {
                    Witness::Morphism { morphism } => {
                        let (x, _) = fiber.objects[fiber.category.src(*morphism)];
                        format!("non-invertible morphism over source object {x}")
                    }
                    Witness::ObjectPair { x, y } => format!(
                        "two morphisms between fiber objects over {} and {}",
                        fiber.objects[*x].0, fiber.objects[*y].0
                    ),
                    other => other.to_string(),
                };
                let w = Witness::FiberNotContractible { object: d, reason };
                first_failure.get_or_insert(w.clone());
                FiberSize::NonFinite { nonfinite: w }
            }
        };
        sizes.insert(d, size);
    }
    Ok(FiberProfile {
        check: Check::from_witness(first_failure),
        sizes,
    })
}

/// Finite fibers in the sense of a finite disjoint union of contractible
/// groupoids.
pub fn is_finite_fibers(f: &Functor) -> Result<FiberProfile> {
    fiber_profile(f)
}

/// Number of isomorphism classes of source objects lying over the iso class
/// of each target object (the fiber on underlying posets of points).
pub fn point_counts(f: &Functor) -> BTreeMap<ObjId, usize> {
    let (class_of, _) = f.source().iso_classes();
    f.target()
        .objects()
        .map(|d| {
            let mut classes: Vec<usize> = f
                .objects_over(d)
                .into_iter()
                .map(|(x, _)| class_of[x])
                .collect();
            classes.sort_unstable();
            classes.dedup();
            (d, classes.len())
        })
        .collect()
}
