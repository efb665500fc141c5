//! Truncated Galois categories.
//!
//! A [`GaloisCategory`] is a finite category together with a conservative
//! functor onto a finite poset of points. Two families of builders are
//! provided: the level-`N` Frobenius action groupoid of a finite ring
//! ([`gal_finite_ring`]) and stratified models of number rings assembled
//! from decomposition and inertia groups ([`gal_number_ring`]).

use std::sync::Arc;

use serde::Serialize;

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::fincat::{slice, FinCategory, FinPoset, Functor, ObjId};

mod finite;
mod group;
pub mod json;
mod number;


pub use finite::{
    finite_ring_model, gal_finite_ring, gal_functor, gal_functor_between, truncation, FiniteRingModel,
    GeometricPoint, PointFields,
};
pub use group::FiniteGroup;
pub use number::{
    cyclotomic_splitting, gal_number_ring, gal_relative_functor, number_ring_model, relative_model, Arrow,
    NumberRingModel, PrimeSplitting, RelativeModel, SplittingDatum,
};

/// A finite category over its poset of points.
#[derive(Clone, Debug)]
pub struct GaloisCategory {
    category: Arc<FinCategory>,
    zariski: FinPoset,
    projection: Functor,
    /// Frobenius truncation level, when the model has one.
    level: Option<usize>,
    labels: Vec<String>,
    point_labels: Vec<String>,
}

impl GaloisCategory {
    /// `point_of[x]` is the point under object `x`; every morphism `x -> y`
    /// must lie over `point_of[x] ≤ point_of[y]`.
    pub fn new(
        category: FinCategory,
        zariski: FinPoset,
        point_of: &[usize],
        level: Option<usize>,
        labels: Vec<String>,
        point_labels: Vec<String>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if point_of.len() != category.object_count() || labels.len() != category.object_count() {
            return bad("one point and one label per object are required".into());
        }
        if point_labels.len() != zariski.len() {
            return bad("one label per point is required".into());
        }
        if let Some(x) = point_of.iter().position(|&p| p >= zariski.len()) {
            return bad(format!("object {x} lies over an unknown point"));
        }
        let mut on_morphisms = Vec::with_capacity(category.morphism_count());
        for f in category.morphism_ids() {
            let m = category.morphism(f);
            match zariski.morphism_id(point_of[m.src], point_of[m.dst]) {
                Some(id) => on_morphisms.push(id),
                None => return bad(format!("morphism {f} goes down in the point poset")),
            }
        }
        let category = Arc::new(category);
        let projection = Functor::new(
            category.clone(),
            Arc::new(zariski.to_category()),
            point_of.to_vec(),
            on_morphisms,
        )?;
        Ok(GaloisCategory {
            category,
            zariski,
            projection,
            level,
            labels,
            point_labels,
        })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn zariski(&self) -> &FinPoset {
        &self.zariski
    }

    pub fn projection(&self) -> &Functor {
        &self.projection
    }

    pub fn level(&self) -> Option<usize> {
        self.level
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn point_of(&self, x: ObjId) -> usize {
        self.projection.object(x)
    }

    /// Object with the given label.
    pub fn object_named(&self, label: &str) -> Result<ObjId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    /// Point with the given label.
    pub fn point_named(&self, label: &str) -> Result<usize> {
        self.point_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    /// All objects over the given points.
    pub fn objects_over_points(&self, points: &[usize]) -> Vec<ObjId> {
        self.category
            .objects()
            .filter(|&x| points.contains(&self.point_of(x)))
            .collect()
    }

    pub fn axioms(&self) -> AxiomReport {
        let c = &self.category;
        let zariski_match = match c.iso_class_poset() {
            Err(e) => Check::fail(Witness::Note {
                detail: format!("no poset of isomorphism classes: {e}"),
            }),
            Ok(classes) => {
                let map: Vec<usize> = classes
                    .representatives
                    .iter()
                    .map(|&x| self.point_of(x))
                    .collect();
                if classes.poset.is_isomorphism_onto(&self.zariski, &map) {
                    Check::pass()
                } else {
                    Check::fail(Witness::Note {
                        detail: "isomorphism classes do not match the points".into(),
                    })
                }
            }
        };
        let mut slice_joins = Check::pass();
        for y in c.objects() {
            let joins = slice(c, y)
                .and_then(|s| s.category.iso_class_poset())
                .map(|p| p.poset.has_finite_nonempty_joins().holds)
                .unwrap_or(false);
            if !joins {
                slice_joins = Check::fail(Witness::Object { object: y });
                break;
            }
        }
        AxiomReport {
            conservative: self.projection.is_conservative(),
            endos_are_autos: c.endos_are_autos(),
            all_mono: c.all_mono(),
            zariski_match,
            slice_joins,
        }
    }

    /// Fails with the first violated axiom.
    pub fn validate(self) -> Result<Self> {
        let report = self.axioms();
        match report.first_failure() {
            None => Ok(self),
            Some((name, w)) => Err(Error::Precondition(format!(
                "Galois category axiom {name} fails at {w}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub conservative: Check,
    pub endos_are_autos: Check,
    pub all_mono: Check,
    /// The poset of isomorphism classes is the point poset.
    pub zariski_match: Check,
    /// Every slice has a poset of isomorphism classes with finite nonempty joins.
    pub slice_joins: Check,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<(&'static str, Witness)> {
        [
            ("conservative", &self.conservative),
            ("endos_are_autos", &self.endos_are_autos),
            ("all_mono", &self.all_mono),
            ("zariski_match", &self.zariski_match),
            ("slice_joins", &self.slice_joins),
        ]
        .into_iter()
        .find(|(_, c)| !c.holds)
        .map(|(n, c)| {
            (
                n,
                c.witness.clone().unwrap_or(Witness::Note { detail: String::new() }),
            )
        })
    }
}
