use std::sync::Arc;

use crate::error::{Error, Result};

use super::{FinCategory, MorId, ObjId};

/// A validated functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    on_objects: Vec<ObjId>,
    on_morphisms: Vec<MorId>,
}

impl Functor {
    /// Checks that the maps preserve endpoints, identities and composites.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        on_objects: Vec<ObjId>,
        on_morphisms: Vec<MorId>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFunctor(msg));
        if on_objects.len() != source.object_count() {
            return bad(format!(
                "object map has {} entries for {} objects",
                on_objects.len(),
                source.object_count()
            ));
        }
        if on_morphisms.len() != source.morphism_count() {
            return bad(format!(
                "morphism map has {} entries for {} morphisms",
                on_morphisms.len(),
                source.morphism_count()
            ));
        }
        if let Some((x, &y)) = on_objects
            .iter()
            .enumerate()
            .find(|(_, &y)| y >= target.object_count())
        {
            return bad(format!("object {x} maps to unknown object {y}"));
        }
        for (f, &image) in on_morphisms.iter().enumerate() {
            if image >= target.morphism_count() {
                return bad(format!("morphism {f} maps to unknown morphism {image}"));
            }
            let m = source.morphism(f);
            let fm = target.morphism(image);
            if fm.src != on_objects[m.src] || fm.dst != on_objects[m.dst] {
                return bad(format!("morphism {f} does not preserve endpoints"));
            }
        }
        for x in source.objects() {
            if on_morphisms[source.identity(x)] != target.identity(on_objects[x]) {
                return bad(format!("identity of object {x} is not preserved"));
            }
        }
        for f in source.morphism_ids() {
            for g in source.morphisms_out_of(source.dst(f)) {
                let lhs = on_morphisms[source.comp(g, f)];
                let rhs = target.comp(on_morphisms[g], on_morphisms[f]);
                if lhs != rhs {
                    return bad(format!("composite {g}∘{f} is not preserved"));
                }
            }
        }
        Ok(Functor {
            source,
            target,
            on_objects,
            on_morphisms,
        })
    }

    pub fn identity(category: Arc<FinCategory>) -> Self {
        Functor {
            on_objects: category.objects().collect(),
            on_morphisms: category.morphism_ids().collect(),
            source: category.clone(),
            target: category,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn object(&self, x: ObjId) -> ObjId {
        self.on_objects[x]
    }

    pub fn morphism(&self, f: MorId) -> MorId {
        self.on_morphisms[f]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.on_objects
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.on_morphisms
    }

    /// `next ∘ self`. The categories must agree as values.
    pub fn then(&self, next: &Functor) -> Result<Functor> {
        if *self.target != *next.source {
            return Err(Error::InvalidFunctor(
                "cannot compose: target and source differ".into(),
            ));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: next.target.clone(),
            on_objects: self.on_objects.iter().map(|&y| next.object(y)).collect(),
            on_morphisms: self.on_morphisms.iter().map(|&g| next.morphism(g)).collect(),
        })
    }

    /// Objects whose image is isomorphic to `d`, with a chosen iso `F x -> d`.
    pub fn objects_over(&self, d: ObjId) -> Vec<(ObjId, MorId)> {
        self.source
            .objects()
            .filter_map(|x| {
                self.target
                    .hom(self.object(x), d)
                    .iter()
                    .copied()
                    .find(|&u| self.target.is_iso(u))
                    .map(|u| (x, u))
            })
            .collect()
    }

    /// Reflects isomorphisms: `F f` iso implies `f` iso.
    pub fn is_conservative(&self) -> crate::check::Check {
        use crate::check::{Check, Witness};
        for f in self.source.morphism_ids() {
            if self.target.is_iso(self.morphism(f)) && !self.source.is_iso(f) {
                return Check::fail(Witness::Morphism { morphism: f });
            }
        }
        Check::pass()
    }
}
