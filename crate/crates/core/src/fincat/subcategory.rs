use std::sync::Arc;

use crate::error::Result;

use super::{FinCategory, Functor, MorId, Morphism, ObjId};

/// A full subcategory, given by a set of objects of the parent.
#[derive(Clone, Debug)]
pub struct FullSubcategory {
    parent: Arc<FinCategory>,
    objects: Vec<ObjId>,
}

impl FullSubcategory {
    pub fn new(parent: Arc<FinCategory>, objects: impl IntoIterator<Item = ObjId>) -> Result<Self> {
        let mut objects: Vec<ObjId> = objects.into_iter().collect();
        objects.sort_unstable();
        objects.dedup();
        for &x in &objects {
            parent.check_object(x)?;
        }
        Ok(FullSubcategory { parent, objects })
    }

    pub fn parent(&self) -> &Arc<FinCategory> {
        &self.parent
    }

    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn contains(&self, x: ObjId) -> bool {
        self.objects.binary_search(&x).is_ok()
    }

    /// The subcategory as a category in its own right, with the inclusion
    /// functor into the parent. Objects are renumbered in ascending order.
    pub fn inclusion(&self) -> Functor {
        let parent = &self.parent;
        let index = |x: ObjId| self.objects.binary_search(&x).unwrap();
        let mut kept: Vec<MorId> = Vec::new();
        for f in parent.morphism_ids() {
            if self.contains(parent.src(f)) && self.contains(parent.dst(f)) {
                kept.push(f);
            }
        }
        let local = |f: MorId| kept.binary_search(&f).unwrap();
        let morphisms = kept
            .iter()
            .map(|&f| Morphism {
                src: index(parent.src(f)),
                dst: index(parent.dst(f)),
            })
            .collect();
        let identities = self.objects.iter().map(|&x| local(parent.identity(x))).collect();
        let category = FinCategory::from_fn(self.objects.len(), morphisms, identities, |g, f| {
            local(parent.comp(kept[g], kept[f]))
        })
        .expect("full subcategory of a valid category");
        Functor::new(Arc::new(category), parent.clone(), self.objects.clone(), kept)
            .expect("inclusion functor")
    }
}
