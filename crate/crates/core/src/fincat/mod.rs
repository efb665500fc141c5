//! Finite 1-categories given by explicit composition tables.
//!
//! Objects and morphisms are dense integer ids. A [`CategoryTable`] is raw,
//! possibly malformed data; [`validate_category`] lists every violated axiom
//! and [`FinCategory::new`] only accepts tables with an empty report. All
//! searches iterate ids in ascending order so witnesses are deterministic.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};

pub mod dot;
mod equivalence;
mod functor;
pub mod json;
mod poset;
mod slice;
mod subcategory;

pub use equivalence::{equivalence, fully_faithful, is_equivalence, EquivalenceReport};
pub use functor::Functor;
pub use poset::{FinPoset, IsoClassPoset};
pub use slice::{comma, coslice, coslice_functor, slice, slice_functor, Comma, Orientation};
pub use subcategory::FullSubcategory;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub src: ObjId,
    pub dst: ObjId,
}

/// Unvalidated category data. Composition triples are `(g, f, g∘f)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryTable {
    pub objects: usize,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<Option<MorId>>,
    pub composition: Vec<(MorId, MorId, MorId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    MorphismEndpoint { morphism: MorId, object: ObjId },
    MissingIdentity { object: ObjId },
    IdentityEndpoints { object: ObjId, morphism: MorId },
    UnknownMorphism { morphism: MorId },
    NotComposable { g: MorId, f: MorId },
    ConflictingComposite { g: MorId, f: MorId },
    CompositeEndpoints { g: MorId, f: MorId, composite: MorId },
    MissingComposite { g: MorId, f: MorId },
    LeftIdentity { morphism: MorId },
    RightIdentity { morphism: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::MorphismEndpoint { morphism, object } => {
                write!(f, "morphism {morphism} has unknown endpoint {object}")
            }
            Violation::MissingIdentity { object } => write!(f, "object {object} has no identity"),
            Violation::IdentityEndpoints { object, morphism } => {
                write!(f, "identity {morphism} of object {object} is not an endomorphism of it")
            }
            Violation::UnknownMorphism { morphism } => write!(f, "unknown morphism {morphism}"),
            Violation::NotComposable { g, f: ff } => {
                write!(f, "composite {g}∘{ff} given for a non-composable pair")
            }
            Violation::ConflictingComposite { g, f: ff } => {
                write!(f, "composite {g}∘{ff} given twice with different values")
            }
            Violation::CompositeEndpoints { g, f: ff, composite } => {
                write!(f, "composite {g}∘{ff} = {composite} has wrong endpoints")
            }
            Violation::MissingComposite { g, f: ff } => write!(f, "composite {g}∘{ff} missing"),
            Violation::LeftIdentity { morphism } => {
                write!(f, "left identity law fails for {morphism}")
            }
            Violation::RightIdentity { morphism } => {
                write!(f, "right identity law fails for {morphism}")
            }
            Violation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails for ({h}, {g}, {ff})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let shown: Vec<String> = self.violations.iter().take(5).map(|v| v.to_string()).collect();
        write!(f, "{}", shown.join("; "))?;
        if self.violations.len() > 5 {
            write!(f, " (and {} more)", self.violations.len() - 5)?;
        }
        Ok(())
    }
}

/// Checks the category axioms on a raw table and reports every violation.
///
/// Associativity is only examined once the table is structurally sound
/// (endpoints, identities, total composition), since the triple scan needs
/// every composite to exist.
pub fn validate_category(table: &CategoryTable) -> ValidationReport {
    let mut violations = Vec::new();
    let n = table.objects;
    let m = table.morphisms.len();

    for (id, mor) in table.morphisms.iter().enumerate() {
        for object in [mor.src, mor.dst] {
            if object >= n {
                violations.push(Violation::MorphismEndpoint { morphism: id, object });
            }
        }
    }
    for object in 0..n {
        match table.identities.get(object).copied().flatten() {
            None => violations.push(Violation::MissingIdentity { object }),
            Some(id) if id >= m => violations.push(Violation::UnknownMorphism { morphism: id }),
            Some(id) => {
                let mor = table.morphisms[id];
                if mor.src != object || mor.dst != object {
                    violations.push(Violation::IdentityEndpoints { object, morphism: id });
                }
            }
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    let mut compose: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for &(g, f, gf) in &table.composition {
        if let Some(&bad) = [g, f, gf].iter().find(|&&id| id >= m) {
            violations.push(Violation::UnknownMorphism { morphism: bad });
            continue;
        }
        let (mg, mf, mgf) = (table.morphisms[g], table.morphisms[f], table.morphisms[gf]);
        if mf.dst != mg.src {
            violations.push(Violation::NotComposable { g, f });
            continue;
        }
        if mgf.src != mf.src || mgf.dst != mg.dst {
            violations.push(Violation::CompositeEndpoints { g, f, composite: gf });
            continue;
        }
        if let Some(prev) = compose.insert((g, f), gf) {
            if prev != gf {
                violations.push(Violation::ConflictingComposite { g, f });
            }
        }
    }

    let mut out_of: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for (id, mor) in table.morphisms.iter().enumerate() {
        out_of[mor.src].push(id);
    }
    let mut total = true;
    for f in 0..m {
        for &g in &out_of[table.morphisms[f].dst] {
            if !compose.contains_key(&(g, f)) {
                violations.push(Violation::MissingComposite { g, f });
                total = false;
            }
        }
    }
    if !total {
        return ValidationReport { violations };
    }

    for (f, mor) in table.morphisms.iter().enumerate() {
        let id_src = table.identities[mor.src].unwrap();
        let id_dst = table.identities[mor.dst].unwrap();
        if compose[&(id_dst, f)] != f {
            violations.push(Violation::LeftIdentity { morphism: f });
        }
        if compose[&(f, id_src)] != f {
            violations.push(Violation::RightIdentity { morphism: f });
        }
    }

    // (h, g, f) ascending so the first witness is the lexicographically least.
    for h in 0..m {
        let into_h: Vec<MorId> = (0..m)
            .filter(|&g| table.morphisms[g].dst == table.morphisms[h].src)
            .collect();
        for &g in &into_h {
            let hg = compose[&(h, g)];
            for f in 0..m {
                if table.morphisms[f].dst != table.morphisms[g].src {
                    continue;
                }
                let gf = compose[&(g, f)];
                if compose[&(hg, f)] != compose[&(h, gf)] {
                    violations.push(Violation::Associativity { h, g, f });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// A validated finite category.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    compose: HashMap<(MorId, MorId), MorId>,
    hom: Vec<Vec<MorId>>,
    inverse: Vec<Option<MorId>>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    pub fn new(table: CategoryTable) -> Result<Self> {
        let report = validate_category(&table);
        if !report.is_valid() {
            return Err(Error::InvalidCategory(report));
        }
        let compose = table.composition.iter().map(|&(g, f, gf)| ((g, f), gf)).collect();
        let identities = table.identities.iter().map(|i| i.unwrap()).collect();
        Ok(Self::assemble(table.objects, table.morphisms, identities, compose))
    }

    /// Builds a category whose composition is given by `compose(g, f)` on every
    /// composable pair, then validates it.
    pub fn from_fn(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Result<Self> {
        let mut out_of: Vec<Vec<MorId>> = vec![Vec::new(); objects];
        for (id, mor) in morphisms.iter().enumerate() {
            if mor.src < objects {
                out_of[mor.src].push(id);
            }
        }
        let mut composition = Vec::new();
        for (f, mor) in morphisms.iter().enumerate() {
            if let Some(outs) = out_of.get(mor.dst) {
                for &g in outs {
                    composition.push((g, f, compose(g, f)));
                }
            }
        }
        Self::new(CategoryTable {
            objects,
            morphisms,
            identities: identities.into_iter().map(Some).collect(),
            composition,
        })
    }

    fn assemble(
        objects: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compose: HashMap<(MorId, MorId), MorId>,
    ) -> Self {
        let mut hom = vec![Vec::new(); objects * objects];
        for (id, mor) in morphisms.iter().enumerate() {
            hom[mor.src * objects + mor.dst].push(id);
        }
        let mut inverse = vec![None; morphisms.len()];
        for (f, mor) in morphisms.iter().enumerate() {
            inverse[f] = hom[mor.dst * objects + mor.src].iter().copied().find(|&g| {
                compose[&(g, f)] == identities[mor.src] && compose[&(f, g)] == identities[mor.dst]
            });
        }
        FinCategory {
            objects,
            morphisms,
            identities,
            compose,
            hom,
            inverse,
        }
    }

    /// The one-object category of a finite group (or monoid) with elements
    /// `0..order`, unit `unit` and `compose(g, f) = mul(g, f)`.
    pub fn delooping(order: usize, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let morphisms = vec![Morphism { src: 0, dst: 0 }; order];
        Self::from_fn(1, morphisms, vec![unit], mul)
    }

    /// B(Z/n).
    pub fn cyclic_group(n: usize) -> Self {
        Self::delooping(n, 0, |a, b| (a + b) % n).expect("Z/n is a group")
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        let morphisms = (0..n).map(|x| Morphism { src: x, dst: x }).collect();
        Self::from_fn(n, morphisms, (0..n).collect(), |g, _| g).expect("discrete category")
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: MorId) -> Morphism {
        self.morphisms[f]
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g∘f`, when `f` and `g` are composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    pub(crate) fn comp(&self, g: MorId, f: MorId) -> MorId {
        match self.compose.get(&(g, f)) {
            Some(&gf) => gf,
            None => panic!("morphisms {g} and {f} are not composable"),
        }
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x * self.objects + y]
    }

    pub fn morphisms_into(&self, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        (0..self.objects).flat_map(move |x| self.hom(x, y).iter().copied())
    }

    pub fn morphisms_out_of(&self, x: ObjId) -> impl Iterator<Item = MorId> + '_ {
        (0..self.objects).flat_map(move |y| self.hom(x, y).iter().copied())
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse[f].is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    pub fn check_object(&self, x: ObjId) -> Result<()> {
        if x < self.objects {
            Ok(())
        } else {
            Err(Error::UnknownObject(x))
        }
    }

    pub fn check_morphism(&self, f: MorId) -> Result<()> {
        if f < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::UnknownMorphism(f))
        }
    }

    /// Raw table with composition triples sorted by `(g, f)`.
    pub fn table(&self) -> CategoryTable {
        let mut composition: Vec<_> = self.compose.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        composition.sort_unstable();
        CategoryTable {
            objects: self.objects,
            morphisms: self.morphisms.clone(),
            identities: self.identities.iter().copied().map(Some).collect(),
            composition,
        }
    }

    /// Opposite category: same ids, endpoints swapped, `g ∘op f = f ∘ g`.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { src: m.dst, dst: m.src })
            .collect();
        let compose = self.compose.iter().map(|(&(g, f), &gf)| ((f, g), gf)).collect();
        Self::assemble(self.objects, morphisms, self.identities.clone(), compose)
    }

    /// Monomorphism test: `f∘-` is injective on `Hom(w, src f)` for every `w`.
    pub fn is_mono(&self, f: MorId) -> Result<Check> {
        self.check_morphism(f)?;
        let x = self.src(f);
        for w in self.objects() {
            let mut seen: HashMap<MorId, MorId> = HashMap::new();
            for &g in self.hom(w, x) {
                let fg = self.comp(f, g);
                if let Some(&h) = seen.get(&fg) {
                    return Ok(Check::fail(Witness::NotMono { f, g: h, h: g }));
                }
                seen.insert(fg, g);
            }
        }
        Ok(Check::pass())
    }

    /// Every morphism is a monomorphism.
    pub fn all_mono(&self) -> Check {
        for f in self.morphism_ids() {
            let check = self.is_mono(f).expect("own morphism");
            if !check.holds {
                return check;
            }
        }
        Check::pass()
    }

    /// Every endomorphism has a two-sided inverse.
    pub fn endos_are_autos(&self) -> Check {
        for x in self.objects() {
            for &f in self.hom(x, x) {
                if !self.is_iso(f) {
                    return Check::fail(Witness::Morphism { morphism: f });
                }
            }
        }
        Check::pass()
    }

    /// An object with a morphism to every object.
    pub fn weakly_initial_object(&self) -> Option<ObjId> {
        self.objects()
            .find(|&x| self.objects().all(|y| !self.hom(x, y).is_empty()))
    }

    /// An object receiving a morphism from every object.
    pub fn weakly_terminal_object(&self) -> Option<ObjId> {
        self.objects()
            .find(|&y| self.objects().all(|x| !self.hom(x, y).is_empty()))
    }

    pub fn has_weakly_initial(&self) -> bool {
        self.weakly_initial_object().is_some()
    }

    pub fn has_weakly_terminal(&self) -> bool {
        self.weakly_terminal_object().is_some()
    }

    /// Isomorphism classes: `class_of[x]` indexes into the returned list of
    /// representatives, classes ordered by least member.
    pub fn iso_classes(&self) -> (Vec<usize>, Vec<ObjId>) {
        let mut class_of = vec![usize::MAX; self.objects];
        let mut reps = Vec::new();
        for x in self.objects() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for y in x..self.objects {
                if self.hom(x, y).iter().any(|&f| self.is_iso(f)) {
                    class_of[y] = class;
                }
            }
        }
        (class_of, reps)
    }

    /// Connected components of the underlying undirected graph, same
    /// conventions as [`FinCategory::iso_classes`].
    pub fn components(&self) -> (Vec<usize>, Vec<ObjId>) {
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for mor in &self.morphisms {
            let (a, b) = (find(&mut parent, mor.src), find(&mut parent, mor.dst));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut class_of = vec![usize::MAX; self.objects];
        let mut reps = Vec::new();
        let mut root_class: HashMap<usize, usize> = HashMap::new();
        for x in self.objects() {
            let r = find(&mut parent, x);
            let class = *root_class.entry(r).or_insert_with(|| {
                reps.push(x);
                reps.len() - 1
            });
            class_of[x] = class;
        }
        (class_of, reps)
    }

    /// A groupoid in which every hom-set has at most one element.
    pub fn contractible_components(&self) -> Check {
        for f in self.morphism_ids() {
            if !self.is_iso(f) {
                return Check::fail(Witness::Morphism { morphism: f });
            }
        }
        for x in self.objects() {
            for y in self.objects() {
                if self.hom(x, y).len() > 1 {
                    return Check::fail(Witness::ObjectPair { x, y });
                }
            }
        }
        Check::pass()
    }

    /// Poset of isomorphism classes, `[x] ≤ [y]` iff `Hom(x, y)` is nonempty.
    pub fn iso_class_poset(&self) -> Result<IsoClassPoset> {
        let (class_of, reps) = self.iso_classes();
        let mut pairs = Vec::new();
        for x in self.objects() {
            for y in self.objects() {
                if self.hom(x, y).is_empty() {
                    continue;
                }
                let (a, b) = (class_of[x], class_of[y]);
                if a != b && !self.hom(y, x).is_empty() {
                    return Err(Error::NotAPoset(x.min(y), x.max(y)));
                }
                pairs.push((a, b));
            }
        }
        if let Some(Witness::Morphism { morphism }) = self.endos_are_autos().witness {
            return Err(Error::Precondition(format!(
                "endomorphism {morphism} is not an automorphism"
            )));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let poset = FinPoset::new(reps.len(), &pairs)?;
        Ok(IsoClassPoset {
            poset,
            class_of,
            representatives: reps,
        })
    }
}

#[cfg(test)]
mod tests;
