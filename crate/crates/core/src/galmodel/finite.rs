//! The level-`N` Frobenius action groupoid of a finite ring.
//!
//! Geometric points over `p` are homomorphisms into one fixed field
//! `F_{p^L}` per prime, `L` the least common multiple of the residue
//! degrees at `p` of every ring involved. `L` divides `N`, and a residue
//! field of degree `e | L` embeds in `F_{p^L}` exactly as often as in
//! `F_{p^N}`, so the hom-sets agree with the `F_{p^N}` ones while the field
//! stays small. A morphism `x -> y` is an exponent `k ∈ Z/N` with
//! `σ^k ∘ x = y`, `σ` the Frobenius of `F_{p^L}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::GaloisCategory;
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinPoset, Functor, Morphism, ObjId};
use crate::finring::{galois_field, homomorphisms_into_field, local_decomposition, Elem, FinCommRing, RingHom};

/// The fields receiving geometric points, shared by every ring of a
/// functor so that precomposition lands in the same object set.
#[derive(Clone, Debug)]
pub struct PointFields {
    level: usize,
    degrees: BTreeMap<u64, usize>,
    fields: BTreeMap<u64, Arc<FinCommRing>>,
}

impl PartialEq for PointFields {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.degrees == other.degrees
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl PointFields {
    pub fn for_rings(rings: &[&FinCommRing], level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::Precondition("level must be at least 1".into()));
        }
        let mut degrees: BTreeMap<u64, usize> = BTreeMap::new();
        for a in rings {
            for (i, factor) in local_decomposition(a)?.factors.iter().enumerate() {
                let (p, e) = (factor.residue_characteristic, factor.residue_degree);
                if level % e != 0 {
                    return Err(Error::LevelNotDivisible {
                        level,
                        degree: e,
                        factor: i,
                        prime: p,
                    });
                }
                let l = degrees.entry(p).or_insert(1);
                *l = lcm(*l, e);
            }
        }
        let mut fields = BTreeMap::new();
        for (&p, &l) in &degrees {
            fields.insert(p, Arc::new(galois_field(p, l)?));
        }
        Ok(PointFields {
            level,
            degrees,
            fields,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.degrees.keys().copied()
    }

    /// `L` for the prime `p`.
    pub fn degree(&self, p: u64) -> Option<usize> {
        self.degrees.get(&p).copied()
    }

    pub fn field(&self, p: u64) -> Option<&Arc<FinCommRing>> {
        self.fields.get(&p)
    }
}

/// A homomorphism `A -> F_{p^L}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometricPoint {
    pub prime: u64,
    /// Local factor of `A` it factors through.
    pub factor: usize,
    pub map: Vec<Elem>,
}

/// [`gal_finite_ring`] together with the data needed to build functors.
#[derive(Clone, Debug)]
pub struct FiniteRingModel {
    pub gal: GaloisCategory,
    pub ring: Arc<FinCommRing>,
    pub fields: PointFields,
    /// Object `x` is `points[x]`.
    pub points: Vec<GeometricPoint>,
    index: HashMap<(u64, Vec<Elem>), ObjId>,
}

impl FiniteRingModel {
    pub fn level(&self) -> usize {
        self.fields.level
    }

    pub fn object_of(&self, prime: u64, map: &[Elem]) -> Option<ObjId> {
        self.index.get(&(prime, map.to_vec())).copied()
    }

    /// Morphism `σ^k` out of `x`.
    pub fn morphism(&self, x: ObjId, k: usize) -> usize {
        x * self.level() + k % self.level()
    }
}

pub fn finite_ring_model(a: &Arc<FinCommRing>, fields: &PointFields) -> Result<FiniteRingModel> {
    let n = fields.level;
    let dec = local_decomposition(a)?;
    for (i, factor) in dec.factors.iter().enumerate() {
        let p = factor.residue_characteristic;
        match fields.degree(p) {
            Some(l) if l % factor.residue_degree == 0 => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "no point field for local factor {i} (p = {p}, degree {})",
                    factor.residue_degree
                )))
            }
        }
    }
    let mut points = Vec::new();
    // σ^j ∘ x for j < L, per object
    let mut orbits: Vec<Vec<Vec<Elem>>> = Vec::new();
    for (&p, field) in &fields.fields {
        let l = fields.degrees[&p];
        let sigma: Vec<Elem> = field.elements().map(|x| field.pow(x, p)).collect();
        for hom in homomorphisms_into_field(a, field)? {
            let factor = dec
                .factors
                .iter()
                .position(|fa| hom.apply(fa.idempotent) == field.one())
                .expect("a point factors through one local factor");
            let mut orbit = vec![hom.map().to_vec()];
            for j in 1..l {
                orbit.push(orbit[j - 1].iter().map(|&v| sigma[v]).collect());
            }
            orbits.push(orbit);
            points.push(GeometricPoint {
                prime: p,
                factor,
                map: hom.map().to_vec(),
            });
        }
    }
    let index: HashMap<(u64, Vec<Elem>), ObjId> = points
        .iter()
        .enumerate()
        .map(|(x, pt)| ((pt.prime, pt.map.clone()), x))
        .collect();
    let objects = points.len();
    let mut morphisms = Vec::with_capacity(objects * n);
    for (x, pt) in points.iter().enumerate() {
        let orbit = &orbits[x];
        for k in 0..n {
            let dst = index[&(pt.prime, orbit[k % orbit.len()].clone())];
            morphisms.push(Morphism { src: x, dst });
        }
    }
    let identities = (0..objects).map(|x| x * n).collect();
    let category = FinCategory::from_fn(objects, morphisms, identities, |g, f| {
        (f / n) * n + (f % n + g % n) % n
    })?;
    let labels = points
        .iter()
        .enumerate()
        .map(|(x, pt)| {
            let within = points[..x].iter().filter(|q| q.factor == pt.factor).count();
            format!("x{}.{} (p = {})", pt.factor, within, pt.prime)
        })
        .collect();
    let point_labels = dec
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| format!("p{i} (char {}, degree {})", f.residue_characteristic, f.residue_degree))
        .collect();
    let point_of: Vec<usize> = points.iter().map(|pt| pt.factor).collect();
    let gal = GaloisCategory::new(
        category,
        FinPoset::discrete(dec.len()),
        &point_of,
        Some(n),
        labels,
        point_labels,
    )?;
    Ok(FiniteRingModel {
        gal,
        ring: a.clone(),
        fields: fields.clone(),
        points,
        index,
    })
}

/// `Gal(Spec A)` at level `N`.
pub fn gal_finite_ring(a: &Arc<FinCommRing>, level: usize) -> Result<GaloisCategory> {
    let fields = PointFields::for_rings(&[a], level)?;
    Ok(finite_ring_model(a, &fields)?.gal)
}

/// `Gal(Spec B) -> Gal(Spec A)` for `f: A -> B`, between models built on
/// the same point fields.
pub fn gal_functor_between(f: &RingHom, source: &FiniteRingModel, target: &FiniteRingModel) -> Result<Functor> {
    if source.fields != target.fields {
        return Err(Error::Precondition(format!(
            "level mismatch: models are built at levels {} and {} or on different point fields",
            source.level(),
            target.level()
        )));
    }
    if *source.ring != **f.target() || *target.ring != **f.source() {
        return Err(Error::Precondition("models do not match the rings of the map".into()));
    }
    let n = source.level();
    let on_objects: Vec<ObjId> = source
        .points
        .iter()
        .map(|y| {
            let pulled: Vec<Elem> = f.source().elements().map(|a| y.map[f.apply(a)]).collect();
            target.object_of(y.prime, &pulled).expect("pullback of a point is a point")
        })
        .collect();
    let on_morphisms = (0..source.points.len() * n)
        .map(|m| on_objects[m / n] * n + m % n)
        .collect();
    Functor::new(
        source.gal.category().clone(),
        target.gal.category().clone(),
        on_objects,
        on_morphisms,
    )
}

/// `Gal(f)` at level `N`: precomposition with `f` on points, identity on
/// Frobenius exponents.
pub fn gal_functor(f: &RingHom, level: usize) -> Result<Functor> {
    let fields = PointFields::for_rings(&[f.source(), f.target()], level)?;
    let source = finite_ring_model(f.target(), &fields)?;
    let target = finite_ring_model(f.source(), &fields)?;
    gal_functor_between(f, &source, &target)
}

/// `Gal_{N'}(A) -> Gal_N(A)` for `N | N'`, reducing exponents mod `N`.
pub fn truncation(fine: &FiniteRingModel, coarse: &FiniteRingModel) -> Result<Functor> {
    let (big, small) = (fine.level(), coarse.level());
    if big % small != 0 || fine.fields.degrees != coarse.fields.degrees || fine.ring != coarse.ring {
        return Err(Error::Precondition(format!(
            "level {small} does not divide {big} or the models differ"
        )));
    }
    let on_objects: Vec<ObjId> = (0..fine.points.len()).collect();
    let on_morphisms = (0..fine.points.len() * big)
        .map(|m| (m / big) * small + (m % big) % small)
        .collect();
    Functor::new(
        fine.gal.category().clone(),
        coarse.gal.category().clone(),
        on_objects,
        on_morphisms,
    )
}
