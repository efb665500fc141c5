use std::collections::VecDeque;
use std::sync::Arc;

use super::decompose::{local_decomposition, LocalDecomposition};
use super::{is_prime, Elem, FinCommRing};
use crate::check::{Check, Witness};
use crate::error::{Error, Result};

/// A unital ring homomorphism, given by its element map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: Arc<FinCommRing>,
    target: Arc<FinCommRing>,
    map: Vec<Elem>,
}

impl RingHom {
    pub fn new(source: Arc<FinCommRing>, target: Arc<FinCommRing>, map: Vec<Elem>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRingHom(msg));
        if map.len() != source.size() {
            return bad(format!("map has {} entries, source has {}", map.len(), source.size()));
        }
        if let Some(x) = map.iter().position(|&y| y >= target.size()) {
            return bad(format!("image of {x} is not a target element"));
        }
        if map[source.one()] != target.one() {
            return bad("1 is not sent to 1".into());
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.add(x, y)] != target.add(map[x], map[y]) {
                    return bad(format!("sum {x} + {y} is not preserved"));
                }
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return bad(format!("product {x} · {y} is not preserved"));
                }
            }
        }
        Ok(RingHom { source, target, map })
    }

    pub fn identity(a: Arc<FinCommRing>) -> Self {
        let map = a.elements().collect();
        RingHom {
            source: a.clone(),
            target: a,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FinCommRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCommRing> {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RingHom) -> Result<RingHom> {
        if *self.target != *next.source {
            return Err(Error::InvalidRingHom("target and source do not match".into()));
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn kernel(&self) -> Vec<Elem> {
        self.source.elements().filter(|&x| self.map[x] == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `x ↦ x^p` for `A` of prime characteristic `p`.
pub fn frobenius(a: &Arc<FinCommRing>) -> Result<RingHom> {
    let p = a.characteristic();
    if !is_prime(p) {
        return Err(Error::CharacteristicNotPrime(p));
    }
    let map = a.elements().map(|x| a.pow(x, p)).collect();
    RingHom::new(a.clone(), a.clone(), map)
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism on the subring generated
/// by `gens`, checking every sum and product along the way. Returns `None`
/// on a conflict or if `gens` do not generate `source`.
pub fn extend_hom(
    source: &FinCommRing,
    target: &FinCommRing,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let mut map: Vec<Option<Elem>> = vec![None; source.size()];
    let mut defined = Vec::new();
    let mut queue = VecDeque::new();
    fn assign(map: &mut [Option<Elem>], queue: &mut VecDeque<Elem>, x: Elem, y: Elem) -> bool {
        match map[x] {
            Some(z) => z == y,
            None => {
                map[x] = Some(y);
                queue.push_back(x);
                true
            }
        }
    }
    if !assign(&mut map, &mut queue, 0, 0) || !assign(&mut map, &mut queue, source.one(), target.one()) {
        return None;
    }
    for (&g, &i) in gens.iter().zip(images) {
        if !assign(&mut map, &mut queue, g, i) {
            return None;
        }
    }
    while let Some(x) = queue.pop_front() {
        defined.push(x);
        let fx = map[x].unwrap();
        for k in 0..defined.len() {
            let y = defined[k];
            let fy = map[y].unwrap();
            if !assign(&mut map, &mut queue, source.add(x, y), target.add(fx, fy))
                || !assign(&mut map, &mut queue, source.mul(x, y), target.mul(fx, fy))
            {
                return None;
            }
        }
        if !assign(&mut map, &mut queue, source.neg(x), target.neg(fx)) {
            return None;
        }
    }
    map.into_iter().collect()
}

/// All homomorphisms `A -> K` into a finite field, sorted by element map.
/// Each factors through the residue field of exactly one local factor.
pub fn homomorphisms_into_field(a: &Arc<FinCommRing>, k: &Arc<FinCommRing>) -> Result<Vec<RingHom>> {
    if !k.is_field() {
        return Err(Error::InvalidRing("target is not a field".into()));
    }
    let dec = local_decomposition(a)?;
    let mut out = Vec::new();
    for factor in &dec.factors {
        if factor.residue_characteristic != k.characteristic() {
            continue;
        }
        let kappa = &factor.residue;
        // a primitive element; the prime field needs none
        let alpha = kappa
            .elements()
            .find(|&x| kappa.subring_generated(&[x]).len() == kappa.size())
            .expect("finite fields are simple extensions");
        let embeddings: Vec<Vec<Elem>> = k
            .elements()
            .filter_map(|r| extend_hom(kappa, k, &[alpha], &[r]))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for psi in embeddings {
            let map = a.elements().map(|x| psi[factor.residue_of(x)]).collect();
            out.push(RingHom::new(a.clone(), k.clone(), map)?);
        }
    }
    out.sort_by(|x, y| x.map.cmp(&y.map));
    Ok(out)
}

struct Spectra {
    source: LocalDecomposition,
    target: LocalDecomposition,
    /// For each target prime, the source prime it contracts to.
    contraction: Vec<usize>,
}

fn spectra(f: &RingHom) -> Result<Spectra> {
    let source = local_decomposition(&f.source)?;
    let target = local_decomposition(&f.target)?;
    let b = &f.target;
    let contraction = target
        .factors
        .iter()
        .map(|fj| {
            source
                .factors
                .iter()
                .position(|fi| b.mul(f.apply(fi.idempotent), fj.idempotent) == fj.idempotent)
                .expect("images of the source idempotents sum to one")
        })
        .collect();
    Ok(Spectra {
        source,
        target,
        contraction,
    })
}

/// For each prime of the target (local factor order), the prime of the
/// source below it.
pub fn prime_contraction(f: &RingHom) -> Result<Vec<usize>> {
    Ok(spectra(f)?.contraction)
}

/// Residue degree `[κ(q) : κ(p)]` at each target prime.
pub fn residue_degrees(f: &RingHom) -> Result<Vec<usize>> {
    let s = spectra(f)?;
    Ok(s.target
        .factors
        .iter()
        .zip(&s.contraction)
        .map(|(fj, &i)| fj.residue_degree / s.source.factors[i].residue_degree)
        .collect())
}

fn note(detail: String) -> Check {
    Check::fail(Witness::Note { detail })
}

/// `Spec f` injective with trivial residue extensions (finite fields are
/// perfect, so purely inseparable means degree one).
pub fn is_radicial(f: &RingHom) -> Result<Check> {
    let s = spectra(f)?;
    for (j, &i) in s.contraction.iter().enumerate() {
        if let Some(k) = s.contraction[..j].iter().position(|&i2| i2 == i) {
            return Ok(note(format!("target primes {k} and {j} both lie over source prime {i}")));
        }
        let (ej, ei) = (s.target.factors[j].residue_degree, s.source.factors[i].residue_degree);
        if ej != ei {
            return Ok(note(format!(
                "residue extension at target prime {j} has degree {}",
                ej / ei
            )));
        }
    }
    Ok(Check::pass())
}

/// Every prime of the source is the contraction of a target prime.
pub fn is_spec_surjective(f: &RingHom) -> Result<Check> {
    let s = spectra(f)?;
    for i in 0..s.source.len() {
        if !s.contraction.contains(&i) {
            return Ok(note(format!("source prime {i} has no prime above it")));
        }
    }
    Ok(Check::pass())
}

/// Radicial and surjective; universal closedness holds for every map of
/// finite rings (it is integral) and is not recomputed.
pub fn is_universal_homeomorphism(f: &RingHom) -> Result<Check> {
    let radicial = is_radicial(f)?;
    if !radicial.holds {
        return Ok(radicial);
    }
    is_spec_surjective(f)
}

/// Every map of finite rings is finite.
pub fn is_finite(_f: &RingHom) -> Check {
    Check::pass()
}

/// Flat and unramified, local factor by local factor: each target factor
/// `B` over source factor `A` is free over `A` and `m_A·B = m_B`.
pub fn is_etale(f: &RingHom) -> Result<Check> {
    let s = spectra(f)?;
    for (j, &i) in s.contraction.iter().enumerate() {
        let (fa, fb) = (&s.source.factors[i], &s.target.factors[j]);
        let b = &fb.ring;
        // A_i -> B_j
        let image = |x: Elem| fb.projection[f.apply(fa.embedding[x])];
        let m_a_b = b.ideal_generated(&fa.maximal_ideal.iter().map(|&x| image(x)).collect::<Vec<_>>());
        let fiber = b.size() / m_a_b.len();
        let k = fa.residue_size();
        let mut rank = 0;
        let mut power = 1;
        while power < fiber {
            power *= k;
            rank += 1;
        }
        let free = power == fiber && (fa.ring.size() as u128).pow(rank) == b.size() as u128;
        if !free {
            return Ok(note(format!(
                "target factor {j} is not free over source factor {i}"
            )));
        }
        if m_a_b != fb.maximal_ideal {
            return Ok(note(format!("target factor {j} is ramified over source factor {i}")));
        }
    }
    Ok(Check::pass())
}
