use super::{Elem, FinCommRing};
use crate::error::Result;

/// One local factor `e·A` of a finite ring, with its residue field.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub idempotent: Elem,
    pub ring: FinCommRing,
    /// Factor element ↦ element of the ambient ring.
    pub embedding: Vec<Elem>,
    /// Ambient element `a` ↦ factor element `e·a`.
    pub projection: Vec<Elem>,
    /// Non-units of the factor (factor elements).
    pub maximal_ideal: Vec<Elem>,
    pub residue: FinCommRing,
    /// Factor element ↦ residue field element.
    pub residue_map: Vec<Elem>,
    pub residue_characteristic: u64,
    /// `e` with `|κ| = p^e`.
    pub residue_degree: usize,
}

impl LocalFactor {
    pub fn residue_size(&self) -> usize {
        self.residue.size()
    }

    /// Image of an ambient element in the residue field.
    pub fn residue_of(&self, a: Elem) -> Elem {
        self.residue_map[self.projection[a]]
    }

    /// The prime (maximal) ideal of the ambient ring cut out by this factor.
    pub fn prime_ideal(&self) -> Vec<Elem> {
        let mut in_m = vec![false; self.ring.size()];
        for &x in &self.maximal_ideal {
            in_m[x] = true;
        }
        (0..self.projection.len())
            .filter(|&a| in_m[self.projection[a]])
            .collect()
    }
}

/// `A ≅ ∏ e_i A` over the primitive idempotents, in ascending element order.
/// The factors are the local rings at the primes of `A`.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub factors: Vec<LocalFactor>,
}

impl LocalDecomposition {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.factors.iter().map(|f| f.idempotent).collect()
    }

    /// Index of the factor on which the idempotent `e` is one, if `e` is
    /// primitive.
    pub fn factor_of_idempotent(&self, e: Elem) -> Option<usize> {
        self.factors.iter().position(|f| f.idempotent == e)
    }
}

fn log(q: usize, p: u64) -> usize {
    let (mut e, mut x) = (0, 1u64);
    while (x as usize) < q {
        x *= p;
        e += 1;
    }
    e
}

pub fn local_decomposition(a: &FinCommRing) -> Result<LocalDecomposition> {
    let idempotents: Vec<Elem> = a.idempotents().into_iter().filter(|&e| e != 0).collect();
    let primitive: Vec<Elem> = idempotents
        .iter()
        .copied()
        .filter(|&e| {
            !idempotents
                .iter()
                .any(|&f| f != e && a.mul(f, e) == f)
        })
        .collect();
    let mut factors = Vec::with_capacity(primitive.len());
    for e in primitive {
        let (ring, embedding) = a.corner(e)?;
        let mut index = vec![usize::MAX; a.size()];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = i;
        }
        let projection = a.elements().map(|x| index[a.mul(e, x)]).collect();
        let maximal_ideal: Vec<Elem> = ring.elements().filter(|&x| !ring.is_unit(x)).collect();
        let (residue, residue_map) = ring.quotient(&maximal_ideal)?;
        let p = residue.characteristic();
        factors.push(LocalFactor {
            idempotent: e,
            embedding,
            projection,
            maximal_ideal,
            residue_degree: log(residue.size(), p),
            residue_characteristic: p,
            residue,
            residue_map,
            ring,
        });
    }
    Ok(LocalDecomposition { factors })
}
