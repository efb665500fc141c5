use crate::check::{Check, Witness};
use crate::error::{Error, Result};

use super::{FinCategory, MorId, Morphism, ObjId};

/// A finite partial order on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinPoset {
    /// Builds the order generated by `pairs` (reflexive-transitive closure) and
    /// rejects it if the closure is not antisymmetric.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a * n + k] {
                    for b in 0..n {
                        if leq[k * n + b] {
                            leq[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::InvalidPoset(format!(
                        "{a} ≤ {b} ≤ {a} violates antisymmetry"
                    )));
                }
            }
        }
        Ok(FinPoset { n, leq })
    }

    /// Checks that `pairs` already is a partial order, without closing it.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let closed = Self::new(n, pairs)?;
        let mut given = vec![false; n * n];
        for &(a, b) in pairs {
            given[a * n + b] = true;
        }
        for a in 0..n {
            if !given[a * n + a] {
                return Err(Error::InvalidPoset(format!("{a} ≤ {a} missing (reflexivity)")));
            }
            for b in 0..n {
                if closed.leq(a, b) && !given[a * n + b] {
                    return Err(Error::InvalidPoset(format!(
                        "{a} ≤ {b} missing (transitivity)"
                    )));
                }
            }
        }
        Ok(closed)
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, &[]).expect("discrete order")
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// All pairs `a ≤ b`, sorted.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.n).filter(|&u| self.leq(a, u) && self.leq(b, u)).collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&v| self.leq(u, v)))
    }

    /// Every nonempty finite subset has a join. Pairwise joins suffice: the
    /// join of a larger set is obtained by folding.
    pub fn has_finite_nonempty_joins(&self) -> Check {
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.join(a, b).is_none() {
                    return Check::fail(Witness::ObjectPair { x: a, y: b });
                }
            }
        }
        Check::pass()
    }

    /// Morphism id of `a ≤ b` in [`FinPoset::to_category`].
    pub fn morphism_id(&self, a: usize, b: usize) -> Option<MorId> {
        if !self.leq(a, b) {
            return None;
        }
        let before = self.leq[..a * self.n + b].iter().filter(|&&x| x).count();
        Some(before)
    }

    /// The poset as a thin category; morphisms are the pairs `a ≤ b` in
    /// lexicographic order.
    pub fn to_category(&self) -> FinCategory {
        let relation = self.relation();
        let morphisms: Vec<Morphism> = relation
            .iter()
            .map(|&(a, b)| Morphism { src: a, dst: b })
            .collect();
        let identities = (0..self.n).map(|a| self.morphism_id(a, a).unwrap()).collect();
        FinCategory::from_fn(self.n, morphisms, identities, |g, f| {
            let (a, _) = relation[f];
            let (_, c) = relation[g];
            self.morphism_id(a, c).unwrap()
        })
        .expect("poset category")
    }

    /// `map` is an order isomorphism onto `other`.
    pub fn is_isomorphism_onto(&self, other: &FinPoset, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut hit = vec![false; other.n];
        for &m in map {
            if m >= other.n || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) == other.leq(map[a], map[b])))
    }
}

/// Result of [`FinCategory::iso_class_poset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClassPoset {
    pub poset: FinPoset,
    /// Class index of each object.
    pub class_of: Vec<usize>,
    /// Least object of each class.
    pub representatives: Vec<ObjId>,
}
