//! The perfectly-reduced criterion: unique cube/square roots along the
//! cuspidal cubic `f² = g³`, and unique `p`-divided roots along
//! `f^p = p^p·g` for each prime `p`.
//!
//! Only primes dividing the characteristic are scanned. For any other prime
//! `p` the element `p` is a unit, so `f = p·h` forces `h = f/p`, and then
//! `h^p = f^p / p^p = g`: existence and uniqueness are automatic.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::hom::{is_universal_homeomorphism, RingHom};
use super::{prime_factors, Elem, FinCommRing};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Clause {
    /// `f² = g³ ⇒ ∃! h: f = h³, g = h²`.
    Cube,
    /// `f^p = p^p·g ⇒ ∃! h: f = p·h, g = h^p`.
    Prime { p: u64 },
}

/// The least violating pair `(f, g)` and how many `h` it has (0 or ≥ 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrCertificate {
    #[serde(flatten)]
    pub clause: Clause,
    pub f: Elem,
    pub g: Elem,
    pub solutions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectlyReduced {
    pub holds: bool,
    pub certificate: Option<PrCertificate>,
    pub primes_scanned: Vec<u64>,
}

/// Scans pairs `(f, g)` with `lhs(f) = rhs(g)` in lexicographic order and
/// compares against the number of `h` with `root(h) = (f, g)`.
fn scan(
    a: &FinCommRing,
    clause: Clause,
    lhs: impl Fn(Elem) -> Elem,
    rhs: impl Fn(Elem) -> Elem,
    root: impl Fn(Elem) -> (Elem, Elem),
) -> Option<PrCertificate> {
    let mut count: HashMap<(Elem, Elem), usize> = HashMap::new();
    for h in a.elements() {
        *count.entry(root(h)).or_default() += 1;
    }
    let mut by_rhs = vec![Vec::new(); a.size()];
    for g in a.elements() {
        by_rhs[rhs(g)].push(g);
    }
    for f in a.elements() {
        for &g in &by_rhs[lhs(f)] {
            let solutions = count.get(&(f, g)).copied().unwrap_or(0);
            if solutions != 1 {
                return Some(PrCertificate {
                    clause,
                    f,
                    g,
                    solutions,
                });
            }
        }
    }
    None
}

pub fn cube_clause(a: &FinCommRing) -> Option<PrCertificate> {
    scan(
        a,
        Clause::Cube,
        |f| a.mul(f, f),
        |g| a.pow(g, 3),
        |h| (a.pow(h, 3), a.mul(h, h)),
    )
}

/// The clause for one prime `p`; holds automatically when `p` is a unit.
pub fn prime_clause(a: &FinCommRing, p: u64) -> Option<PrCertificate> {
    let pp = a.pow(a.integer(p), p);
    scan(
        a,
        Clause::Prime { p },
        |f| a.pow(f, p),
        |g| a.mul(pp, g),
        |h| (a.times(p, h), a.pow(h, p)),
    )
}

pub fn is_perfectly_reduced(a: &FinCommRing) -> PerfectlyReduced {
    let primes = prime_factors(a.characteristic());
    let certificate = cube_clause(a).or_else(|| primes.iter().find_map(|&p| prime_clause(a, p)));
    PerfectlyReduced {
        holds: certificate.is_none(),
        certificate,
        primes_scanned: primes,
    }
}

/// `A -> A/nil(A)`. A finite reduced ring is a product of finite fields,
/// which are perfect, so this quotient is the perfection; the result is
/// checked to be perfectly reduced and the map a universal homeomorphism.
pub fn perfection(a: &Arc<FinCommRing>) -> Result<RingHom> {
    let (reduced, map) = a.quotient(&a.nilradical())?;
    let reduced = Arc::new(reduced);
    let pr = is_perfectly_reduced(&reduced);
    if let Some(c) = pr.certificate {
        return Err(Error::Precondition(format!(
            "reduction is not perfectly reduced: {c:?}"
        )));
    }
    let q = RingHom::new(a.clone(), reduced, map)?;
    if let Some(w) = is_universal_homeomorphism(&q)?.witness {
        return Err(Error::Precondition(format!(
            "reduction map is not a universal homeomorphism: {w}"
        )));
    }
    Ok(q)
}
