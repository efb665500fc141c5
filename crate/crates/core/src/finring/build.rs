use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::poly::{inverse_mod, mulmod, univariate, Monomial, Poly};
use super::{is_prime, FinCommRing};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// How a ring is given. Element order is determined by the presentation:
/// coefficient vectors over the normal monomials (constant term least
/// significant) for quotients, mixed radix (first factor least significant)
/// for products, with zero and one relabeled to `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// `Z/n`.
    Integers { n: u64 },
    /// `F_p[x]/(modulus)` for an irreducible `modulus`.
    FiniteField {
        p: u64,
        modulus: String,
        #[serde(default = "default_variable")]
        variable: String,
    },
    /// `(Z/n)[variables]/(relations)`. Every relation needs a unit leading
    /// coefficient in graded-lex order and every variable needs a relation
    /// whose leading monomial is a power of it.
    Quotient {
        n: u64,
        variables: Vec<String>,
        relations: Vec<String>,
    },
    Product { factors: Vec<Presentation> },
}

fn default_variable() -> String {
    "x".into()
}

impl Presentation {
    pub fn integers(n: u64) -> Self {
        Presentation::Integers { n }
    }

    pub fn field(p: u64, modulus: &str) -> Self {
        Presentation::FiniteField {
            p,
            modulus: modulus.into(),
            variable: default_variable(),
        }
    }

    /// `F_{p^e}` with the first monic irreducible of degree `e`.
    pub fn galois_field(p: u64, e: usize) -> Self {
        if e == 1 {
            return Presentation::field(p, "x");
        }
        let coefficients = univariate::first_irreducible(e, p);
        let mut terms = Vec::new();
        for (k, &c) in coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            terms.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => monomial,
                _ => format!("{c}*{monomial}"),
            });
        }
        Presentation::field(p, &terms.join(" + "))
    }

    pub fn quotient(n: u64, variables: &[&str], relations: &[&str]) -> Self {
        Presentation::Quotient {
            n,
            variables: variables.iter().map(|s| s.to_string()).collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn product(factors: Vec<Presentation>) -> Self {
        Presentation::Product { factors }
    }
}

pub fn build_ring(presentation: &Presentation) -> Result<FinCommRing> {
    match presentation {
        Presentation::Integers { n } => {
            let n = usize::try_from(*n).map_err(|_| Error::InvalidRing("modulus too large".into()))?;
            if n == 0 {
                return Err(Error::InvalidRing("Z/0 is infinite".into()));
            }
            Caps::ensure("element", n, Caps::global().elements)?;
            FinCommRing::from_fn(n, |a, b| (a + b) % n, |a, b| a * b % n)
        }
        Presentation::FiniteField {
            p,
            modulus,
            variable,
        } => {
            if !is_prime(*p) {
                return Err(Error::CharacteristicNotPrime(*p));
            }
            let ring = build_quotient(*p, std::slice::from_ref(variable), std::slice::from_ref(modulus))?;
            if !ring.is_field() {
                return Err(Error::InvalidRing(format!(
                    "{modulus} is not irreducible over F_{p}"
                )));
            }
            Ok(ring)
        }
        Presentation::Quotient {
            n,
            variables,
            relations,
        } => build_quotient(*n, variables, relations),
        Presentation::Product { factors } => {
            let rings = factors.iter().map(build_ring).collect::<Result<Vec<_>>>()?;
            product(&rings)
        }
    }
}

/// `F_{p^e}`.
pub fn galois_field(p: u64, e: usize) -> Result<FinCommRing> {
    if !is_prime(p) {
        return Err(Error::CharacteristicNotPrime(p));
    }
    build_ring(&Presentation::galois_field(p, e))
}

/// Direct product, first factor least significant.
pub(crate) fn product(rings: &[FinCommRing]) -> Result<FinCommRing> {
    if rings.is_empty() {
        return Err(Error::InvalidRing("empty product".into()));
    }
    let mut size = 1usize;
    let mut radix = Vec::with_capacity(rings.len());
    for r in rings {
        radix.push(size);
        size = size
            .checked_mul(r.size())
            .filter(|&s| s <= Caps::global().elements)
            .ok_or(Error::CapExceeded {
                what: "element",
                actual: usize::MAX,
                cap: Caps::global().elements,
            })?;
    }
    let digits = |x: usize| -> Vec<usize> {
        rings
            .iter()
            .zip(&radix)
            .map(|(r, &w)| (x / w) % r.size())
            .collect()
    };
    let encode = |d: &[usize]| -> usize { d.iter().zip(&radix).map(|(a, w)| a * w).sum() };
    let combine = |x: usize, y: usize, op: &dyn Fn(&FinCommRing, usize, usize) -> usize| {
        let (dx, dy) = (digits(x), digits(y));
        let d: Vec<usize> = rings
            .iter()
            .enumerate()
            .map(|(i, r)| op(r, dx[i], dy[i]))
            .collect();
        encode(&d)
    };
    let one = encode(&rings.iter().map(|r| r.one()).collect::<Vec<_>>());
    FinCommRing::from_fn_relabel(
        size,
        0,
        one,
        |x, y| combine(x, y, &|r, a, b| r.add(a, b)),
        |x, y| combine(x, y, &|r, a, b| r.mul(a, b)),
    )
}

struct Rule {
    lead: Monomial,
    /// `lead ≡ tail`.
    tail: Poly,
}

fn reduce(mut p: Poly, rules: &[Rule]) -> Poly {
    loop {
        let hit = p.terms.iter().rev().find_map(|(m, &c)| {
            rules
                .iter()
                .find(|r| r.lead.divides(m))
                .map(|r| (m.clone(), c, r))
        });
        let Some((m, c, rule)) = hit else {
            return p;
        };
        p.terms.remove(&m);
        let shift = m.quotient(&rule.lead);
        for (t, &tc) in &rule.tail.terms {
            p.add_term(t.times(&shift), mulmod(c, tc, p.modulus));
        }
    }
}

fn build_quotient(n: u64, variables: &[String], relations: &[String]) -> Result<FinCommRing> {
    if n < 2 {
        return Err(Error::InvalidRing("coefficient modulus must be at least 2".into()));
    }
    let k = variables.len();
    let mut rules = Vec::new();
    for text in relations {
        let p = Poly::parse(text, n, variables)?;
        let Some((lead, c)) = p.leading() else {
            continue;
        };
        let inv = inverse_mod(c, n).ok_or_else(|| {
            Error::InvalidRing(format!("leading coefficient of {text:?} is not a unit mod {n}"))
        })?;
        let lead = lead.clone();
        let mut tail = Poly::zero(n, k);
        for (m, &cm) in &p.terms {
            if *m != lead {
                tail.add_term(m.clone(), n - mulmod(cm, inv, n));
            }
        }
        rules.push(Rule { lead, tail });
    }
    // each variable needs a pure-power leading monomial
    let mut bound = vec![u32::MAX; k];
    for r in &rules {
        if let Some(i) = r.lead.pure_power_of() {
            bound[i] = bound[i].min(r.lead.0[i]);
        }
    }
    if let Some(i) = bound.iter().position(|&b| b == u32::MAX) {
        return Err(Error::InvalidRing(format!(
            "quotient is not finite under the given normal forms: no relation has a power of {} as leading term",
            variables[i]
        )));
    }
    let mut basis = vec![Monomial::one(k)];
    for i in 0..k {
        basis = basis
            .into_iter()
            .flat_map(|m| {
                (0..bound[i]).map(move |e| {
                    let mut m = m.clone();
                    m.0[i] = e;
                    m
                })
            })
            .collect();
    }
    basis.retain(|m| !rules.iter().any(|r| r.lead.divides(m)));
    basis.sort();
    let dim = basis.len();
    let size = (n as usize)
        .checked_pow(dim as u32)
        .filter(|&s| s <= Caps::global().elements)
        .ok_or(Error::CapExceeded {
            what: "element",
            actual: usize::MAX,
            cap: Caps::global().elements,
        })?;
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let nn = n as usize;
    let encode = |v: &[u64]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * nn + c as usize) };
    let decode = |mut x: usize| -> Vec<u64> {
        (0..dim)
            .map(|_| {
                let c = (x % nn) as u64;
                x /= nn;
                c
            })
            .collect()
    };
    let as_vector = |p: &Poly| -> Vec<u64> {
        let mut v = vec![0; dim];
        for (m, &c) in &p.terms {
            v[index[m]] = c;
        }
        v
    };
    let monomial_poly = |m: &Monomial| {
        let mut p = Poly::zero(n, k);
        p.add_term(m.clone(), 1);
        p
    };
    // basis products
    let mut products = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let p = reduce(monomial_poly(&basis[i]).mul(&monomial_poly(&basis[j])), &rules);
            products[i][j] = as_vector(&p);
        }
    }
    let mut add = vec![0u32; size * size];
    for x in 0..size {
        let dx = decode(x);
        for y in 0..size {
            let dy = decode(y);
            let s: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % n).collect();
            add[x * size + y] = encode(&s) as u32;
        }
    }
    // scaled[(j * n + c) * size + y] = c · basis_j · y
    let mut scaled = vec![0u32; dim * nn * size];
    for y in 0..size {
        let dy = decode(y);
        for j in 0..dim {
            let mut v = vec![0u64; dim];
            for (l, &c) in dy.iter().enumerate() {
                for (t, &pc) in products[j][l].iter().enumerate() {
                    v[t] = (v[t] + mulmod(c, pc, n)) % n;
                }
            }
            for c in 0..nn {
                let w: Vec<u64> = v.iter().map(|&a| mulmod(a, c as u64, n)).collect();
                scaled[(j * nn + c) * size + y] = encode(&w) as u32;
            }
        }
    }
    let mut mul = vec![0u32; size * size];
    for x in 1..size {
        // peel off the top digit: x = low + c · n^j
        let mut j = 0;
        let mut w = 1;
        while w * nn <= x {
            w *= nn;
            j += 1;
        }
        let (c, low) = (x / w, x % w);
        for y in 0..size {
            let part = scaled[(j * nn + c) * size + y] as usize;
            mul[x * size + y] = add[mul[low * size + y] as usize * size + part];
        }
    }
    FinCommRing::from_fn(size, |x, y| add[x * size + y] as usize, |x, y| mul[x * size + y] as usize)
        .map_err(|e| Error::InvalidRing(format!("relations do not give consistent normal forms: {e}")))
}
