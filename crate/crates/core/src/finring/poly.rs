//! Polynomials over `Z/n` in finitely many variables, with a small parser
//! for strings such as `"x^2 - x - 1"` or `"y^2 + 3*x*y"`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically (total degree first,
/// then lexicographic with the first variable largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    /// `Some(i)` when this is `x_i^d` with `d ≥ 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with nonzero coefficients in `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    pub modulus: u64,
    pub vars: usize,
    pub terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(modulus: u64, vars: usize) -> Self {
        Poly {
            modulus,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.modulus;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = (*entry + c) % self.modulus;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.modulus, self.vars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.times(b), mulmod(ca, cb, self.modulus));
            }
        }
        out
    }

    pub fn parse(text: &str, modulus: u64, names: &[String]) -> Result<Poly> {
        Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            modulus,
            names,
        }
        .polynomial()
    }
}

pub(crate) fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Inverse of `a` modulo `n`, if it is a unit.
pub(crate) fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1 || n == 1).then(|| old_s.rem_euclid(n as i128) as u64)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    modulus: u64,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::InvalidRing(format!("cannot parse polynomial {text:?} at {}: {what}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .unwrap_or(u64::MAX)
        })
    }

    fn variable(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        match self.names.iter().position(|v| *v == name) {
            Some(i) => Some(i),
            None => {
                self.pos = start;
                None
            }
        }
    }

    fn polynomial(&mut self) -> Result<Poly> {
        let mut p = Poly::zero(self.modulus, self.names.len());
        let mut first = true;
        while self.pos < self.chars.len() || first {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.error("expected + or -")),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = c % self.modulus;
            p.add_term(m, if negative { (self.modulus - c) % self.modulus } else { c });
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, u64)> {
        let mut coefficient = 1u64;
        let mut m = Monomial::one(self.names.len());
        loop {
            if let Some(k) = self.number() {
                coefficient = mulmod(coefficient, k % self.modulus, self.modulus);
            } else if let Some(v) = self.variable() {
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.number().ok_or_else(|| self.error("expected exponent"))?;
                }
                m.0[v] += u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            } else {
                return Err(self.error("expected a number or a variable"));
            }
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c.is_alphabetic() => {}
                _ => break,
            }
        }
        Ok((m, coefficient))
    }
}

/// Univariate polynomials over `F_p` as coefficient vectors, low degree first.
pub(crate) mod univariate {
    use super::{inverse_mod, mulmod};

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inverse_mod(*b.last().expect("nonzero divisor"), p).expect("field");
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mulmod(*r.last().unwrap(), lead_inv, p);
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mulmod(c, bi, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Monic polynomials of degree `d` over `F_p`, in order of their
    /// lower coefficients read as a base-`p` number.
    pub fn monic(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
        let count = p.pow(d as u32);
        (0..count).map(move |mut k| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k % p);
                k /= p;
            }
            c.push(1);
            c
        })
    }

    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        let deg = f.len().saturating_sub(1);
        if deg == 0 {
            return false;
        }
        (1..=deg / 2).all(|d| monic(d, p).all(|g| !rem(&f, &g, p).is_empty()))
    }

    /// The first monic irreducible of degree `d` in [`monic`] order.
    pub fn first_irreducible(d: usize, p: u64) -> Vec<u64> {
        monic(d, p)
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }
}
