//! Finite commutative rings as explicit addition and multiplication tables.
//!
//! Elements are `0..n` with `0` the zero and `1` the one. Everything about a
//! ring (spectrum, residue fields, Frobenius, the perfectly-reduced
//! criterion) is computed by scanning these tables.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};

mod build;
mod decompose;
mod hom;
pub mod json;
mod perfect;
mod poly;

pub use build::{build_ring, galois_field, Presentation};
pub use decompose::{local_decomposition, LocalDecomposition, LocalFactor};
pub use hom::{
    extend_hom, frobenius, homomorphisms_into_field, is_etale, is_finite, is_radicial,
    is_spec_surjective, is_universal_homeomorphism, prime_contraction, residue_degrees, RingHom,
};
pub use perfect::{
    cube_clause, is_perfectly_reduced, perfection, prime_clause, Clause, PerfectlyReduced,
    PrCertificate,
};

pub type Elem = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct FinCommRing {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    characteristic: u64,
}

impl fmt::Debug for FinCommRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCommRing")
            .field("size", &self.n)
            .field("characteristic", &self.characteristic)
            .finish()
    }
}

/// Triples over which associativity and distributivity are scanned: all of
/// them up to 64 elements, otherwise `a, b` range over an evenly spaced
/// sample and `c` over everything.
fn axiom_sample(n: usize) -> Vec<usize> {
    if n <= 64 {
        return (0..n).collect();
    }
    let mut s: BTreeSet<usize> = (0..n).step_by(n / 48).collect();
    s.extend([0, 1, n - 1]);
    s.into_iter().collect()
}

impl FinCommRing {
    /// Builds a ring from closures, checking sizes and all ring axioms.
    pub fn from_fn(
        n: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        Caps::ensure("element", n, Caps::global().elements)?;
        if n == 0 {
            return Err(Error::InvalidRing("empty ring".into()));
        }
        let mut a = Vec::with_capacity(n * n);
        let mut m = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (s, p) = (add(x, y), mul(x, y));
                if s >= n || p >= n {
                    return Err(Error::InvalidRing(format!("table entry at ({x}, {y}) out of range")));
                }
                a.push(s as u32);
                m.push(p as u32);
            }
        }
        Self::from_raw(n, a, m)
    }

    /// Builds a ring whose zero and one are `zero` and `one`, relabeling
    /// elements by swaps so that they become `0` and `1`.
    pub fn from_fn_relabel(
        n: usize,
        zero: Elem,
        one: Elem,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        // old_of[new] = old
        let mut old_of: Vec<usize> = (0..n).collect();
        old_of.swap(0, zero);
        if n > 1 {
            let at = old_of.iter().position(|&x| x == one).expect("one is an element");
            old_of.swap(1, at);
        }
        let mut new_of = vec![0; n];
        for (new, &old) in old_of.iter().enumerate() {
            new_of[old] = new;
        }
        Self::from_fn(
            n,
            |x, y| new_of[add(old_of[x], old_of[y])],
            |x, y| new_of[mul(old_of[x], old_of[y])],
        )
    }

    pub fn from_tables(add: &[Vec<Elem>], mul: &[Vec<Elem>]) -> Result<Self> {
        let n = add.len();
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(Error::InvalidRing("tables must be square of equal size".into()));
        }
        Self::from_fn(n, |x, y| add[x][y], |x, y| mul[x][y])
    }

    fn from_raw(n: usize, add: Vec<u32>, mul: Vec<u32>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRing(msg));
        let at = |t: &Vec<u32>, x: usize, y: usize| t[x * n + y] as usize;
        for x in 0..n {
            if at(&add, 0, x) != x {
                return bad(format!("0 is not an additive identity (0 + {x})"));
            }
            if at(&mul, 1 % n, x) != x {
                return bad(format!("1 is not a multiplicative identity (1 · {x})"));
            }
            for y in 0..n {
                if at(&add, x, y) != at(&add, y, x) || at(&mul, x, y) != at(&mul, y, x) {
                    return bad(format!("not commutative at ({x}, {y})"));
                }
            }
        }
        let mut neg = vec![0u32; n];
        for x in 0..n {
            match (0..n).find(|&y| at(&add, x, y) == 0) {
                Some(y) => neg[x] = y as u32,
                None => return bad(format!("{x} has no additive inverse")),
            }
        }
        let sample = axiom_sample(n);
        for &x in &sample {
            for &y in &sample {
                let (xy_add, xy_mul) = (at(&add, x, y), at(&mul, x, y));
                for z in 0..n {
                    if at(&add, xy_add, z) != at(&add, x, at(&add, y, z)) {
                        return bad(format!("addition is not associative at ({x}, {y}, {z})"));
                    }
                    if at(&mul, xy_mul, z) != at(&mul, x, at(&mul, y, z)) {
                        return bad(format!("multiplication is not associative at ({x}, {y}, {z})"));
                    }
                    if at(&mul, x, at(&add, y, z)) != at(&add, xy_mul, at(&mul, x, z)) {
                        return bad(format!("distributivity fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        let mut ring = FinCommRing {
            n,
            add,
            mul,
            neg,
            characteristic: 0,
        };
        let mut k = 1u64;
        let mut x = 1 % n;
        while x != 0 {
            x = ring.add(x, 1);
            k += 1;
        }
        ring.characteristic = if n == 1 { 1 } else { k };
        Ok(ring)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1 % self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.n + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x] as usize
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let (mut base, mut acc) = (x, self.one());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k · x` (repeated addition).
    pub fn times(&self, mut k: u64, x: Elem) -> Elem {
        let (mut base, mut acc) = (x, 0);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The image of the integer `k`.
    pub fn integer(&self, k: u64) -> Elem {
        self.times(k, self.one())
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        (0..self.n).find(|&y| self.mul(x, y) == self.one())
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse(x).is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_field(&self) -> bool {
        self.n > 1 && (1..self.n).all(|x| self.is_unit(x))
    }

    /// `x^k = 0` for some `k`; `x^|A|` has stabilized.
    pub fn is_nilpotent(&self, x: Elem) -> bool {
        self.pow(x, self.n as u64) == 0
    }

    pub fn nilradical(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    pub fn is_reduced(&self) -> bool {
        (1..self.n).all(|x| !self.is_nilpotent(x))
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Non-units form an ideal; equivalently they are closed under addition.
    pub fn is_local(&self) -> bool {
        if self.n == 1 {
            return false;
        }
        let non_units: Vec<Elem> = self.elements().filter(|&x| !self.is_unit(x)).collect();
        non_units
            .iter()
            .all(|&x| non_units.iter().all(|&y| !self.is_unit(self.add(x, y))))
    }

    fn additive_closure(&self, seed: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut members = vec![0];
        let mut queue: VecDeque<Elem> = seed.into_iter().collect();
        while let Some(x) = queue.pop_front() {
            if member[x] {
                continue;
            }
            member[x] = true;
            members.push(x);
            for i in 0..members.len() {
                let s = self.add(x, members[i]);
                if !member[s] {
                    queue.push_back(s);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The ideal generated by `gens`, sorted.
    pub fn ideal_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let multiples = gens
            .iter()
            .flat_map(|&g| self.elements().map(move |a| (a, g)))
            .map(|(a, g)| self.mul(a, g));
        self.additive_closure(multiples.collect::<Vec<_>>())
    }

    pub fn is_ideal(&self, subset: &[Elem]) -> bool {
        let mut member = vec![false; self.n];
        for &x in subset {
            if x >= self.n {
                return false;
            }
            member[x] = true;
        }
        member[0]
            && subset.iter().all(|&x| {
                subset.iter().all(|&y| member[self.add(x, y)])
                    && self.elements().all(|a| member[self.mul(a, x)])
            })
    }

    /// `A/I` with the quotient map. Cosets are numbered by least element.
    pub fn quotient(&self, ideal: &[Elem]) -> Result<(FinCommRing, Vec<Elem>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidRing("subset is not an ideal".into()));
        }
        let mut class = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in self.elements() {
            if class[x] != usize::MAX {
                continue;
            }
            for &i in ideal {
                class[self.add(x, i)] = reps.len();
            }
            reps.push(x);
        }
        let q = FinCommRing::from_fn(
            reps.len(),
            |a, b| class[self.add(reps[a], reps[b])],
            |a, b| class[self.mul(reps[a], reps[b])],
        )?;
        Ok((q, class))
    }

    /// Smallest subring containing `gens`, sorted.
    pub fn subring_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        let mut members = Vec::new();
        let mut queue: VecDeque<Elem> = [0, self.one()].into_iter().chain(gens.iter().copied()).collect();
        while let Some(x) = queue.pop_front() {
            if member[x] {
                continue;
            }
            member[x] = true;
            members.push(x);
            for i in 0..members.len() {
                let y = members[i];
                for z in [self.add(x, y), self.mul(x, y), self.neg(x)] {
                    if !member[z] {
                        queue.push_back(z);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A generating set chosen greedily: repeatedly add the least element
    /// outside the subring generated so far.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut covered = self.subring_generated(&gens);
        while covered.len() < self.n {
            let next = (0..self.n)
                .find(|x| covered.binary_search(x).is_err())
                .expect("uncovered element");
            gens.push(next);
            covered = self.subring_generated(&gens);
        }
        gens
    }

    /// The subring `e·A` for an idempotent `e`, with identity `e`, together
    /// with its embedding into `A` (factor element ↦ element of `A`).
    pub fn corner(&self, e: Elem) -> Result<(FinCommRing, Vec<Elem>)> {
        if self.mul(e, e) != e {
            return Err(Error::InvalidRing(format!("{e} is not idempotent")));
        }
        let mut elems: Vec<Elem> = self.elements().map(|a| self.mul(e, a)).collect();
        elems.sort_unstable();
        elems.dedup();
        // zero is least; put e at position 1
        if let Some(pos) = elems.iter().position(|&x| x == e) {
            let v = elems.remove(pos);
            elems.insert(1.min(elems.len()), v);
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let ring = FinCommRing::from_fn(
            elems.len(),
            |a, b| index[self.add(elems[a], elems[b])],
            |a, b| index[self.mul(elems[a], elems[b])],
        )?;
        Ok((ring, elems))
    }

    /// Rows of the tables, for serialization.
    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.add.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
