use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite group on `0..order` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteGroup {
    pub fn from_table(labels: Vec<String>, table: &[Vec<usize>]) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSplitting(msg));
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return bad("group table must be a nonempty square table over its labels".into());
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let op = |a: usize, b: usize| mul[a * n + b];
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| op(e, a) == a && op(a, e) == a)) else {
            return bad("no identity element".into());
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| op(a, b) == identity && op(b, a) == identity) {
                Some(b) => inverse[a] = b,
                None => return bad(format!("{} has no inverse", labels[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return bad(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            identity,
            inverse,
            labels,
        })
    }

    /// `(Z/m)^×`, elements the residues in increasing order.
    pub fn units_mod(m: u64) -> Self {
        let residues: Vec<u64> = if m == 1 {
            vec![0]
        } else {
            (1..m).filter(|&r| gcd(r, m) == 1).collect()
        };
        let position = |r: u64| residues.binary_search(&(r % m)).unwrap();
        let table: Vec<Vec<usize>> = residues
            .iter()
            .map(|&a| residues.iter().map(|&b| position(a * b % m)).collect())
            .collect();
        let labels = residues.iter().map(u64::to_string).collect();
        Self::from_table(labels, &table).expect("units form a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element_named(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.op(a, g);
                if seen.insert(b) {
                    frontier.push(b);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&a| a < self.order)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.op(a, self.inv(b)))))
    }

    pub fn is_normal_in(&self, sub: &[usize], ambient: &[usize]) -> bool {
        ambient.iter().all(|&g| {
            sub.iter()
                .all(|&h| sub.contains(&self.op(self.op(g, h), self.inv(g))))
        })
    }

    /// Least element of the left coset `a·sub`.
    pub fn coset_rep(&self, a: usize, sub: &[usize]) -> usize {
        sub.iter().map(|&h| self.op(a, h)).min().unwrap_or(a)
    }

    /// Sorted least representatives of the left cosets of `sub` in `within`.
    pub fn coset_reps(&self, within: &[usize], sub: &[usize]) -> Vec<usize> {
        let reps: BTreeSet<usize> = within.iter().map(|&a| self.coset_rep(a, sub)).collect();
        reps.into_iter().collect()
    }

    /// `t·sub·t⁻¹`, sorted.
    pub fn conjugate(&self, t: usize, sub: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = sub
            .iter()
            .map(|&h| self.op(self.op(t, h), self.inv(t)))
            .collect();
        set.into_iter().collect()
    }

    /// The subgroup on `elems` relabeled `0..|elems|`, with its embedding.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::NotASubgroup(
                elems.iter().map(|&a| self.label(a).to_string()).collect::<Vec<_>>().join(", "),
            ));
        }
        let embedding: Vec<usize> = elems.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let position = |a: usize| embedding.binary_search(&a).unwrap();
        let table: Vec<Vec<usize>> = embedding
            .iter()
            .map(|&a| embedding.iter().map(|&b| position(self.op(a, b))).collect())
            .collect();
        let labels = embedding.iter().map(|&a| self.labels[a].clone()).collect();
        Ok((FiniteGroup::from_table(labels, &table)?, embedding))
    }
}
