//! Stratified models of number rings: one object `x_p` per listed prime
//! and a generic object `η`, with
//!
//! * `Hom(x_p, x_p) = D_p/I_p`, cyclic on the Frobenius,
//! * `Hom(x_p, η) = G/I_p` as left cosets,
//! * `Hom(η, η) = G` and `Hom(η, x_p) = ∅`.
//!
//! `Aut(η)` acts on `G/I_p` by left translation and `Aut(x_p)` by right
//! translation, which is well defined because `I_p` is normal in `D_p`.

use std::collections::{BTreeSet, HashMap};

use super::group::FiniteGroup;
use super::GaloisCategory;
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinPoset, Functor, MorId, Morphism, ObjId};
use crate::finring::is_prime;

/// Decomposition and inertia data at one prime; subgroups are sorted
/// element lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub label: String,
    pub decomposition: Vec<usize>,
    pub inertia: Vec<usize>,
    /// An element of `D_p` whose coset generates `D_p/I_p`.
    pub frobenius: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingDatum {
    pub group: FiniteGroup,
    pub primes: Vec<PrimeSplitting>,
    /// Conductor of a cyclotomic datum.
    pub modulus: Option<usize>,
}

impl SplittingDatum {
    pub fn new(group: FiniteGroup, mut primes: Vec<PrimeSplitting>, modulus: Option<usize>) -> Result<Self> {
        for p in &mut primes {
            p.decomposition.sort_unstable();
            p.decomposition.dedup();
            p.inertia.sort_unstable();
            p.inertia.dedup();
        }
        let s = SplittingDatum {
            group,
            primes,
            modulus,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let mut seen = BTreeSet::new();
        for p in &self.primes {
            let bad = |msg: &str| Err(Error::InvalidSplitting(format!("prime {}: {msg}", p.label)));
            if !seen.insert(&p.label) {
                return bad("label is repeated");
            }
            if !g.is_subgroup(&p.decomposition) {
                return bad("decomposition group is not a subgroup");
            }
            if !g.is_subgroup(&p.inertia) {
                return bad("inertia group is not a subgroup");
            }
            if !p.inertia.iter().all(|a| p.decomposition.contains(a)) {
                return bad("inertia group is not contained in the decomposition group");
            }
            if !g.is_normal_in(&p.inertia, &p.decomposition) {
                return bad("inertia group is not normal in the decomposition group");
            }
            if !p.decomposition.contains(&p.frobenius) {
                return bad("Frobenius does not lie in the decomposition group");
            }
            let mut gens = p.inertia.clone();
            gens.push(p.frobenius);
            if g.subgroup_generated(&gens) != p.decomposition {
                return bad("Frobenius does not generate the decomposition group modulo inertia");
            }
        }
        Ok(())
    }

    pub fn prime(&self, label: &str) -> Result<&PrimeSplitting> {
        self.primes
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decomposition and inertia in `Q(ζ_m)/Q`, `G = (Z/m)^×`.
pub fn cyclotomic_splitting(m: u64, primes: &[u64]) -> Result<SplittingDatum> {
    if m == 0 {
        return Err(Error::Precondition("conductor must be at least 1".into()));
    }
    let group = FiniteGroup::units_mod(m);
    let residue = |r: u64| -> usize {
        group
            .element_named(&(r % m).to_string())
            .expect("a unit residue")
    };
    let mut out = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let (decomposition, inertia, frobenius) = if m % p != 0 {
            let frob = residue(p);
            (group.subgroup_generated(&[frob]), vec![group.identity()], frob)
        } else {
            let mut prime_to_p = m;
            while prime_to_p % p == 0 {
                prime_to_p /= p;
            }
            let units: Vec<u64> = (0..m).filter(|&r| gcd(r, m) == 1).collect();
            let inertia: Vec<usize> = units
                .iter()
                .filter(|&&u| u % prime_to_p == 1 % prime_to_p)
                .map(|&u| residue(u))
                .collect();
            let lift = units
                .iter()
                .find(|&&u| u % prime_to_p == p % prime_to_p)
                .map(|&u| residue(u))
                .expect("units surject onto the prime-to-p part");
            let mut gens = inertia.clone();
            gens.push(lift);
            let mut inertia = inertia;
            inertia.sort_unstable();
            (group.subgroup_generated(&gens), inertia, lift)
        };
        out.push(PrimeSplitting {
            label: p.to_string(),
            decomposition,
            inertia,
            frobenius,
        });
    }
    SplittingDatum::new(group, out, Some(m as usize))
}

/// A morphism of a number-ring model; cosets are named by their least
/// element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    /// `dI ∈ D_p/I_p`, an automorphism of `x_p`.
    Auto { point: usize, coset: usize },
    /// `gI ∈ G/I_p`, a specialization `x_p -> η`.
    ToGeneric { point: usize, coset: usize },
    /// `g ∈ G`, an automorphism of `η`.
    Generic(usize),
}

/// [`gal_number_ring`] with the data naming its morphisms.
#[derive(Clone, Debug)]
pub struct NumberRingModel {
    pub gal: GaloisCategory,
    pub group: FiniteGroup,
    /// Object `i < points.len()` is `x_p` for `points[i]`.
    pub points: Vec<PrimeSplitting>,
    pub has_generic: bool,
    pub arrows: Vec<Arrow>,
    index: HashMap<Arrow, MorId>,
}

impl NumberRingModel {
    pub fn generic(&self) -> Option<ObjId> {
        self.has_generic.then_some(self.points.len())
    }

    pub fn morphism_of(&self, arrow: Arrow) -> Option<MorId> {
        self.index.get(&arrow).copied()
    }
}

fn assemble(
    group: FiniteGroup,
    points: Vec<PrimeSplitting>,
    has_generic: bool,
    level: Option<usize>,
) -> Result<NumberRingModel> {
    let g = &group;
    let k = points.len();
    let eta = k;
    let all: Vec<usize> = g.elements().collect();
    let mut arrows = Vec::new();
    let mut morphisms = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for coset in g.coset_reps(&p.decomposition, &p.inertia) {
            arrows.push(Arrow::Auto { point: i, coset });
            morphisms.push(Morphism { src: i, dst: i });
        }
    }
    if has_generic {
        for (i, p) in points.iter().enumerate() {
            for coset in g.coset_reps(&all, &p.inertia) {
                arrows.push(Arrow::ToGeneric { point: i, coset });
                morphisms.push(Morphism { src: i, dst: eta });
            }
        }
        for a in g.elements() {
            arrows.push(Arrow::Generic(a));
            morphisms.push(Morphism { src: eta, dst: eta });
        }
    }
    let index: HashMap<Arrow, MorId> = arrows.iter().enumerate().map(|(id, &a)| (a, id)).collect();
    let mut identities: Vec<MorId> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            index[&Arrow::Auto {
                point: i,
                coset: g.coset_rep(g.identity(), &p.inertia),
            }]
        })
        .collect();
    if has_generic {
        identities.push(index[&Arrow::Generic(g.identity())]);
    }
    let compose = |second: MorId, first: MorId| -> MorId {
        let arrow = match (arrows[second], arrows[first]) {
            (Arrow::Auto { point, coset: a }, Arrow::Auto { coset: b, .. }) => Arrow::Auto {
                point,
                coset: g.coset_rep(g.op(a, b), &points[point].inertia),
            },
            (Arrow::ToGeneric { point, coset: c }, Arrow::Auto { coset: d, .. }) => Arrow::ToGeneric {
                point,
                coset: g.coset_rep(g.op(c, d), &points[point].inertia),
            },
            (Arrow::Generic(a), Arrow::ToGeneric { point, coset: c }) => Arrow::ToGeneric {
                point,
                coset: g.coset_rep(g.op(a, c), &points[point].inertia),
            },
            (Arrow::Generic(a), Arrow::Generic(b)) => Arrow::Generic(g.op(a, b)),
            _ => unreachable!("only composable pairs are queried"),
        };
        index[&arrow]
    };
    let objects = k + usize::from(has_generic);
    let category = FinCategory::from_fn(objects, morphisms, identities, compose)?;
    let (zariski, mut labels, mut point_labels) = if has_generic {
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (i, eta)).collect();
        (FinPoset::new(k + 1, &pairs)?, Vec::new(), Vec::new())
    } else {
        (FinPoset::discrete(k), Vec::new(), Vec::new())
    };
    for p in &points {
        labels.push(format!("x_{}", p.label));
        point_labels.push(p.label.clone());
    }
    if has_generic {
        labels.push("η".into());
        point_labels.push("η".into());
    }
    let point_of: Vec<usize> = (0..objects).collect();
    let gal = GaloisCategory::new(category, zariski, &point_of, level, labels, point_labels)?.validate()?;
    Ok(NumberRingModel {
        gal,
        group,
        points,
        has_generic,
        arrows,
        index,
    })
}

pub fn number_ring_model(s: &SplittingDatum, primes: &[&str], includes_generic: bool) -> Result<NumberRingModel> {
    s.validate()?;
    let points = primes
        .iter()
        .map(|&l| s.prime(l).cloned())
        .collect::<Result<Vec<_>>>()?;
    assemble(s.group.clone(), points, includes_generic, s.modulus)
}

/// The model on the listed primes of `s`, with or without `η`.
pub fn gal_number_ring(s: &SplittingDatum, primes: &[&str], includes_generic: bool) -> Result<GaloisCategory> {
    Ok(number_ring_model(s, primes, includes_generic)?.gal)
}

/// The model of `O_K` for `K` the fixed field of `H ⊆ (Z/m)^×`, its
/// functor to the model of `Z`, and which source point lies over which.
#[derive(Clone, Debug)]
pub struct RelativeModel {
    pub source: NumberRingModel,
    pub target: NumberRingModel,
    pub functor: Functor,
    /// For each source point: the target point below it and the double
    /// coset representative `t` naming it.
    pub lies_over: Vec<(usize, usize)>,
}

/// Points above `p` are the double cosets `H t D_p`, with
/// `D = H ∩ t D_p t⁻¹` and `I = H ∩ t I_p t⁻¹`. The functor sends
/// `[h] ∈ H/I` to `[h t] ∈ G/I_p` and `[d] ∈ D/I` to `[t⁻¹ d t] ∈ D_p/I_p`.
pub fn relative_model(m: u64, subgroup: &[u64], primes: &[u64]) -> Result<RelativeModel> {
    let s = cyclotomic_splitting(m, primes)?;
    let g = &s.group;
    let h_elems: Vec<usize> = subgroup
        .iter()
        .map(|&r| {
            g.element_named(&(r % m).to_string())
                .map_err(|_| Error::NotASubgroup(format!("{r} is not a unit mod {m}")))
        })
        .collect::<Result<_>>()?;
    let (h, embedding) = g.subgroup(&h_elems)?;
    let to_h = |a: usize| embedding.binary_search(&a).ok();
    let mut points = Vec::new();
    let mut lies_over = Vec::new();
    for (j, p) in s.primes.iter().enumerate() {
        let mut covered = BTreeSet::new();
        for t in g.elements() {
            if covered.contains(&t) {
                continue;
            }
            for &a in &embedding {
                for &d in &p.decomposition {
                    covered.insert(g.op(g.op(a, t), d));
                }
            }
            let restrict = |sub: &[usize]| -> Vec<usize> {
                let mut v: Vec<usize> = g.conjugate(t, sub).into_iter().filter_map(to_h).collect();
                v.sort_unstable();
                v
            };
            let (decomposition, inertia) = (restrict(&p.decomposition), restrict(&p.inertia));
            let frobenius = decomposition
                .iter()
                .copied()
                .find(|&d| {
                    let mut gens = inertia.clone();
                    gens.push(d);
                    h.subgroup_generated(&gens) == decomposition
                })
                .expect("D/I is cyclic");
            points.push(PrimeSplitting {
                label: format!("{}:{}", p.label, g.label(t)),
                decomposition,
                inertia,
                frobenius,
            });
            lies_over.push((j, t));
        }
    }
    let source_datum = SplittingDatum::new(h, points, Some(m as usize))?;
    let source = assemble(source_datum.group.clone(), source_datum.primes.clone(), true, Some(m as usize))?;
    let target = assemble(s.group.clone(), s.primes.clone(), true, Some(m as usize))?;
    let k = source.points.len();
    let mut on_objects: Vec<ObjId> = lies_over.iter().map(|&(j, _)| j).collect();
    on_objects.push(target.points.len());
    let on_morphisms = source
        .arrows
        .iter()
        .map(|&arrow| {
            let image = match arrow {
                Arrow::Auto { point, coset } => {
                    let (j, t) = lies_over[point];
                    let d = embedding[coset];
                    let conj = g.op(g.op(g.inv(t), d), t);
                    Arrow::Auto {
                        point: j,
                        coset: g.coset_rep(conj, &target.points[j].inertia),
                    }
                }
                Arrow::ToGeneric { point, coset } => {
                    let (j, t) = lies_over[point];
                    Arrow::ToGeneric {
                        point: j,
                        coset: g.coset_rep(g.op(embedding[coset], t), &target.points[j].inertia),
                    }
                }
                Arrow::Generic(a) => Arrow::Generic(embedding[a]),
            };
            target.index[&image]
        })
        .collect();
    debug_assert_eq!(on_objects.len(), k + 1);
    let functor = Functor::new(
        source.gal.category().clone(),
        target.gal.category().clone(),
        on_objects,
        on_morphisms,
    )?;
    Ok(RelativeModel {
        source,
        target,
        functor,
        lies_over,
    })
}

/// `Gal(O_K) -> Gal(Z)` for the fixed field `K` of `H ⊆ (Z/m)^×`.
pub fn gal_relative_functor(m: u64, subgroup: &[u64], primes: &[u64]) -> Result<Functor> {
    Ok(relative_model(m, subgroup, primes)?.functor)
}
