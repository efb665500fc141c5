//! Pairs ring-side predicates with category-side classifiers, one
//! dictionary entry at a time, and aggregates the verdicts into a
//! scorecard.
//!
//! Each case records both implications separately. An implication whose
//! hypothesis is false is recorded as vacuous rather than passed, and a
//! converse whose extra hypotheses fail is recorded as skipped with the
//! reason.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};
use crate::error::Result;
use crate::fibrations::{fiber_profile, is_cosieve, is_interval, is_left_fibration, is_right_fibration, is_sieve};
use crate::fincat::{equivalence, FullSubcategory, Functor};
use crate::finring::{is_etale, is_perfectly_reduced, is_radicial, is_universal_homeomorphism, RingHom};
use crate::galmodel::{gal_functor, GaloisCategory};

mod corpus;

pub use corpus::{
    all_homs, default_maps, default_rings, number_topology, run_suite, run_suite_in, CorpusConfig, CorpusError, CyclotomicCorpus, NamedMap, NamedModel, NamedRing,
    Scorecard, Summary, DEFAULT_LEVEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Proposition {
    OpenClosed,
    LocalIrreducible,
    InvarianceTopologique,
    Radicial,
    Finite,
    Etale,
    FiniteEtale,
    GaloisAxioms,
}

impl Proposition {
    pub const ALL: [Proposition; 8] = [
        Proposition::OpenClosed,
        Proposition::LocalIrreducible,
        Proposition::InvarianceTopologique,
        Proposition::Radicial,
        Proposition::Finite,
        Proposition::Etale,
        Proposition::FiniteEtale,
        Proposition::GaloisAxioms,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Proposition::OpenClosed => "open_closed",
            Proposition::LocalIrreducible => "local_irreducible",
            Proposition::InvarianceTopologique => "invariance_topologique",
            Proposition::Radicial => "radicial",
            Proposition::Finite => "finite",
            Proposition::Etale => "etale",
            Proposition::FiniteEtale => "finite_etale",
            Proposition::GaloisAxioms => "galois_axioms",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Proposition::OpenClosed => {
                "open subsets are cosieves, closed subsets sieves, locally closed subsets intervals"
            }
            Proposition::LocalIrreducible => {
                "local iff a weakly initial object exists, irreducible iff a weakly terminal object exists"
            }
            Proposition::InvarianceTopologique => {
                "a universal homeomorphism induces an equivalence of Galois categories"
            }
            Proposition::Radicial => "radicial iff every fiber is empty or a singleton",
            Proposition::Finite => "finite maps induce right fibrations with finite fibers",
            Proposition::Etale => "étale iff left fibration with finite fibers",
            Proposition::FiniteEtale => "finite étale iff Kan fibration with finite fibers",
            Proposition::GaloisAxioms => {
                "conservative functor to the points, endomorphisms invertible, morphisms monic, slices have joins"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Checked,
    Vacuous,
    Skipped,
}

/// One direction of a dictionary entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub status: Status,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Implication {
    fn evaluate(hypothesis: bool, conclusion: bool) -> Self {
        Implication {
            status: if hypothesis { Status::Checked } else { Status::Vacuous },
            holds: !hypothesis || conclusion,
            reason: None,
        }
    }

    fn skipped(reason: String) -> Self {
        Implication {
            status: Status::Skipped,
            holds: true,
            reason: Some(reason),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// How the converse of an entry is treated.
#[derive(Clone, Debug)]
pub enum Converse {
    Checked,
    /// Not asserted at this scale.
    Absent,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryCase {
    pub name: String,
    pub proposition: Proposition,
    pub statement: &'static str,
    pub input: String,
    pub ring_side: bool,
    pub category_side: bool,
    /// Ring side implies category side.
    pub forward: Implication,
    /// Category side implies ring side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converse: Option<Implication>,
    pub verdict: Verdict,
    pub vacuous: bool,
    /// Why the category side is false, when it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl DictionaryCase {
    pub fn new(
        proposition: Proposition,
        input: &str,
        aspect: Option<&str>,
        ring_side: bool,
        category: Check,
        converse: Converse,
    ) -> Self {
        let forward = Implication::evaluate(ring_side, category.holds);
        let converse = match converse {
            Converse::Checked => Some(Implication::evaluate(category.holds, ring_side)),
            Converse::Absent => None,
            Converse::Skipped(reason) => Some(Implication::skipped(reason)),
        };
        let directions: Vec<&Implication> = std::iter::once(&forward).chain(converse.as_ref()).collect();
        let vacuous = !directions.iter().any(|d| d.status == Status::Checked);
        let verdict = if directions.iter().any(|d| !d.holds) {
            Verdict::Fail
        } else if vacuous && directions.iter().any(|d| d.status == Status::Skipped) {
            Verdict::Skipped
        } else {
            Verdict::Pass
        };
        let name = match aspect {
            Some(a) => format!("{}/{input}/{a}", proposition.key()),
            None => format!("{}/{input}", proposition.key()),
        };
        DictionaryCase {
            name,
            proposition,
            statement: proposition.statement(),
            input: input.to_string(),
            ring_side,
            category_side: category.holds,
            forward,
            converse,
            verdict,
            vacuous,
            witness: category.witness,
        }
    }
}

/// Ring-side facts about a map `Spec B -> Spec A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingFacts {
    pub universal_homeomorphism: bool,
    pub radicial: bool,
    pub finite: bool,
    pub etale: bool,
    pub source_perfectly_reduced: bool,
    pub target_perfectly_reduced: bool,
}

impl RingFacts {
    pub fn of(f: &RingHom) -> Result<Self> {
        Ok(RingFacts {
            universal_homeomorphism: is_universal_homeomorphism(f)?.holds,
            radicial: is_radicial(f)?.holds,
            finite: true,
            etale: is_etale(f)?.holds,
            source_perfectly_reduced: is_perfectly_reduced(f.source()).holds,
            target_perfectly_reduced: is_perfectly_reduced(f.target()).holds,
        })
    }

    fn gate(&self) -> Converse {
        match (self.source_perfectly_reduced, self.target_perfectly_reduced) {
            (true, true) => Converse::Checked,
            (false, _) => Converse::Skipped("source is not perfectly reduced".into()),
            (_, false) => Converse::Skipped("target is not perfectly reduced".into()),
        }
    }
}

/// Category-side classification of `Gal(f)`, computed once per map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryFacts {
    pub equivalence: Check,
    pub fibers_at_most_singletons: Check,
    pub right: Check,
    pub left: Check,
    pub finite_fibers: Check,
}

fn both(a: &Check, b: &Check) -> Check {
    if !a.holds {
        a.clone()
    } else {
        b.clone()
    }
}

impl CategoryFacts {
    pub fn of(f: &Functor) -> Result<Self> {
        let profile = fiber_profile(f)?;
        Ok(CategoryFacts {
            equivalence: equivalence(f)?.check,
            fibers_at_most_singletons: profile.empty_or_singleton(),
            right: is_right_fibration(f)?,
            left: is_left_fibration(f)?,
            finite_fibers: profile.check,
        })
    }

    fn kan(&self) -> Check {
        both(&self.left, &self.right)
    }
}

/// The five map-level entries. The finite entry is one-way for finite
/// rings, where every map is finite.
pub fn map_cases(input: &str, ring: &RingFacts, cat: &CategoryFacts, finite_converse: bool) -> Vec<DictionaryCase> {
    let finite_etale_ring = ring.etale && ring.finite;
    vec![
        DictionaryCase::new(
            Proposition::InvarianceTopologique,
            input,
            None,
            ring.universal_homeomorphism,
            cat.equivalence.clone(),
            Converse::Checked,
        ),
        DictionaryCase::new(
            Proposition::Radicial,
            input,
            None,
            ring.radicial,
            cat.fibers_at_most_singletons.clone(),
            Converse::Checked,
        ),
        DictionaryCase::new(
            Proposition::Finite,
            input,
            None,
            ring.finite,
            both(&cat.right, &cat.finite_fibers),
            if finite_converse { Converse::Checked } else { Converse::Absent },
        ),
        DictionaryCase::new(
            Proposition::Etale,
            input,
            None,
            ring.etale,
            both(&cat.left, &cat.finite_fibers),
            ring.gate(),
        ),
        DictionaryCase::new(
            Proposition::FiniteEtale,
            input,
            None,
            finite_etale_ring,
            both(&cat.kan(), &cat.finite_fibers),
            ring.gate(),
        ),
    ]
}

fn single(f: &RingHom, level: usize, pick: Proposition) -> Result<DictionaryCase> {
    let functor = gal_functor(f, level)?;
    let cases = map_cases(&describe(f), &RingFacts::of(f)?, &CategoryFacts::of(&functor)?, false);
    Ok(cases.into_iter().find(|c| c.proposition == pick).expect("every map entry is produced"))
}

fn describe(f: &RingHom) -> String {
    format!("{}-element ring -> {}-element ring", f.source().size(), f.target().size())
}

pub fn check_invariance_topologique(f: &RingHom, level: usize) -> Result<DictionaryCase> {
    single(f, level, Proposition::InvarianceTopologique)
}

pub fn check_radicial(f: &RingHom, level: usize) -> Result<DictionaryCase> {
    single(f, level, Proposition::Radicial)
}

pub fn check_finite(f: &RingHom, level: usize) -> Result<DictionaryCase> {
    single(f, level, Proposition::Finite)
}

pub fn check_etale(f: &RingHom, level: usize) -> Result<DictionaryCase> {
    single(f, level, Proposition::Etale)
}

pub fn check_finite_etale(f: &RingHom, level: usize) -> Result<DictionaryCase> {
    single(f, level, Proposition::FiniteEtale)
}

/// A subset of points with its topological status on the ring side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetDeclaration {
    pub points: Vec<String>,
    pub open: bool,
    pub closed: bool,
    pub locally_closed: bool,
}

/// Three cases per subset: open ⟺ cosieve, closed ⟺ sieve, locally
/// closed ⟺ interval, on the objects lying over the subset.
pub fn check_open_closed(
    name: &str,
    model: &GaloisCategory,
    subsets: &[SubsetDeclaration],
) -> Result<Vec<DictionaryCase>> {
    let mut out = Vec::new();
    for s in subsets {
        let points = s
            .points
            .iter()
            .map(|l| model.point_named(l))
            .collect::<Result<Vec<_>>>()?;
        let objects = model.objects_over_points(&points);
        let sub = FullSubcategory::new(model.category().clone(), objects)?;
        let input = format!("{name}{{{}}}", s.points.join(","));
        for (aspect, declared, check) in [
            ("open", s.open, is_cosieve(&sub)),
            ("closed", s.closed, is_sieve(&sub)),
            ("locally_closed", s.locally_closed, is_interval(&sub)),
        ] {
            out.push(DictionaryCase::new(
                Proposition::OpenClosed,
                &input,
                Some(aspect),
                declared,
                check,
                Converse::Checked,
            ));
        }
    }
    Ok(out)
}

/// Local ⟺ weakly initial object, irreducible ⟺ weakly terminal object.
pub fn check_local_irreducible(name: &str, model: &GaloisCategory, local: bool, irreducible: bool) -> Vec<DictionaryCase> {
    let c = model.category();
    let found = |o: Option<usize>, what: &str| match o {
        Some(_) => Check::pass(),
        None => Check::fail(Witness::Note {
            detail: format!("no weakly {what} object"),
        }),
    };
    vec![
        DictionaryCase::new(
            Proposition::LocalIrreducible,
            name,
            Some("local"),
            local,
            found(c.weakly_initial_object(), "initial"),
            Converse::Checked,
        ),
        DictionaryCase::new(
            Proposition::LocalIrreducible,
            name,
            Some("irreducible"),
            irreducible,
            found(c.weakly_terminal_object(), "terminal"),
            Converse::Checked,
        ),
    ]
}

/// The axiom battery as a one-way entry.
pub fn check_galois_axioms(name: &str, model: &GaloisCategory) -> DictionaryCase {
    let report = model.axioms();
    let check = match report.first_failure() {
        None => Check::pass(),
        Some((axiom, w)) => Check::fail(Witness::Note {
            detail: format!("{axiom}: {w}"),
        }),
    };
    DictionaryCase::new(Proposition::GaloisAxioms, name, None, true, check, Converse::Absent)
}

/// Counts per proposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub cases: usize,
    pub non_vacuous: usize,
    pub failed: usize,
}

pub fn coverage(cases: &[DictionaryCase]) -> BTreeMap<Proposition, Coverage> {
    let mut out: BTreeMap<Proposition, Coverage> = Proposition::ALL.iter().map(|&p| (p, Coverage::default())).collect();
    for c in cases {
        let e = out.get_mut(&c.proposition).expect("all propositions");
        e.cases += 1;
        e.non_vacuous += usize::from(!c.vacuous);
        e.failed += usize::from(c.verdict == Verdict::Fail);
    }
    out
}
