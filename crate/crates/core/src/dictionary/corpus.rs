//! Corpus generation and the suite runner.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    check_galois_axioms, check_local_irreducible, check_open_closed, coverage, map_cases, CategoryFacts, Coverage,
    DictionaryCase, Proposition, RingFacts, Status, SubsetDeclaration, Verdict,
};
use crate::error::Result;
use crate::fibrations::restrict_to_preimage;
use crate::fincat::{FullSubcategory, Functor};
use crate::finring::json::{RingHomJson, RingJson};
use crate::finring::{build_ring, extend_hom, local_decomposition, perfection, FinCommRing, Presentation, RingHom};
use crate::galmodel::json::{GalModelJson, SplittingJson};
use crate::galmodel::{
    cyclotomic_splitting, gal_finite_ring, gal_functor, number_ring_model, relative_model, FiniteGroup,
    GaloisCategory, NumberRingModel, SplittingDatum,
};

pub const DEFAULT_LEVEL: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRing {
    pub name: String,
    pub ring: RingJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMap {
    pub name: String,
    pub map: RingHomJson,
}

/// A hand-authored model: either a serialized Galois category or a
/// splitting datum with the primes to use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamedModel {
    Gal {
        name: String,
        galmodel: GalModelJson,
    },
    Splitting {
        name: String,
        splitting: SplittingJson,
        primes: Vec<String>,
        #[serde(default = "yes")]
        includes_generic: bool,
    },
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCorpus {
    pub modulus: u64,
    pub primes: Vec<u64>,
}

/// What to run. The default suite sets `default_rings` and the cyclotomic
/// conductors 1, 3, 4, 5, 8 with primes up to 23.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    #[serde(default)]
    pub default_rings: bool,
    #[serde(default)]
    pub cyclotomic: Vec<CyclotomicCorpus>,
    #[serde(default)]
    pub rings: Vec<NamedRing>,
    #[serde(default)]
    pub maps: Vec<NamedMap>,
    #[serde(default)]
    pub models: Vec<NamedModel>,
}

const SMALL_PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

impl CorpusConfig {
    pub fn default_suite() -> Self {
        CorpusConfig {
            default_rings: true,
            cyclotomic: [1, 3, 4, 5, 8]
                .into_iter()
                .map(|modulus| CyclotomicCorpus {
                    modulus,
                    primes: SMALL_PRIMES.to_vec(),
                })
                .collect(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusError {
    pub item: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub vacuous: usize,
    pub non_vacuous: usize,
    /// Directions skipped because a hypothesis of the converse fails.
    pub skipped_directions: usize,
    pub corpus_errors: usize,
    /// Propositions with cases that are all vacuous.
    pub uncovered: Vec<Proposition>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scorecard {
    pub schema: &'static str,
    pub level: usize,
    pub summary: Summary,
    pub coverage: BTreeMap<Proposition, Coverage>,
    pub corpus_errors: Vec<CorpusError>,
    pub cases: Vec<DictionaryCase>,
}

struct Collector {
    level: usize,
    cases: BTreeMap<String, DictionaryCase>,
    errors: Vec<CorpusError>,
}

impl Collector {
    fn push(&mut self, mut case: DictionaryCase) {
        let base = case.name.clone();
        let mut k = 2;
        while self.cases.contains_key(&case.name) {
            case.name = format!("{base}#{k}");
            k += 1;
        }
        self.cases.insert(case.name.clone(), case);
    }

    fn extend(&mut self, cases: impl IntoIterator<Item = DictionaryCase>) {
        for c in cases {
            self.push(c);
        }
    }

    fn attempt(&mut self, item: &str, run: impl FnOnce(&mut Self) -> Result<()>) {
        if let Err(e) = run(self) {
            self.errors.push(CorpusError {
                item: item.to_string(),
                error: e.to_string(),
            });
        }
    }
}

fn ring(p: Presentation) -> Arc<FinCommRing> {
    Arc::new(build_ring(&p).expect("corpus presentations are valid"))
}

/// The rings of the default suite, by name.
pub fn default_rings() -> Vec<(String, Arc<FinCommRing>)> {
    let mut out = Vec::new();
    for n in 2..=30 {
        out.push((format!("Z/{n}"), ring(Presentation::integers(n))));
    }
    for (p, e) in [(2u64, 2usize), (2, 3), (3, 2)] {
        out.push((format!("F_{}", p.pow(e as u32)), ring(Presentation::galois_field(p, e))));
    }
    for (p, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        out.push((
            format!("F_{p}[x]/(x^{k})"),
            ring(Presentation::quotient(p, &["x"], &[&format!("x^{k}")])),
        ));
    }
    out.push(("GR(4,2)".into(), ring(Presentation::quotient(4, &["x"], &["x^2 + x + 1"]))));
    let base = [
        ("Z/2", Presentation::integers(2)),
        ("Z/3", Presentation::integers(3)),
        ("Z/4", Presentation::integers(4)),
        ("F_4", Presentation::galois_field(2, 2)),
        ("F_9", Presentation::galois_field(3, 2)),
        ("F_2[x]/(x^2)", Presentation::quotient(2, &["x"], &["x^2"])),
    ];
    for i in 0..base.len() {
        for j in i..base.len() {
            out.push((
                format!("{}×{}", base[i].0, base[j].0),
                ring(Presentation::product(vec![base[i].1.clone(), base[j].1.clone()])),
            ));
        }
    }
    out
}

/// Every homomorphism `A -> B`, by extension from generator images.
pub fn all_homs(a: &Arc<FinCommRing>, b: &Arc<FinCommRing>) -> Vec<RingHom> {
    let gens = a.generators();
    let mut images = vec![0; gens.len()];
    let mut found = BTreeSet::new();
    loop {
        if let Some(map) = extend_hom(a, b, &gens, &images) {
            found.insert(map);
        }
        let mut i = 0;
        while i < images.len() && images[i] + 1 == b.size() {
            images[i] = 0;
            i += 1;
        }
        if i == images.len() {
            break;
        }
        images[i] += 1;
    }
    found
        .into_iter()
        .map(|m| RingHom::new(a.clone(), b.clone(), m).expect("extension is a homomorphism"))
        .collect()
}

fn structure_map(a: &Arc<FinCommRing>) -> Result<RingHom> {
    let c = a.characteristic();
    let z = Arc::new(build_ring(&Presentation::integers(c))?);
    let map = z.elements().map(|k| a.integer(k as u64)).collect();
    RingHom::new(z, a.clone(), map)
}

fn ring_cases(col: &mut Collector, name: &str, a: &Arc<FinCommRing>) -> Result<()> {
    let g = gal_finite_ring(a, col.level)?;
    let input = format!("Gal({name})");
    col.push(check_galois_axioms(&input, &g));
    let primes = local_decomposition(a)?.len();
    col.extend(check_local_irreducible(&input, &g, a.is_local(), primes == 1));
    // Spec of a finite ring is discrete: every subset is open and closed
    let labels = g.point_labels().to_vec();
    let mut subsets = Vec::new();
    for mask in 1u32..(1 << labels.len()) {
        let points = (0..labels.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| labels[i].clone())
            .collect();
        subsets.push(SubsetDeclaration {
            points,
            open: true,
            closed: true,
            locally_closed: true,
        });
    }
    let cases = check_open_closed(&input, &g, &subsets)?;
    col.extend(cases);
    Ok(())
}

fn hom_cases(col: &mut Collector, name: &str, f: &RingHom) -> Result<()> {
    let functor = gal_functor(f, col.level)?;
    let cases = map_cases(name, &RingFacts::of(f)?, &CategoryFacts::of(&functor)?, false);
    col.extend(cases);
    Ok(())
}

/// The maps of the default suite between `rings`.
pub fn default_maps(rings: &[(String, Arc<FinCommRing>)]) -> Vec<(String, RingHom)> {
    let mut out = Vec::new();
    let named: BTreeMap<&str, &Arc<FinCommRing>> = rings.iter().map(|(n, a)| (n.as_str(), a)).collect();
    for (name, a) in rings {
        out.push((format!("id {name}"), RingHom::identity(a.clone())));
        let c = a.characteristic();
        if !name.starts_with("Z/") || name.contains('×') {
            if let Ok(f) = structure_map(a) {
                out.push((format!("Z/{c} -> {name}"), f));
            }
        }
        if !a.is_reduced() {
            if let Ok(f) = perfection(a) {
                out.push((format!("{name} -> {name}_red"), f));
            }
        }
        let dec = local_decomposition(a).expect("corpus rings decompose");
        if dec.len() == 1 && !a.is_field() {
            let factor = &dec.factors[0];
            let k = Arc::new(factor.residue.clone());
            let map = a.elements().map(|x| factor.residue_of(x)).collect();
            out.push((format!("{name} -> residue field"), RingHom::new(a.clone(), k, map).unwrap()));
        }
        if dec.len() > 1 {
            for (i, factor) in dec.factors.iter().enumerate() {
                let target = Arc::new(factor.ring.clone());
                let f = RingHom::new(a.clone(), target, factor.projection.clone()).unwrap();
                out.push((format!("{name} -> factor {i}"), f));
            }
        }
    }
    // quotients among the Z/n
    for n in 2..=30u64 {
        for d in 2..n {
            if n % d == 0 {
                let (a, b) = (named[format!("Z/{n}").as_str()], named[format!("Z/{d}").as_str()]);
                let map = a.elements().map(|x| x % d as usize).collect();
                out.push((format!("Z/{n} -> Z/{d}"), RingHom::new(a.clone(), b.clone(), map).unwrap()));
            }
        }
    }
    // every map between a few small pairs
    for (s, t) in [
        ("F_4", "F_4×F_4"),
        ("F_9", "F_9×F_9"),
        ("F_2[x]/(x^3)", "F_2[x]/(x^2)"),
        ("F_3[x]/(x^3)", "F_3[x]/(x^2)"),
        ("F_2[x]/(x^2)", "F_2[x]/(x^3)"),
        ("GR(4,2)", "GR(4,2)"),
        ("F_4", "F_4×F_2[x]/(x^2)"),
    ] {
        for (i, f) in all_homs(named[s], named[t]).into_iter().enumerate() {
            out.push((format!("{s} -> {t} #{i}"), f));
        }
    }
    out
}

/// Ring-side status of a subset of points of a semilocal Dedekind model:
/// finite sets of closed points are closed, a set containing the generic
/// point is closed only when it is everything, and a set is locally closed
/// when it is open in its closure.
pub fn number_topology(labels: &[String], has_generic: bool, subset: &BTreeSet<usize>) -> SubsetDeclaration {
    let n = labels.len();
    let eta = n - 1;
    let all: BTreeSet<usize> = (0..n).collect();
    let closed = |s: &BTreeSet<usize>| !has_generic || !s.contains(&eta) || *s == all;
    let complement: BTreeSet<usize> = all.difference(subset).copied().collect();
    let closure = if has_generic && subset.contains(&eta) {
        all.clone()
    } else {
        subset.clone()
    };
    let rest: BTreeSet<usize> = closure.difference(subset).copied().collect();
    SubsetDeclaration {
        points: subset.iter().map(|&i| labels[i].clone()).collect(),
        open: closed(&complement),
        closed: closed(subset),
        locally_closed: closed(&rest),
    }
}

fn model_cases(col: &mut Collector, name: &str, model: &NumberRingModel) -> Result<()> {
    let g = &model.gal;
    col.push(check_galois_axioms(name, g));
    let k = model.points.len();
    let (local, irreducible) = if model.has_generic {
        (k <= 1, true)
    } else {
        (k == 1, k == 1)
    };
    col.extend(check_local_irreducible(name, g, local, irreducible));
    Ok(())
}

fn subsets_of_interest(n: usize, has_generic: bool) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let all: BTreeSet<usize> = (0..n).collect();
    for i in 0..n {
        out.insert(BTreeSet::from([i]));
        out.insert(all.iter().copied().filter(|&j| j != i).collect());
    }
    out.insert(all.clone());
    if has_generic && n >= 3 {
        out.insert(BTreeSet::from([0, 1]));
        out.insert(BTreeSet::from([0, n - 1]));
        out.insert((0..n - 1).collect());
    }
    out.retain(|s| !s.is_empty());
    out.into_iter().collect()
}

struct DeclaredMap {
    facts: RingFacts,
    functor: Functor,
}

fn declared(col: &mut Collector, name: &str, map: DeclaredMap) -> Result<()> {
    let cat = CategoryFacts::of(&map.functor)?;
    col.extend(map_cases(name, &map.facts, &cat, true));
    Ok(())
}

/// Facts for maps between normal semilocal models, all perfectly reduced.
fn normal_facts(universal_homeomorphism: bool, radicial: bool, finite: bool, etale: bool) -> RingFacts {
    RingFacts {
        universal_homeomorphism,
        radicial,
        finite,
        etale,
        source_perfectly_reduced: true,
        target_perfectly_reduced: true,
    }
}

fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in g.elements() {
        for b in g.elements() {
            out.insert(g.subgroup_generated(&[a, b]));
        }
    }
    out.into_iter().collect()
}

fn cyclotomic_cases(col: &mut Collector, spec: &CyclotomicCorpus) -> Result<()> {
    let m = spec.modulus;
    let s = cyclotomic_splitting(m, &spec.primes)?;
    let labels: Vec<String> = s.primes.iter().map(|p| p.label.clone()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let z = number_ring_model(&s, &refs, true)?;
    let zname = format!("Gal(Z) m={m}");
    model_cases(col, &zname, &z)?;
    let points = z.gal.point_labels().to_vec();
    let decls: Vec<SubsetDeclaration> = subsets_of_interest(points.len(), true)
        .iter()
        .map(|sub| number_topology(&points, true, sub))
        .collect();
    let cases = check_open_closed(&zname, &z.gal, &decls)?;
    col.extend(cases);
    // closed points only, and one local model
    let closed = number_ring_model(&s, &refs, false)?;
    model_cases(col, &format!("Gal(closed points of Z) m={m}"), &closed)?;
    let cpoints = closed.gal.point_labels().to_vec();
    let decls: Vec<SubsetDeclaration> = subsets_of_interest(cpoints.len(), false)
        .iter()
        .map(|sub| number_topology(&cpoints, false, sub))
        .collect();
    let cases = check_open_closed(&format!("Gal(closed points of Z) m={m}"), &closed.gal, &decls)?;
    col.extend(cases);
    if let Some(first) = refs.first() {
        let local = number_ring_model(&s, &[first], true)?;
        model_cases(col, &format!("Gal(Z_({first})) m={m}"), &local)?;
        let point = number_ring_model(&s, &[first], false)?;
        model_cases(col, &format!("Gal(F_{first}) m={m}"), &point)?;
    }
    let eta = z.generic().expect("built with the generic point");
    // open and closed immersions into the model of Z
    let open = FullSubcategory::new(z.gal.category().clone(), [eta])?.inclusion();
    declared(
        col,
        &format!("Q -> Z m={m}"),
        DeclaredMap {
            facts: normal_facts(false, true, false, true),
            functor: open,
        },
    )?;
    if z.points.len() >= 2 {
        let away = FullSubcategory::new(z.gal.category().clone(), 1..=eta)?.inclusion();
        declared(
            col,
            &format!("Z[1/{}] -> Z m={m}", labels[0]),
            DeclaredMap {
                facts: normal_facts(false, true, false, true),
                functor: away,
            },
        )?;
    }
    for (i, label) in labels.iter().enumerate() {
        let point = FullSubcategory::new(z.gal.category().clone(), [i])?.inclusion();
        declared(
            col,
            &format!("F_{label} -> Z m={m}"),
            DeclaredMap {
                facts: normal_facts(false, true, true, false),
                functor: point,
            },
        )?;
    }
    // rings of integers of the subfields
    let whole: Vec<usize> = s.group.elements().collect();
    for h in subgroups(&s.group) {
        let residues: Vec<u64> = h.iter().map(|&a| s.group.label(a).parse().unwrap()).collect();
        let hname = residues.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let rel = relative_model(m, &residues, &spec.primes)?;
        let kname = format!("O_K m={m} H={{{hname}}}");
        model_cases(col, &format!("Gal({kname})"), &rel.source)?;
        let trivial = h == whole;
        let unramified = |p: &crate::galmodel::PrimeSplitting| p.inertia.iter().all(|a| h.contains(a));
        let etale = s.primes.iter().all(unramified);
        declared(
            col,
            &format!("Z -> {kname}"),
            DeclaredMap {
                facts: normal_facts(trivial, trivial, true, etale),
                functor: rel.functor.clone(),
            },
        )?;
        if !etale {
            let mut keep: Vec<usize> = (0..s.primes.len()).filter(|&j| unramified(&s.primes[j])).collect();
            keep.push(rel.target.generic().unwrap());
            let restricted = restrict_to_preimage(&rel.functor, &keep)?;
            declared(
                col,
                &format!("Z[1/ramified] -> {kname}[1/ramified]"),
                DeclaredMap {
                    facts: normal_facts(trivial, trivial, true, true),
                    functor: restricted,
                },
            )?;
        }
    }
    Ok(())
}

fn splitting_model(col: &mut Collector, name: &str, s: &SplittingDatum, primes: &[String], generic: bool) -> Result<()> {
    let refs: Vec<&str> = primes.iter().map(String::as_str).collect();
    let model = number_ring_model(s, &refs, generic)?;
    model_cases(col, &format!("Gal({name})"), &model)
}

fn gal_model(col: &mut Collector, name: &str, g: &GaloisCategory) {
    col.push(check_galois_axioms(&format!("Gal({name})"), g));
}

pub fn run_suite(config: &CorpusConfig, level: usize) -> Scorecard {
    run_suite_in(config, level, None)
}

/// Runs every check over the corpus. Relative paths in ring and map
/// documents resolve against `base`.
pub fn run_suite_in(config: &CorpusConfig, level: usize, base: Option<&Path>) -> Scorecard {
    let mut col = Collector {
        level,
        cases: BTreeMap::new(),
        errors: Vec::new(),
    };
    if config.default_rings {
        let rings = default_rings();
        for (name, a) in &rings {
            col.attempt(name, |c| ring_cases(c, name, a));
        }
        for (name, f) in default_maps(&rings) {
            col.attempt(&name, |c| hom_cases(c, &name, &f));
        }
    }
    for spec in &config.cyclotomic {
        col.attempt(&format!("cyclotomic m={}", spec.modulus), |c| cyclotomic_cases(c, spec));
    }
    for r in &config.rings {
        col.attempt(&r.name, |c| {
            let a = Arc::new(r.ring.to_ring()?);
            ring_cases(c, &r.name, &a)?;
            hom_cases(c, &format!("id {}", r.name), &RingHom::identity(a.clone()))?;
            if !a.is_reduced() {
                hom_cases(c, &format!("{} -> {}_red", r.name, r.name), &perfection(&a)?)?;
            }
            Ok(())
        });
    }
    for m in &config.maps {
        col.attempt(&m.name, |c| hom_cases(c, &m.name, &m.map.to_hom(base)?));
    }
    for model in &config.models {
        match model {
            NamedModel::Gal { name, galmodel } => col.attempt(name, |c| {
                gal_model(c, name, &galmodel.to_gal()?);
                Ok(())
            }),
            NamedModel::Splitting {
                name,
                splitting,
                primes,
                includes_generic,
            } => col.attempt(name, |c| {
                splitting_model(c, name, &splitting.to_datum()?, primes, *includes_generic)
            }),
        }
    }
    let cases: Vec<DictionaryCase> = col.cases.into_values().collect();
    let coverage = coverage(&cases);
    let count = |v: Verdict| cases.iter().filter(|c| c.verdict == v).count();
    let uncovered: Vec<Proposition> = coverage
        .iter()
        .filter(|(_, c)| c.cases > 0 && c.non_vacuous == 0)
        .map(|(&p, _)| p)
        .collect();
    let failed = count(Verdict::Fail);
    let summary = Summary {
        total: cases.len(),
        passed: count(Verdict::Pass),
        failed,
        skipped: count(Verdict::Skipped),
        vacuous: cases.iter().filter(|c| c.vacuous).count(),
        non_vacuous: cases.iter().filter(|c| !c.vacuous).count(),
        skipped_directions: cases
            .iter()
            .flat_map(|c| std::iter::once(&c.forward).chain(c.converse.as_ref()))
            .filter(|d| d.status == Status::Skipped)
            .count(),
        corpus_errors: col.errors.len(),
        ok: failed == 0 && col.errors.is_empty() && uncovered.is_empty(),
        uncovered,
    };
    Scorecard {
        schema: "scorecard.v1",
        level,
        summary,
        coverage,
        corpus_errors: col.errors,
        cases,
    }
}
