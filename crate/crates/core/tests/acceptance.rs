//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use exodromy_core::cli;
use exodromy_core::dictionary::{default_maps, default_rings, DEFAULT_LEVEL};
use exodromy_core::fibrations::{
    classify, diagrams_isomorphic, grothendieck, restrict_to_preimage, straighten, straightening_comparison,
    ClassificationReport, SetValuedDiagram,
};
use exodromy_core::fincat::{is_equivalence, FinCategory, FinPoset, FullSubcategory, Functor, Morphism};
use exodromy_core::finring::{
    frobenius, is_perfectly_reduced, is_universal_homeomorphism, perfection, FinCommRing,
};
use exodromy_core::galmodel::{
    cyclotomic_splitting, gal_finite_ring, gal_functor, number_ring_model, relative_model, GaloisCategory,
};

const BUDGET: Duration = Duration::from_secs(60);
const SMALL_PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

struct Line {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, title: &'static str, pass: bool, detail: impl Into<String>) -> Line {
    Line {
        id,
        title,
        pass,
        detail: detail.into(),
    }
}

fn dictionary_suite() -> Line {
    let title = "dictionary suite green at level 12";
    let start = Instant::now();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let level = DEFAULT_LEVEL.to_string();
    let code = cli::run(["exodromy", "check", "--suite", "default", "--level", &level], &mut out, &mut err);
    let elapsed = start.elapsed();
    let card: Value = match serde_json::from_slice(&out) {
        Ok(v) => v,
        Err(e) => return line("1", title, false, format!("exit {code}, no scorecard: {e}")),
    };
    let summary = &card["summary"];
    let non_vacuous = summary["non_vacuous"].as_u64().unwrap_or(0);
    let failed = summary["failed"].as_u64().unwrap_or(u64::MAX);
    let uncovered: Vec<String> = card["coverage"]
        .as_object()
        .map(|m| {
            m.iter()
                .filter(|(_, c)| c["non_vacuous"].as_u64() == Some(0))
                .map(|(k, _)| k.clone())
                .collect()
        })
        .unwrap_or_default();
    let pass = code == 0 && non_vacuous >= 40 && failed == 0 && uncovered.is_empty() && elapsed <= BUDGET;
    line(
        "1",
        title,
        pass,
        format!(
            "exit {code}, {} cases, {non_vacuous} non-vacuous, {failed} failed, uncovered {uncovered:?}, {:.1}s",
            summary["total"],
            elapsed.as_secs_f64()
        ),
    )
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn perfectly_reduced_criterion(rings: &[(String, Arc<FinCommRing>)]) -> Line {
    let mut checked = 0;
    let mut discrepancies = Vec::new();
    for (name, a) in rings {
        if !is_prime(a.characteristic()) {
            continue;
        }
        checked += 1;
        let pr = is_perfectly_reduced(a).holds;
        let frobenius_bijective = frobenius(a).expect("prime characteristic").is_bijective();
        if pr != (a.is_reduced() && frobenius_bijective) {
            discrepancies.push(name.clone());
        }
    }
    line(
        "2",
        "perfectly reduced iff reduced with bijective Frobenius",
        checked >= 25 && discrepancies.is_empty(),
        format!("{checked} rings of prime characteristic, discrepancies {discrepancies:?}"),
    )
}

fn invariance_topologique(rings: &[(String, Arc<FinCommRing>)]) -> Line {
    let mut failures = Vec::new();
    for (name, a) in rings {
        let q = perfection(a).expect("corpus rings have perfections");
        let ok = gal_functor(&q, DEFAULT_LEVEL).and_then(|f| is_equivalence(&f)).unwrap_or(false);
        if !ok {
            failures.push(format!("{name} -> {name}_red"));
        }
    }
    let mut equivalences = 0;
    for (name, f) in default_maps(rings) {
        let functor = gal_functor(&f, DEFAULT_LEVEL).expect("corpus maps have Galois functors");
        if is_equivalence(&functor).unwrap() {
            equivalences += 1;
            if !is_universal_homeomorphism(&f).unwrap().holds {
                failures.push(format!("{name} is an equivalence but not a universal homeomorphism"));
            }
        }
    }
    line(
        "3",
        "reduction is an equivalence; equivalences are universal homeomorphisms",
        failures.is_empty(),
        format!("{} reductions, {equivalences} equivalences among corpus maps, failures {failures:?}", rings.len()),
    )
}

/// Primes of `Z[i]` above `p`: roots of `x^2 + 1` mod `p`, with 2 ramified.
fn gaussian_primes_above(p: u64) -> usize {
    if p == 2 {
        return 1;
    }
    let roots = (0..p).filter(|x| (x * x + 1) % p == 0).count();
    roots.max(1)
}

fn knots_and_primes() -> Vec<Line> {
    let primes = [2, 3, 5, 7, 11, 13];
    let rel = relative_model(8, &[1, 5], &primes).expect("Z[i] inside Q(ζ_8)");
    let report = classify("Z[i] -> Z", &rel.functor).expect("valid functor");
    let labels = rel.target.gal.labels().to_vec();
    let eta = rel.target.generic().expect("generic point");
    let expected: BTreeMap<usize, usize> = (0..primes.len())
        .map(|i| (i, gaussian_primes_above(primes[i])))
        .chain([(eta, 1)])
        .collect();
    let sizes = |m: &BTreeMap<usize, usize>| -> String {
        m.iter().map(|(&y, &n)| format!("{}:{n}", labels[y])).collect::<Vec<_>>().join(" ")
    };
    let fibers: BTreeMap<usize, usize> = report
        .fibers
        .iter()
        .map(|(&y, s)| (y, s.size().unwrap_or(usize::MAX)))
        .collect();
    let profile = report.right && !report.left && !report.kan;
    let mut lines = vec![
        line(
            "4a",
            "Z[i] -> Z is right, not left, not Kan",
            profile,
            format!("right {} left {} kan {}", report.right, report.left, report.kan),
        ),
        line(
            "4b",
            "Z[i] -> Z fiber sizes follow p mod 4",
            fibers == expected,
            format!("fibers {} expected {}", sizes(&fibers), sizes(&expected)),
        ),
        line(
            "4c",
            "Z[i] -> Z points over each object follow p mod 4",
            report.points == expected,
            format!("points {} expected {}", sizes(&report.points), sizes(&expected)),
        ),
    ];
    let away: Vec<usize> = rel.target.gal.category().objects().filter(|&y| y != 0).collect();
    let restricted = restrict_to_preimage(&rel.functor, &away)
        .and_then(|f| classify("Z[i][1/2] -> Z[1/2]", &f))
        .expect("restriction to a cosieve");
    lines.push(line(
        "4d",
        "away from 2 the map becomes left and Kan",
        restricted.left && restricted.kan && restricted.right,
        format!("left {} kan {}", restricted.left, restricted.kan),
    ));
    let pass = lines.iter().all(|l| l.pass);
    lines.insert(0, line("4", "knots-and-primes fibration profile", pass, "see 4a-4d"));
    lines
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> FinPoset {
    let n = rng.gen_range(1..=max);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    FinPoset::new(n, &pairs).expect("upward pairs give a poset")
}

fn random_base(rng: &mut ChaCha8Rng) -> Arc<FinCategory> {
    match rng.gen_range(0..4) {
        0 | 1 => Arc::new(random_poset(rng, 8).to_category()),
        2 => Arc::new(FinCategory::cyclic_group(rng.gen_range(1..=6))),
        _ => {
            let m = *[3u64, 4, 5, 8].choose(rng).unwrap();
            let k = rng.gen_range(1..=3);
            let primes: Vec<u64> = SMALL_PRIMES.choose_multiple(rng, k).copied().collect();
            let s = cyclotomic_splitting(m, &primes).unwrap();
            let labels: Vec<String> = s.primes.iter().map(|p| p.label.clone()).collect();
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            number_ring_model(&s, &refs, rng.gen_bool(0.7)).unwrap().gal.category().clone()
        }
    }
}

fn random_diagram(rng: &mut ChaCha8Rng) -> SetValuedDiagram {
    let base = random_base(rng);
    let n = base.object_count();
    let gens: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect();
    let free = SetValuedDiagram::from_generators(base, &gens).unwrap();
    let merges: Vec<(usize, usize, usize)> = (0..rng.gen_range(0..3))
        .filter_map(|_| {
            let d = rng.gen_range(0..n);
            let size = free.size(d);
            (size > 0).then(|| (d, rng.gen_range(0..size), rng.gen_range(0..size)))
        })
        .collect();
    free.quotient(&merges).unwrap()
}

/// `C × Pair(k) -> C`: every object replaced by `k` uniquely isomorphic copies.
fn fatten(f: &Functor, k: usize) -> Functor {
    let c = f.source();
    let n = c.object_count();
    let mut morphisms = Vec::new();
    for m in c.morphism_ids() {
        for a in 0..k {
            for b in 0..k {
                morphisms.push(Morphism {
                    src: c.src(m) * k + a,
                    dst: c.dst(m) * k + b,
                });
            }
        }
    }
    let id = |m: usize, a: usize, b: usize| (m * k + a) * k + b;
    let identities = (0..n * k).map(|x| id(c.identity(x / k), x % k, x % k)).collect();
    let fat = FinCategory::from_fn(n * k, morphisms, identities, |g, h| {
        let (gm, gb) = (g / (k * k), g % k);
        let (hm, ha) = (h / (k * k), (h / k) % k);
        id(c.compose(gm, hm).unwrap(), ha, gb)
    })
    .unwrap();
    let down = Functor::new(
        Arc::new(fat),
        c.clone(),
        (0..n * k).map(|x| x / k).collect(),
        (0..c.morphism_count() * k * k).map(|m| m / (k * k)).collect(),
    )
    .unwrap();
    down.then(f).unwrap()
}

fn grothendieck_round_trip() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for trial in 0..100 {
        let g = random_diagram(&mut rng);
        let p = grothendieck(&g);
        let back = straighten(&p).expect("the construction is a right fibration");
        if diagrams_isomorphic(&g, &back).is_none() {
            failures.push(format!("{trial}: straighten(∫G) ≇ G"));
        }
        let f = fatten(&p, rng.gen_range(1..=2));
        let ok = straighten(&f)
            .and_then(|h| straightening_comparison(&f, &h))
            .and_then(|(phi, projection)| {
                let over = phi.then(&projection)?;
                Ok(is_equivalence(&phi)? && over.object_map() == f.object_map() && over.morphism_map() == f.morphism_map())
            })
            .unwrap_or(false);
        if !ok {
            failures.push(format!("{trial}: ∫straighten(F) ≄ F"));
        }
    }
    line(
        "5",
        "Grothendieck construction and straightening are inverse",
        failures.is_empty(),
        format!("100 random diagrams, failures {failures:?}"),
    )
}

fn built_models(rings: &[(String, Arc<FinCommRing>)]) -> Vec<(String, GaloisCategory)> {
    let mut out = Vec::new();
    for (name, a) in rings {
        out.push((format!("Gal({name})"), gal_finite_ring(a, DEFAULT_LEVEL).unwrap()));
    }
    for m in [1u64, 3, 4, 5, 8] {
        let s = cyclotomic_splitting(m, &SMALL_PRIMES).unwrap();
        let labels: Vec<String> = s.primes.iter().map(|p| p.label.clone()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        for generic in [true, false] {
            out.push((
                format!("Gal(Z) m={m} generic={generic}"),
                number_ring_model(&s, &refs, generic).unwrap().gal,
            ));
        }
        let residues: Vec<u64> = s.group.labels().iter().map(|l| l.parse().unwrap()).collect();
        for &h in &residues {
            let sub: Vec<u64> = residues
                .iter()
                .copied()
                .filter(|&r| (0..residues.len() as u32).any(|e| h.pow(e) % m.max(2) == r % m.max(2)))
                .collect();
            if let Ok(rel) = relative_model(m, &sub, &SMALL_PRIMES) {
                out.push((format!("Gal(O_K) m={m} H=<{h}>"), rel.source.gal));
            }
        }
    }
    out
}

fn axiom_battery(rings: &[(String, Arc<FinCommRing>)]) -> Line {
    let models = built_models(rings);
    let failures: Vec<String> = models
        .iter()
        .filter_map(|(name, g)| {
            g.axioms()
                .first_failure()
                .map(|(axiom, w)| format!("{name}: {axiom} at {w}"))
        })
        .collect();
    line(
        "6",
        "Galois-category axioms hold for every built model",
        models.len() >= 30 && failures.is_empty(),
        format!("{} models, failures {failures:?}", models.len()),
    )
}

fn inclusion(c: &Arc<FinCategory>, objects: &[usize]) -> Functor {
    FullSubcategory::new(c.clone(), objects.iter().copied()).unwrap().inclusion()
}

fn soundness() -> Line {
    let chain2 = Arc::new(FinPoset::chain(2).to_category());
    let chain3 = Arc::new(FinPoset::chain(3).to_category());
    let rel = relative_model(8, &[1, 5], &[2, 3, 5]).unwrap();
    let inputs: Vec<(&str, Functor)> = vec![
        ("{0,2} in 0<1<2", inclusion(&chain3, &[0, 2])),
        ("{1} in 0<1", inclusion(&chain2, &[1])),
        ("{0} in 0<1", inclusion(&chain2, &[0])),
        ("Z[i] -> Z", rel.functor),
    ];
    let reports: Vec<(&str, ClassificationReport)> =
        inputs.iter().map(|(name, f)| (*name, classify(name, f).unwrap())).collect();
    let predicates: [(&str, fn(&ClassificationReport) -> bool); 8] = [
        ("sieve", |r| r.sieve),
        ("cosieve", |r| r.cosieve),
        ("interval", |r| r.interval),
        ("left", |r| r.left),
        ("right", |r| r.right),
        ("kan", |r| r.kan),
        ("equivalence", |r| r.equivalence),
        ("lifting", |r| r.lifting),
    ];
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for (key, holds) in predicates {
        let witness_keys: &[&str] = if key == "kan" { &["left", "right"] } else { &[key] };
        let hit = reports.iter().find(|(_, r)| {
            !holds(r) && witness_keys.iter().any(|k| r.witnesses.contains_key(*k))
        });
        match hit {
            Some((name, _)) => found.push(format!("{key}: {name}")),
            None => missing.push(key),
        }
    }
    line(
        "7",
        "every classifier predicate has a counterexample with a witness",
        missing.is_empty(),
        format!("{}; missing {missing:?}", found.join(", ")),
    )
}

fn report(lines: &[Line], failed: &mut usize) {
    for l in lines {
        let mark = if l.pass { "PASS" } else { "FAIL" };
        if !l.pass && !l.id.contains(char::is_alphabetic) {
            *failed += 1;
        }
        println!("[{mark}] {:<3} {}: {}", l.id, l.title, l.detail);
    }
}

fn main() {
    let rings = default_rings();
    let mut failed = 0;
    report(&[dictionary_suite()], &mut failed);
    report(&[perfectly_reduced_criterion(&rings)], &mut failed);
    report(&[invariance_topologique(&rings)], &mut failed);
    report(&knots_and_primes(), &mut failed);
    report(&[grothendieck_round_trip()], &mut failed);
    report(&[axiom_battery(&rings)], &mut failed);
    report(&[soundness()], &mut failed);
    println!("acceptance: {} of 7 criteria pass", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
