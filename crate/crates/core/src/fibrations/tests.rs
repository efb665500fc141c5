use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::check::Witness;
use crate::fincat::{self, FinCategory, FinPoset, FullSubcategory, Functor, Morphism, Orientation};

fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

/// Points `0..n` each below a generic point `n`.
fn fan(n: usize) -> Arc<FinCategory> {
    let pairs: Vec<_> = (0..n).map(|p| (p, n)).collect();
    arc(FinPoset::new(n + 1, &pairs).unwrap().to_category())
}

fn chain(n: usize) -> Arc<FinCategory> {
    arc(FinPoset::chain(n).to_category())
}

fn sub(c: &Arc<FinCategory>, objects: &[usize]) -> FullSubcategory {
    FullSubcategory::new(c.clone(), objects.iter().copied()).unwrap()
}

fn pair_groupoid(n: usize) -> FinCategory {
    let morphisms: Vec<Morphism> = (0..n)
        .flat_map(|a| (0..n).map(move |b| Morphism { src: a, dst: b }))
        .collect();
    FinCategory::from_fn(n, morphisms, (0..n).map(|a| a * n + a).collect(), |g, f| {
        (f / n) * n + (g % n)
    })
    .unwrap()
}

fn to_terminal(c: Arc<FinCategory>) -> Functor {
    let (n, m) = (c.object_count(), c.morphism_count());
    Functor::new(c, arc(FinCategory::terminal()), vec![0; n], vec![0; m]).unwrap()
}

/// `B(Z/k) -> B(Z/n)`, `a ↦ (n/k)·a`.
fn cyclic_inclusion(k: usize, n: usize) -> Functor {
    let step = n / k;
    Functor::new(
        arc(FinCategory::cyclic_group(k)),
        arc(FinCategory::cyclic_group(n)),
        vec![0],
        (0..k).map(|a| a * step).collect(),
    )
    .unwrap()
}

#[test]
fn sieves_and_cosieves_of_a_fan() {
    let c = fan(3);
    assert!(is_sieve(&sub(&c, &[1])).holds);
    assert!(!is_cosieve(&sub(&c, &[1])).holds);
    assert!(is_cosieve(&sub(&c, &[3])).holds);
    assert!(!is_sieve(&sub(&c, &[3])).holds);
    let all = sub(&c, &[0, 1, 2, 3]);
    assert!(is_sieve(&all).holds && is_cosieve(&all).holds && is_interval(&all).holds);
    assert!(is_interval(&sub(&c, &[0, 2])).holds);
}

#[test]
fn chain_endpoints_are_not_an_interval() {
    let c = chain(3);
    let check = is_interval(&sub(&c, &[0, 2]));
    assert!(!check.holds);
    match check.witness {
        Some(Witness::Factorization { through, .. }) => assert_eq!(through, 1),
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(is_interval(&sub(&c, &[1])).holds);
    assert!(is_interval(&sub(&c, &[1, 2])).holds);
}

#[test]
fn identity_comma_fibers_are_points() {
    let c = fan(2);
    let id = Functor::identity(c.clone());
    for d in c.objects() {
        for o in [Orientation::Right, Orientation::Left] {
            // a slice or coslice: contractible through its terminal/initial object
            let fiber = comma_fiber(&id, d, o).unwrap();
            assert_eq!(fiber.component_count(), 1);
            match o {
                Orientation::Right => assert!(fiber.category().has_weakly_terminal()),
                Orientation::Left => assert!(fiber.category().has_weakly_initial()),
            }
        }
        let essential = essential_fiber(&id, d).unwrap();
        assert_eq!(essential.objects.len(), 1);
    }
}

#[test]
fn subgroup_inclusion_has_coset_many_fibers() {
    let f = cyclic_inclusion(3, 6);
    let left = comma_fiber(&f, 0, Orientation::Left).unwrap();
    assert_eq!(left.component_count(), 2);
    assert!(left.category().contractible_components().holds);
    let right = comma_fiber(&f, 0, Orientation::Right).unwrap();
    assert_eq!(right.component_count(), 2);
    let profile = fiber_profile(&f).unwrap();
    assert!(profile.check.holds);
    assert_eq!(profile.sizes[&0], FiberSize::Finite(2));
    // the strict preimage of the single object is connected
    assert_eq!(f.source().components().1.len(), 1);
}

#[test]
fn collapsing_a_non_invertible_arrow_gives_a_non_finite_fiber() {
    let f = to_terminal(chain(2));
    let profile = is_finite_fibers(&f).unwrap();
    assert!(!profile.check.holds);
    assert!(matches!(
        profile.sizes[&0],
        FiberSize::NonFinite {
            nonfinite: Witness::FiberNotContractible { object: 0, .. }
        }
    ));
    assert!(!profile.empty_or_singleton().holds);
}

#[test]
fn equivalence_has_singleton_fibers_and_all_predicates() {
    let f = to_terminal(arc(pair_groupoid(3)));
    let report = classify("pair", &f).unwrap();
    assert!(report.equivalence);
    assert!(report.left && report.right && report.kan);
    assert!(report.sieve && report.cosieve && report.interval);
    assert!(report.lifting && report.finite_fibers);
    assert_eq!(report.fibers[&0], FiberSize::Finite(1));
    assert!(report.witnesses.is_empty());
}

#[test]
fn groupoid_functors_are_left_and_right() {
    for (k, n) in [(1, 4), (2, 4), (3, 6), (5, 5)] {
        let f = cyclic_inclusion(k, n);
        assert!(is_right_fibration(&f).unwrap().holds);
        assert!(is_left_fibration(&f).unwrap().holds);
        assert!(is_kan_fibration(&f).unwrap().holds);
    }
    // non-injective on automorphisms: B(Z/4) -> B(Z/2)
    let f = Functor::new(
        arc(FinCategory::cyclic_group(4)),
        arc(FinCategory::cyclic_group(2)),
        vec![0],
        vec![0, 1, 0, 1],
    )
    .unwrap();
    assert!(is_kan_fibration(&f).unwrap().holds);
    // the fiber is B(Z/2), not contractible
    assert!(!fiber_profile(&f).unwrap().check.holds);
}

#[test]
fn sieve_inclusion_is_right_not_left() {
    let c = fan(2);
    let closed = sub(&c, &[0]).inclusion();
    assert!(is_sieve_inclusion(&closed).holds);
    assert!(is_right_fibration(&closed).unwrap().holds);
    assert!(!is_left_fibration(&closed).unwrap().holds);
    assert!(specialization_lifting(&closed).holds);

    let open = sub(&c, &[2]).inclusion();
    assert!(is_cosieve_inclusion(&open).holds);
    assert!(!is_sieve_inclusion(&open).holds);
    assert!(is_left_fibration(&open).unwrap().holds);
    assert!(!is_right_fibration(&open).unwrap().holds);
    let lifting = specialization_lifting(&open);
    assert!(!lifting.holds);
    assert!(matches!(lifting.witness, Some(Witness::LiftMissing { object: 0, .. })));
}

#[test]
fn restriction_to_a_cosieve_preimage() {
    let c = fan(2);
    let f = sub(&c, &[0, 2]).inclusion();
    let r = restrict_to_preimage(&f, &[2]).unwrap();
    assert_eq!(r.source().object_count(), 1);
    assert!(fincat::is_equivalence(&r).unwrap());
}

#[test]
fn two_chain_grothendieck_construction() {
    let c = chain(2);
    // morphism ids of the chain: pairs in lexicographic order
    let up = c.hom(0, 1)[0];
    let mut maps = vec![Vec::new(); c.morphism_count()];
    maps[c.identity(0)] = vec![0, 1];
    maps[c.identity(1)] = vec![0];
    maps[up] = vec![0];
    let g = SetValuedDiagram::new(c.clone(), vec![2, 1], maps).unwrap();
    let p = grothendieck(&g);
    assert_eq!(p.source().object_count(), 3);
    let non_identity = p.source().morphism_ids().filter(|&m| !p.source().is_identity(m));
    assert_eq!(non_identity.count(), 1);
    assert!(is_right_fibration(&p).unwrap().holds);
    let profile = fiber_profile(&p).unwrap();
    assert_eq!(profile.sizes[&0], FiberSize::Finite(2));
    assert_eq!(profile.sizes[&1], FiberSize::Finite(1));

    let back = straighten(&p).unwrap();
    assert!(diagrams_isomorphic(&g, &back).is_some());
}

#[test]
fn non_functorial_diagram_is_rejected() {
    let c = chain(2);
    let up = c.hom(0, 1)[0];
    let mut maps = vec![Vec::new(); c.morphism_count()];
    maps[c.identity(0)] = vec![1, 0];
    maps[c.identity(1)] = vec![0];
    maps[up] = vec![0];
    assert!(matches!(
        SetValuedDiagram::new(c, vec![2, 1], maps),
        Err(crate::Error::NotFunctorial(_))
    ));
}

#[test]
fn singleton_diagram_projects_by_an_equivalence() {
    let c = fan(3);
    let p = grothendieck(&SetValuedDiagram::singleton(c.clone()));
    assert!(fincat::is_equivalence(&p).unwrap());
    let g = straighten(&Functor::identity(c.clone())).unwrap();
    assert_eq!(g, SetValuedDiagram::singleton(c));
}

#[test]
fn swap_on_b_z2_has_connected_total_but_two_point_fiber() {
    let base = arc(FinCategory::cyclic_group(2));
    let g = SetValuedDiagram::new(base, vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap();
    let p = grothendieck(&g);
    // strict fiber over the single object is everything: one free orbit
    assert_eq!(p.source().components().1.len(), 1);
    assert!(p.source().contractible_components().holds);
    // the essential fiber recovers both elements
    assert_eq!(essential_fiber(&p, 0).unwrap().components, 2);
    let back = straighten(&p).unwrap();
    assert!(diagrams_isomorphic(&g, &back).is_some());
}

#[test]
fn straightening_requires_a_right_fibration() {
    let c = fan(2);
    let open = sub(&c, &[2]).inclusion();
    assert!(matches!(straighten(&open), Err(crate::Error::Precondition(_))));
}

#[test]
fn quotient_of_free_diagram_is_functorial() {
    let c = chain(3);
    let free = SetValuedDiagram::from_generators(c.clone(), &[2, 2, 1]).unwrap();
    assert_eq!(free.sizes(), &[3, 3, 2]);
    let q = free.quotient(&[(2, 0, 1)]).unwrap();
    assert_eq!(q.sizes(), &[2, 2, 1]);
}

#[test]
fn isomorphism_search_rejects_different_diagrams() {
    let base = arc(FinCategory::cyclic_group(2));
    let swap = SetValuedDiagram::new(base.clone(), vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap();
    let fixed = SetValuedDiagram::new(base, vec![2], vec![vec![0, 1], vec![0, 1]]).unwrap();
    assert!(diagrams_isomorphic(&swap, &fixed).is_none());
    assert!(diagrams_isomorphic(&swap, &swap).is_some());
}

#[test]
fn isomorphism_search_scales_with_orbits() {
    // three free Z/5-orbits, the second copy with its elements shuffled
    let base = arc(FinCategory::cyclic_group(5));
    let a = SetValuedDiagram::from_generators(base.clone(), &[0, 0, 0]).unwrap();
    let relabel: Vec<usize> = (0..15).map(|x| (x * 7 + 3) % 15).collect();
    let mut inverse = vec![0; 15];
    for (x, &y) in relabel.iter().enumerate() {
        inverse[y] = x;
    }
    let maps = (0..5)
        .map(|u| (0..15).map(|y| relabel[a.apply(u, inverse[y])]).collect())
        .collect();
    let b = SetValuedDiagram::new(base.clone(), vec![15], maps).unwrap();
    let pi = diagrams_isomorphic(&a, &b).expect("relabeled copies are isomorphic");
    for u in 0..5 {
        for s in 0..15 {
            assert_eq!(pi[0][a.apply(u, s)], b.apply(u, pi[0][s]));
        }
    }
    // two orbits of size 5 and five fixed points are not three free orbits
    let mixed = SetValuedDiagram::new(
        base,
        vec![15],
        (0..5)
            .map(|u| (0..15).map(|s| if s < 10 { (s / 5) * 5 + (s % 5 + u) % 5 } else { s }).collect())
            .collect(),
    )
    .unwrap();
    assert!(diagrams_isomorphic(&a, &mixed).is_none());
}

fn arb_poset() -> impl Strategy<Value = FinPoset> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..10).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a < b).collect();
            FinPoset::new(n, &pairs).unwrap()
        })
    })
}

/// A random presheaf on a random small base: poset or group.
fn arb_diagram() -> impl Strategy<Value = SetValuedDiagram> {
    let base = prop_oneof![
        arb_poset().prop_map(|p| arc(p.to_category())),
        (1usize..5).prop_map(|n| arc(FinCategory::cyclic_group(n))),
    ];
    (base, proptest::collection::vec(any::<usize>(), 0..4), proptest::collection::vec(any::<(usize, usize, usize)>(), 0..3))
        .prop_map(|(c, gens, merges)| {
            let n = c.object_count();
            let gens: Vec<usize> = gens.into_iter().map(|g| g % n).collect();
            let free = SetValuedDiagram::from_generators(c.clone(), &gens).unwrap();
            let merges: Vec<_> = merges
                .into_iter()
                .filter_map(|(d, s, t)| {
                    let d = d % n;
                    let size = free.size(d);
                    (size > 0).then(|| (d, s % size, t % size))
                })
                .collect();
            free.quotient(&merges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sieve_or_cosieve_is_an_interval(p in arb_poset(), mask in any::<u8>()) {
        let c = arc(p.to_category());
        let objects: Vec<usize> = c.objects().filter(|&x| mask & (1 << x) != 0).collect();
        let s = sub(&c, &objects);
        if is_sieve(&s).holds || is_cosieve(&s).holds {
            prop_assert!(is_interval(&s).holds);
        }
        let inc = s.inclusion();
        prop_assert_eq!(is_sieve(&s).holds, is_sieve_inclusion(&inc).holds);
        // a full inclusion is right iff sieve
        prop_assert_eq!(is_sieve(&s).holds, is_right_fibration(&inc).unwrap().holds);
        prop_assert_eq!(is_cosieve(&s).holds, is_left_fibration(&inc).unwrap().holds);
    }

    #[test]
    fn kan_is_left_and_right(p in arb_poset(), mask in any::<u8>()) {
        let c = arc(p.to_category());
        let objects: Vec<usize> = c.objects().filter(|&x| mask & (1 << x) != 0).collect();
        let inc = sub(&c, &objects).inclusion();
        let left = is_left_fibration(&inc).unwrap().holds;
        let right = is_right_fibration(&inc).unwrap().holds;
        prop_assert_eq!(is_kan_fibration(&inc).unwrap().holds, left && right);
        if right {
            prop_assert!(specialization_lifting(&inc).holds);
        }
    }

    #[test]
    fn grothendieck_and_straightening_are_inverse(g in arb_diagram()) {
        let p = grothendieck(&g);
        prop_assert!(is_right_fibration(&p).unwrap().holds);
        prop_assert!(specialization_lifting(&p).holds);
        let profile = fiber_profile(&p).unwrap();
        prop_assert!(profile.check.holds);
        for d in g.base().objects() {
            prop_assert_eq!(&profile.sizes[&d], &FiberSize::Finite(g.size(d)));
        }
        let back = straighten(&p).unwrap();
        prop_assert!(diagrams_isomorphic(&g, &back).is_some());
        let (phi, projection) = straightening_comparison(&p, &back).unwrap();
        prop_assert!(fincat::is_equivalence(&phi).unwrap());
        let composite = phi.then(&projection).unwrap();
        prop_assert_eq!(composite.object_map(), p.object_map());
        prop_assert_eq!(composite.morphism_map(), p.morphism_map());
    }

    #[test]
    fn predicates_are_invariant_under_equivalence(g in arb_diagram(), k in 1usize..3) {
        // precompose with the equivalence pair_groupoid(k) × C -> C is awkward;
        // use the projection from a fattened copy: each object doubled
        let p = grothendieck(&g);
        let fat = fatten(p.source(), k);
        let q = fat.then(&p).unwrap();
        prop_assert_eq!(
            is_right_fibration(&p).unwrap().holds,
            is_right_fibration(&q).unwrap().holds
        );
        prop_assert_eq!(
            is_left_fibration(&p).unwrap().holds,
            is_left_fibration(&q).unwrap().holds
        );
        prop_assert_eq!(fiber_profile(&p).unwrap().sizes, fiber_profile(&q).unwrap().sizes);
    }
}

/// Equivalence `C × Pair(k) -> C` replacing every object by `k` isomorphic
/// copies.
fn fatten(c: &Arc<FinCategory>, k: usize) -> Functor {
    let pair = pair_groupoid(k);
    let n = c.object_count();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    for f in c.morphism_ids() {
        for a in 0..k {
            for b in 0..k {
                morphisms.push(Morphism {
                    src: c.src(f) * k + a,
                    dst: c.dst(f) * k + b,
                });
                underlying.push((f, a * k + b));
            }
        }
    }
    let id = |f: usize, p: usize| (f * k + p / k) * k + p % k;
    let identities = (0..n * k)
        .map(|x| id(c.identity(x / k), (x % k) * k + x % k))
        .collect();
    let fat = FinCategory::from_fn(n * k, morphisms, identities, |g, f| {
        let ((g0, gp), (f0, fp)) = (underlying[g], underlying[f]);
        id(c.compose(g0, f0).unwrap(), pair.compose(gp, fp).unwrap())
    })
    .unwrap();
    Functor::new(
        arc(fat),
        c.clone(),
        (0..n * k).map(|x| x / k).collect(),
        underlying.iter().map(|&(f, _)| f).collect(),
    )
    .unwrap()
}
