use std::sync::Arc;

use proptest::prelude::*;

use super::json::CategoryJson;
use super::*;
use crate::check::Witness;

fn mor(src: ObjId, dst: ObjId) -> Morphism {
    Morphism { src, dst }
}

/// Monoid `{1, a, b}` with `a·a = b`; `tweak` lets a test break associativity.
fn three_element_monoid(a_b: MorId, b_a: MorId) -> CategoryTable {
    let mul = |g: usize, f: usize| match (g, f) {
        (0, x) | (x, 0) => x,
        (1, 1) => 2,
        (1, 2) => a_b,
        (2, 1) => b_a,
        _ => 2,
    };
    let mut composition = Vec::new();
    for g in 0..3 {
        for f in 0..3 {
            composition.push((g, f, mul(g, f)));
        }
    }
    CategoryTable {
        objects: 1,
        morphisms: vec![mor(0, 0); 3],
        identities: vec![Some(0)],
        composition,
    }
}

/// x with idempotent e, retract y: f: x -> y, g: y -> x, f∘g = id_y, g∘f = e.
fn split_idempotent() -> FinCategory {
    // 0 id_x, 1 id_y, 2 f, 3 g, 4 e
    let morphisms = vec![mor(0, 0), mor(1, 1), mor(0, 1), mor(1, 0), mor(0, 0)];
    FinCategory::from_fn(2, morphisms, vec![0, 1], |g, f| match (g, f) {
        (0, x) | (x, 0) | (1, x) | (x, 1) => x,
        (2, 3) => 1,
        (3, 2) => 4,
        (4, 4) => 4,
        (2, 4) => 2,
        (4, 3) => 3,
        other => panic!("not composable: {other:?}"),
    })
    .unwrap()
}

/// Objects x, y, z; parallel u, v: x -> y; w: y -> z with w∘u = w∘v = t.
fn collapsing() -> FinCategory {
    // 0,1,2 identities; 3 u; 4 v; 5 w; 6 t
    let morphisms = vec![
        mor(0, 0),
        mor(1, 1),
        mor(2, 2),
        mor(0, 1),
        mor(0, 1),
        mor(1, 2),
        mor(0, 2),
    ];
    FinCategory::from_fn(3, morphisms, vec![0, 1, 2], |g, f| match (g, f) {
        (g, f) if g <= 2 => f,
        (g, f) if f <= 2 => g,
        (5, 3) | (5, 4) => 6,
        other => panic!("not composable: {other:?}"),
    })
    .unwrap()
}

#[test]
fn terminal_table_is_valid() {
    let t = FinCategory::terminal();
    assert!(validate_category(&t.table()).is_valid());
    assert_eq!(t.morphism_count(), 1);
}

#[test]
fn missing_composite_is_reported() {
    let mut table = FinCategory::cyclic_group(2).table();
    table.composition.retain(|&(g, f, _)| (g, f) != (1, 1));
    let report = validate_category(&table);
    assert_eq!(report.violations, vec![Violation::MissingComposite { g: 1, f: 1 }]);
}

#[test]
fn associativity_witness_is_least_triple() {
    // a(aa) = ab = b but (aa)a = ba = a.
    let report = validate_category(&three_element_monoid(2, 1));
    assert!(report
        .violations
        .contains(&Violation::Associativity { h: 1, g: 1, f: 1 }));
    assert_eq!(
        report.violations.first(),
        Some(&Violation::Associativity { h: 1, g: 1, f: 1 })
    );
    // The truncated free monoid a³ = a² is a genuine category.
    assert!(validate_category(&three_element_monoid(2, 2)).is_valid());
}

#[test]
fn identity_laws_and_endpoints_are_checked() {
    let mut table = FinCategory::cyclic_group(3).table();
    for entry in &mut table.composition {
        if entry.0 == 0 && entry.1 == 1 {
            entry.2 = 2;
        }
    }
    let report = validate_category(&table);
    assert!(report.violations.contains(&Violation::LeftIdentity { morphism: 1 }));

    let bad = CategoryTable {
        objects: 1,
        morphisms: vec![mor(0, 3)],
        identities: vec![Some(0)],
        composition: vec![],
    };
    assert!(!validate_category(&bad).is_valid());
}

#[test]
fn identities_are_mono() {
    let c = collapsing();
    for x in c.objects() {
        assert!(c.is_mono(c.identity(x)).unwrap().holds);
    }
    assert!(c.is_mono(99).is_err());
}

#[test]
fn group_morphisms_are_mono_by_table_scan() {
    let c = FinCategory::cyclic_group(2);
    // brute force: f∘g = f∘h ⇒ g = h over the 2×2 table
    for f in 0..2 {
        let mut injective = true;
        for g in 0..2 {
            for h in 0..2 {
                if c.compose(f, g) == c.compose(f, h) && g != h {
                    injective = false;
                }
            }
        }
        assert!(injective);
        assert!(c.is_mono(f).unwrap().holds);
    }
}

#[test]
fn collapsing_arrow_is_not_mono() {
    let c = collapsing();
    let check = c.is_mono(5).unwrap();
    assert!(!check.holds);
    assert_eq!(check.witness, Some(Witness::NotMono { f: 5, g: 3, h: 4 }));
    assert!(!c.all_mono().holds);
}

#[test]
fn endomorphisms_and_automorphisms() {
    assert!(FinCategory::cyclic_group(5).endos_are_autos().holds);
    let monoid = FinCategory::new(three_element_monoid(2, 2)).unwrap();
    let check = monoid.endos_are_autos();
    assert_eq!(check.witness, Some(Witness::Morphism { morphism: 1 }));
}

#[test]
fn slice_of_poset_at_top_is_whole_poset() {
    let p = FinPoset::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let c = p.to_category();
    let s = slice(&c, 3).unwrap();
    assert_eq!(s.category.object_count(), 4);
    let classes = s.category.iso_class_poset().unwrap();
    // downset of the top is everything, with the same order
    let map: Vec<usize> = s.objects.iter().map(|&(x, _)| x).collect();
    assert!(classes.poset.is_isomorphism_onto(&p, &map));
}

#[test]
fn coslice_of_cyclic_group_is_contractible() {
    for n in 1..=6 {
        let c = FinCategory::cyclic_group(n);
        let s = coslice(&c, 0).unwrap();
        assert_eq!(s.category.object_count(), n);
        assert!(s.category.contractible_components().holds);
        assert_eq!(s.category.components().1.len(), 1);
    }
}

#[test]
fn equivalence_identity_and_subgroup() {
    let c = Arc::new(FinCategory::cyclic_group(4));
    let report = equivalence(&Functor::identity(c.clone())).unwrap();
    assert!(report.check.holds);
    assert_eq!(report.quasi_inverse, vec![(0, 0)]);

    // B(Z/2) -> B(Z/4), 1 ↦ 2: hom-sets of size 2 and 4
    let z2 = Arc::new(FinCategory::cyclic_group(2));
    let f = Functor::new(z2, c, vec![0], vec![0, 2]).unwrap();
    let report = equivalence(&f).unwrap();
    assert!(!report.check.holds);
    assert!(matches!(report.check.witness, Some(Witness::NotFull { .. })));
}

#[test]
fn equivalence_respects_caps() {
    let big = Arc::new(FinCategory::discrete(65));
    let err = equivalence(&Functor::identity(big)).unwrap_err();
    assert!(matches!(err, crate::Error::CapExceeded { .. }));
}

#[test]
fn equivalence_to_contractible_groupoid() {
    // The pair groupoid on 3 objects is equivalent to the terminal category.
    let pair = pair_groupoid(3);
    let t = Arc::new(FinCategory::terminal());
    let n = pair.morphism_count();
    let f = Functor::new(Arc::new(pair), t, vec![0; 3], vec![0; n]).unwrap();
    assert!(is_equivalence(&f).unwrap());
}

#[test]
fn functor_validation_rejects_broken_maps() {
    let z2 = Arc::new(FinCategory::cyclic_group(2));
    let z3 = Arc::new(FinCategory::cyclic_group(3));
    assert!(Functor::new(z2.clone(), z3.clone(), vec![0], vec![0, 1]).is_err());
    assert!(Functor::new(z2.clone(), z3, vec![0], vec![1, 0]).is_err());
    assert!(Functor::new(z2.clone(), z2, vec![0], vec![0]).is_err());
}

#[test]
fn iso_classes_of_groupoid_form_discrete_poset() {
    let c = FinCategory::discrete(3);
    let p = c.iso_class_poset().unwrap();
    assert_eq!(p.poset, FinPoset::discrete(3));
}

#[test]
fn non_inverse_two_cycle_is_not_a_poset() {
    let c = split_idempotent();
    assert!(matches!(c.iso_class_poset(), Err(crate::Error::NotAPoset(0, 1))));
}

#[test]
fn weakly_initial_and_terminal() {
    let d = FinCategory::discrete(2);
    assert!(!d.has_weakly_initial() && !d.has_weakly_terminal());
    let chain = FinPoset::chain(3).to_category();
    assert_eq!(chain.weakly_initial_object(), Some(0));
    assert_eq!(chain.weakly_terminal_object(), Some(2));
}

#[test]
fn joins() {
    assert!(FinPoset::chain(4).has_finite_nonempty_joins().holds);
    let check = FinPoset::discrete(2).has_finite_nonempty_joins();
    assert_eq!(check.witness, Some(Witness::ObjectPair { x: 0, y: 1 }));
    // two maximal upper bounds: no least one
    let p = FinPoset::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    assert!(!p.has_finite_nonempty_joins().holds);
}

#[test]
fn poset_relation_checks() {
    assert!(FinPoset::new(2, &[(0, 1), (1, 0)]).is_err());
    assert!(FinPoset::from_relation(2, &[(0, 0), (1, 1), (0, 1)]).is_ok());
    assert!(FinPoset::from_relation(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).is_err());
}

#[test]
fn subcategory_inclusion_is_fully_faithful() {
    let c = Arc::new(collapsing());
    let s = FullSubcategory::new(c.clone(), [0, 2]).unwrap();
    let inc = s.inclusion();
    assert_eq!(inc.source().object_count(), 2);
    assert!(fully_faithful(&inc).holds);
    assert!(FullSubcategory::new(c, [7]).is_err());
}

#[test]
fn json_round_trip_is_stable() {
    let c = collapsing();
    let json = CategoryJson::from(&c);
    let text = serde_json::to_string(&json).unwrap();
    let back: CategoryJson = serde_json::from_str(&text).unwrap();
    let c2 = back.to_category().unwrap();
    assert_eq!(c, c2);
    assert_eq!(serde_json::to_string(&CategoryJson::from(&c2)).unwrap(), text);
}

#[test]
fn dot_lists_nodes_and_edges() {
    let dot = dot::to_dot(&collapsing(), "c", None);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n0 -> n1 [label=\"×2\"]"));
    assert!(dot.contains("n1 -> n2;"));
}

pub(crate) fn pair_groupoid(n: usize) -> FinCategory {
    let morphisms: Vec<Morphism> = (0..n)
        .flat_map(|a| (0..n).map(move |b| mor(a, b)))
        .collect();
    FinCategory::from_fn(n, morphisms, (0..n).map(|a| a * n + a).collect(), |g, f| {
        (f / n) * n + (g % n)
    })
    .unwrap()
}

/// Random posets: pairs `a < b` with `a < b` as integers, closed.
fn arb_poset() -> impl Strategy<Value = FinPoset> {
    (1usize..7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs
                .into_iter()
                .filter(|(a, b)| a < b)
                .collect();
            FinPoset::new(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn slices_of_posets_are_valid_downsets(p in arb_poset()) {
        let c = p.to_category();
        for x in c.objects() {
            let s = slice(&c, x).unwrap();
            prop_assert_eq!(s.category.object_count(), c.morphisms_into(x).count());
            prop_assert!(validate_category(&s.category.table()).is_valid());
            let down = (0..p.len()).filter(|&y| p.leq(y, x)).count();
            prop_assert_eq!(s.category.object_count(), down);
            let cs = coslice(&c, x).unwrap();
            prop_assert!(validate_category(&cs.category.table()).is_valid());
        }
    }

    #[test]
    fn groupoid_slices_are_contractible(n in 1usize..5, k in 1usize..5) {
        // connected groupoid: pair groupoid × B(Z/k)
        let pair = pair_groupoid(n);
        let m = pair.morphism_count();
        let morphisms: Vec<Morphism> = (0..m * k)
            .map(|id| pair.morphism(id / k))
            .collect();
        let identities = (0..n).map(|x| pair.identity(x) * k).collect();
        let c = FinCategory::from_fn(n, morphisms, identities, |g, f| {
            pair.compose(g / k, f / k).unwrap() * k + (g % k + f % k) % k
        }).unwrap();
        prop_assert!(c.is_groupoid());
        for x in c.objects() {
            let s = slice(&c, x).unwrap();
            prop_assert!(s.category.contractible_components().holds);
            prop_assert_eq!(s.category.components().1.len(), 1);
        }
    }

    #[test]
    fn poset_category_round_trips_through_iso_classes(p in arb_poset()) {
        let c = p.to_category();
        let classes = c.iso_class_poset().unwrap();
        let identity: Vec<usize> = (0..p.len()).collect();
        prop_assert!(classes.poset.is_isomorphism_onto(&p, &identity));
    }
}
