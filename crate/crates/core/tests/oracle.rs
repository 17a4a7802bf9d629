//! The capped expansions against the naive `2^|E|` reference.

mod common;

use std::collections::BTreeMap;

use atcert::laurent::FactorMode;
use atcert::oracle::{
    adversarial_choosability, capped_expand_p, capped_expand_z, coefficient, coefficient_in, full_expansion, laurent_z,
    parse_monomial, solve_list_coloring, AdversaryOptions, CapVariant, CoefficientLedger, DegreeCaps, EdgeOrder,
    ExpandOptions, Star,
};
use atcert::planar::{Edge, Graph, RoleAssignment};
use atcert::{ExponentVector, Integer, Vertex, Zp};
use common::{as_near, graph, near, SMALL};
use proptest::prelude::*;

fn random_graph() -> impl Strategy<Value = Graph> {
    (3usize..=7).prop_flat_map(|n| {
        prop::collection::btree_set((0..n, 0..n), 1..=12).prop_map(move |pairs| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String)> =
                pairs.into_iter().filter(|(u, v)| u < v).map(|(u, v)| (names[u].clone(), names[v].clone())).collect();
            Graph::from_names(&names, &edges).unwrap()
        })
    })
}

fn random_caps(g: &Graph, seed: &[u32]) -> DegreeCaps {
    DegreeCaps::new(CapVariant::Custom, g.vertices().zip(seed.iter().cycle()).map(|(v, &c)| (v, c)))
}

fn reference(g: &Graph, caps: &DegreeCaps) -> BTreeMap<ExponentVector, Integer> {
    let edges: Vec<Edge> = g.edges().collect();
    full_expansion::<Integer>(&edges, FactorMode::Plain)
        .unwrap()
        .terms()
        .filter(|(m, _)| caps.admits(m))
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn capped_expansion_is_the_filtered_full_expansion(g in random_graph(), seed in prop::collection::vec(0u32..=4, 1..7)) {
        let caps = random_caps(&g, &seed);
        let p = capped_expand_p::<Integer>(&g, &caps, &[], &ExpandOptions::default()).unwrap();
        prop_assert_eq!(p.entries(), &reference(&g, &caps));
        let z = capped_expand_z::<Integer>(&g, &caps, &[], &ExpandOptions::default()).unwrap();
        let dual = p.dual().unwrap();
        prop_assert_eq!(dual.entries(), z.entries());
    }

    #[test]
    fn edge_order_and_workers_do_not_matter(g in random_graph(), seed in prop::collection::vec(0u32..=4, 1..7)) {
        let caps = random_caps(&g, &seed);
        let base = capped_expand_p::<Integer>(&g, &caps, &[], &ExpandOptions::default()).unwrap();
        for order in [EdgeOrder::AsGiven, EdgeOrder::Reversed] {
            for workers in [1, 3] {
                let opts = ExpandOptions::default().with_order(order).with_workers(workers);
                let other = capped_expand_p::<Integer>(&g, &caps, &[], &opts).unwrap();
                prop_assert_eq!(other.entries(), base.entries());
                let z = capped_expand_z::<Integer>(&g, &caps, &[], &opts).unwrap();
                let dual = base.dual().unwrap();
                prop_assert_eq!(z.entries(), dual.entries());
            }
        }
    }

    #[test]
    fn point_queries_match_the_reference(g in random_graph(), seed in prop::collection::vec(0u32..=3, 1..7)) {
        let m = ExponentVector::from_pairs(g.vertices().zip(seed.iter().cycle()).map(|(v, &e)| (v, e as i32)));
        let edges: Vec<Edge> = g.edges().collect();
        let full = full_expansion::<Integer>(&edges, FactorMode::Plain).unwrap();
        let opts = ExpandOptions::default();
        prop_assert_eq!(coefficient(&g, &[], &m, &opts).unwrap(), full.coefficient(&m));
        let reduced = coefficient_in::<Zp<5>>(&g, &[], &m, &opts).unwrap();
        prop_assert_eq!(reduced.value() as u64, full.coefficient(&m).rem_euclid(5));
    }
}

#[test]
fn wide_caps_force_the_parallel_path() {
    // Enough live terms to cross the chunking threshold.
    let g = graph("stacked:3");
    let caps = DegreeCaps::uniform(&g, 3, CapVariant::Custom);
    let nt = near("stacked:3");
    let e = [nt.distinguished_edge()];
    let one = capped_expand_p::<Integer>(&g, &caps, &e, &ExpandOptions::default()).unwrap();
    let four = capped_expand_p::<Integer>(&g, &caps, &e, &ExpandOptions::default().with_workers(4)).unwrap();
    assert!(one.len() > 4096, "{} terms", one.len());
    assert_eq!(one, four);
}

#[test]
fn budget_is_reported_as_such() {
    let g = graph("octahedron");
    let caps = DegreeCaps::uniform(&g, 4, CapVariant::Custom);
    let err = capped_expand_p::<Integer>(&g, &caps, &[], &ExpandOptions::default().with_max_terms(3)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn spec_ledgers() {
    let opts = ExpandOptions::default();
    let t = near("triangle");
    let e = [t.distinguished_edge()];
    let caps = DegreeCaps::theorem1(&t);
    let p = capped_expand_p::<Integer>(t.graph(), &caps, &e, &opts).unwrap();
    assert_eq!(p.entries().len(), 1);
    assert_eq!(p.coefficient(&parse_monomial(t.graph(), "c^2").unwrap()), Integer::from(1));
    let z = capped_expand_z::<Integer>(t.graph(), &caps, &e, &opts).unwrap();
    assert_eq!(z.entries().len(), 1);
    assert_eq!(z.coefficient(&ExponentVector::zero()), Integer::from(1));

    let k = near("k4");
    let e = [k.distinguished_edge()];
    let p = capped_expand_p::<Integer>(k.graph(), &DegreeCaps::theorem1(&k), &e, &opts).unwrap();
    assert_eq!(p.to_text().lines().last().unwrap(), "c^2 d^3 -1");
}

#[test]
fn ledgers_round_trip_byte_identically() {
    for spec in SMALL {
        let g = graph(spec);
        let caps = match as_near(spec) {
            Some(nt) => DegreeCaps::theorem2(&nt, &RoleAssignment::empty(), Star::Triple),
            None => DegreeCaps::theorem4(&g, &RoleAssignment::empty(), Star::Triple),
        };
        let opts = ExpandOptions::default();
        for ledger in [
            capped_expand_p::<Integer>(&g, &caps, &[], &opts).unwrap(),
            capped_expand_z::<Integer>(&g, &caps, &[], &opts).unwrap(),
            laurent_z::<Integer>(&g, &caps, &[], &opts).unwrap(),
        ] {
            let text = ledger.to_text();
            let back = CoefficientLedger::<Integer>::from_text(&text, &g).unwrap();
            assert_eq!(back.to_text(), text, "{spec}");
        }
    }
}

#[test]
fn list_colouring_of_k4() {
    let g = graph("k4");
    let same: BTreeMap<Vertex, _> = g.vertices().map(|v| (v, [1, 2, 3].into())).collect();
    assert!(solve_list_coloring(&g, &same).is_none());
    let wider: BTreeMap<Vertex, _> = g.vertices().map(|v| (v, [1, 2, 3, 4].into())).collect();
    let colouring = solve_list_coloring(&g, &wider).unwrap();
    for e in g.edges() {
        assert_ne!(colouring[&e.lo()], colouring[&e.hi()]);
    }

    let sizes = g.vertices().map(|v| (v, 3)).collect();
    let verdict = adversarial_choosability(&g, &sizes, &AdversaryOptions::new(3)).unwrap();
    assert!(!verdict.colorable_for_all);
    assert!(verdict.failing.unwrap().values().all(|l| l.iter().all(|&c| (1..=3).contains(&c))));
}
