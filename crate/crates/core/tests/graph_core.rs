use chilab::graph::{canonical_code, enumerate_graphs, graph_count, parse_graph6, write_graph6};
use chilab::invariants::{clique_number, stability_number};
use chilab::FamilySpec;
use proptest::prelude::*;

mod common;
use common::arb_graph;

#[test]
fn class_counts_through_eight() {
    for n in 0..=8 {
        let graphs = enumerate_graphs(n, true).unwrap();
        assert_eq!(graphs.len() as u64, graph_count(n).unwrap(), "n = {n}");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a: Vec<String> = enumerate_graphs(6, true).unwrap().iter().map(write_graph6).collect();
    let b: Vec<String> = enumerate_graphs(6, true).unwrap().iter().map(write_graph6).collect();
    assert_eq!(a, b);
}

#[test]
fn labelled_enumeration_collapses_to_classes() {
    let mut codes: Vec<u64> = enumerate_graphs(5, false)
        .unwrap()
        .iter()
        .map(|g| canonical_code(g).unwrap())
        .collect();
    assert_eq!(codes.len(), 1024);
    codes.sort_unstable();
    codes.dedup();
    assert_eq!(codes.len() as u64, graph_count(5).unwrap());
}

#[test]
fn graph6_round_trip_on_small_corpus() {
    for n in 0..=7 {
        for g in enumerate_graphs(n, true).unwrap() {
            let text = write_graph6(&g);
            assert_eq!(parse_graph6(&text).unwrap(), g);
            assert_eq!(write_graph6(&parse_graph6(&text).unwrap()), text);
        }
    }
}

#[test]
fn blowup_of_c5_has_clique_and_stability_four() {
    let g = "Blowup(Cycle(5),2)".parse::<FamilySpec>().unwrap().generate().unwrap();
    assert_eq!(g.n(), 25);
    assert_eq!(clique_number(&g).unwrap(), 4);
    assert_eq!(stability_number(&g).unwrap(), 4);
}

fn arb_spec() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..9).prop_map(FamilySpec::Path),
        (3usize..9).prop_map(FamilySpec::Cycle),
        (2usize..6, 1usize..5).prop_map(|(k, l)| FamilySpec::Broom(k, l)),
        (1usize..4, 1usize..4).prop_map(|(m, s)| FamilySpec::CocktailMulti(m, s)),
        (1usize..5, 1usize..5).prop_map(|(s, t)| FamilySpec::CompleteBipartite(s, t)),
        (0usize..6).prop_map(FamilySpec::Complete),
        (1usize..12, 0i64..=4, any::<u64>()).prop_map(|(n, p, seed)| FamilySpec::random(n, p, 4, seed)),
        (1usize..3).prop_map(|k| FamilySpec::Blowup(Box::new(FamilySpec::Cycle(5)), k)),
    ]
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn relabelling_preserves_canonical_code(g in arb_graph(8), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.permuted(&perm)).unwrap());
    }

    #[test]
    fn family_orders_match_closed_form(spec in arb_spec()) {
        let g = spec.generate().unwrap();
        prop_assert_eq!(g.n(), spec.order());
        let twice = FamilySpec::Complement(Box::new(FamilySpec::Complement(Box::new(spec.clone()))));
        prop_assert_eq!(twice.generate().unwrap(), g);
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
    }
}
