use chilab::detectors::{find_induced, find_induced_graph, is_even_hole_free, is_free, PatternSpec};
use chilab::graph::enumerate_graphs;
use chilab::Graph;
use proptest::prelude::*;
use rayon::prelude::*;

mod common;
use common::{arb_graph, brute_contains, induces};

fn patterns() -> Vec<PatternSpec> {
    vec![
        PatternSpec::Path(4),
        PatternSpec::Path(5),
        PatternSpec::Cycle(4),
        PatternSpec::Cycle(5),
        PatternSpec::Broom(3, 2),
        PatternSpec::CompleteBipartite(1, 3),
        PatternSpec::CompleteBipartite(2, 2),
        PatternSpec::CocktailMulti(1, 2),
        PatternSpec::CocktailMulti(2, 2),
    ]
}

#[test]
fn find_induced_matches_subset_enumeration_through_seven() {
    let hosts: Vec<Graph> = (1..=7).flat_map(|n| enumerate_graphs(n, true).unwrap()).collect();
    let pats: Vec<(PatternSpec, Graph)> = patterns()
        .into_iter()
        .map(|p| {
            let g = p.graph().unwrap();
            (p, g)
        })
        .collect();
    let bad: Vec<String> = hosts
        .par_iter()
        .flat_map_iter(|h| {
            pats.iter().filter_map(move |(p, pg)| {
                let found = find_induced(h, p).unwrap();
                if let Some(map) = &found {
                    if !induces(h, pg, map) {
                        return Some(format!("{p:?}: bad embedding {map:?}"));
                    }
                }
                (found.is_some() != brute_contains(h, pg))
                    .then(|| format!("{p:?} disagrees on a host of order {}", h.n()))
            })
        })
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn even_hole_freeness_through_seven() {
    let c4 = PatternSpec::Cycle(4).graph().unwrap();
    let c6 = PatternSpec::Cycle(6).graph().unwrap();
    for n in 1..=7 {
        for g in enumerate_graphs(n, true).unwrap() {
            let brute = !brute_contains(&g, &c4) && !brute_contains(&g, &c6);
            assert_eq!(is_even_hole_free(&g).unwrap(), brute);
        }
    }
}

#[test]
fn arbitrary_patterns_agree_with_named_ones() {
    let petersen = chilab::FamilySpec::Petersen.generate().unwrap();
    for p in patterns() {
        let named = find_induced(&petersen, &p).unwrap().is_some();
        let arbitrary = find_induced_graph(&petersen, &p.graph().unwrap()).unwrap().is_some();
        assert_eq!(named, arbitrary, "{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embeddings_are_induced(g in arb_graph(11), k in 2usize..7) {
        let p = PatternSpec::Path(k);
        if let Some(map) = find_induced(&g, &p).unwrap() {
            prop_assert!(induces(&g, &p.graph().unwrap(), &map));
        }
    }

    #[test]
    fn path_freeness_is_monotone(g in arb_graph(11), k in 2usize..8) {
        // P_k-free implies P_(k+1)-free
        if is_free(&g, &[PatternSpec::Path(k)]).unwrap() {
            prop_assert!(is_free(&g, &[PatternSpec::Path(k + 1)]).unwrap());
        }
    }

    #[test]
    fn freeness_survives_induced_subgraphs(g in arb_graph(10), drop in 0usize..10) {
        let keep: Vec<usize> = (0..g.n()).filter(|&v| v != drop).collect();
        let sub = g.induced(&keep).unwrap();
        for p in patterns() {
            if is_free(&g, std::slice::from_ref(&p)).unwrap() {
                prop_assert!(is_free(&sub, &[p]).unwrap());
            }
        }
    }
}
