mod common;

use chilab::extraction::{revalidate, Certificate};
use chilab::graph::FamilySpec;
use chilab::planted::planted_tree;
use chilab::scalar::{binomial, rat};
use chilab::skeletons::{
    eps_subtree, extract_induced_tree, find_skeleton, find_skeleton_from, is_eps_good, max_avoiding_subtree, phi,
    phi_bound, phi_closed_form, sparse_shrink, sparse_tree, validate_skeleton, RootedTree, Skeleton, SkeletonOptions,
    SKELETON_NODE_BUDGET,
};
use chilab::{Error, Graph, Rational, Scalar};
use common::{parent_arrays, rooted_subtrees, skeleton_disagreements};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gen(s: &str) -> Graph {
    s.parse::<FamilySpec>().unwrap().generate().unwrap()
}

#[test]
fn find_matches_brute_force_through_six_vertices() {
    let (checked, bad) = skeleton_disagreements(6, 5);
    assert!(checked > 0);
    assert!(bad.is_empty(), "{} disagreements, first: {}", bad.len(), bad[0]);
}

#[test]
fn phi_identities() {
    for c in [rat(1, 8), rat(1, 4), rat(2, 5)] {
        assert_eq!(phi(&c, 0).unwrap(), Rational::from_int(0));
        for h in 1..=8usize {
            let value = phi(&c, h).unwrap();
            assert_eq!(value, phi_closed_form(&c, h).unwrap(), "c = {c}, h = {h}");
            let cap =
                c.clone() * (Rational::from_int(4) / c.clone()).powi(binomial(h as u64 + 1, 2).try_into().unwrap());
            assert_eq!(phi_bound(&c, h).unwrap(), cap);
            assert!(value <= cap, "c = {c}, h = {h}");
        }
    }
    assert_eq!(phi(&rat(1, 4), 2).unwrap(), Rational::from_int(768));
}

/// Union of all `eps`-subtrees inside `allowed`, by listing every rooted
/// subtree.
fn best_eps_subtree(parent: &[Option<usize>], allowed: &[bool], eps: &Rational) -> Option<Vec<bool>> {
    let n = parent.len();
    let kids: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&c| parent[c] == Some(v)).collect())
        .collect();
    let mut best: Option<Vec<bool>> = None;
    for keep in rooted_subtrees(parent) {
        let ok = (0..n).all(|v| {
            !keep[v]
                || (allowed[v]
                    && (kids[v].is_empty()
                        || Rational::from_int(kids[v].iter().filter(|&&c| keep[c]).count() as i64)
                            >= eps.clone() * Rational::from_int(kids[v].len() as i64)))
        });
        if ok {
            best = Some(match best {
                None => keep,
                Some(b) => b.iter().zip(&keep).map(|(x, y)| *x || *y).collect(),
            });
        }
    }
    best
}

fn random_skeletons(count: usize, seed: u64) -> Vec<(Graph, Vec<Option<usize>>, Skeleton)> {
    let g = FamilySpec::random(20, 1, 4, seed).generate().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count {
        tries += 1;
        let n = rng.gen_range(1..=10);
        let parent: Vec<Option<usize>> = (0..n).map(|i| (i > 0).then(|| rng.gen_range(0..i))).collect();
        let tree = RootedTree::from_parents(parent.clone()).unwrap();
        let root = rng.gen_range(0..g.n());
        if let Some(sk) = find_skeleton_from(&g, &tree, Some(root), SKELETON_NODE_BUDGET).unwrap() {
            out.push((g.clone(), parent, sk));
        }
    }
    out
}

#[test]
fn eps_subtrees_match_exhaustive_search() {
    let mut compared = 0;
    for seed in 0..6 {
        for (g, parent, sk) in random_skeletons(10, seed) {
            for v in 0..g.n() {
                if sk.map.contains(&v) {
                    continue;
                }
                let allowed: Vec<bool> = sk.map.iter().map(|&x| x != v && !g.has_edge(x, v)).collect();
                for eps in [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 1)] {
                    let want = best_eps_subtree(&parent, &allowed, &eps);
                    assert_eq!(eps_subtree(&sk, &allowed, &eps), want);
                    assert_eq!(is_eps_good(&g, &sk, v, &eps), want);
                    compared += 1;
                }
                // largest avoiding subtree is the union of all avoiding subtrees
                let mut forbidden = vec![false; g.n()];
                forbidden[v] = true;
                for u in g.neighbours(v) {
                    forbidden[u] = true;
                }
                let got = max_avoiding_subtree(&sk, &forbidden, false).map(|s| s.keep);
                assert_eq!(got, best_eps_subtree(&parent, &allowed, &Rational::from_int(0)));
            }
        }
    }
    assert!(compared > 1000, "only {compared} comparisons");
}

#[test]
fn rooted_subtree_counts() {
    // a path has one rooted subtree per length; a star with k leaves has 2^k
    assert_eq!(rooted_subtrees(&[None, Some(0), Some(1), Some(2)]).len(), 4);
    assert_eq!(rooted_subtrees(&[None, Some(0), Some(0), Some(0)]).len(), 8);
    assert_eq!(parent_arrays(5).len(), 24);
}

#[test]
fn sparse_tree_boundaries() {
    let single = Graph::new(1);
    let run = sparse_tree(&gen("Cycle(6)"), &single, &rat(1, 4), 2, &SkeletonOptions::default()).unwrap();
    assert_eq!(run.radius, 0);
    revalidate(&gen("Cycle(6)"), &run.certificate, 0, 0).unwrap();
    let err = sparse_tree(
        &gen("Petersen"),
        &gen("Path(2)"),
        &rat(1, 8),
        1,
        &SkeletonOptions::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::HypothesisUnmet { .. }));
    let with_width = SkeletonOptions {
        width: Some(rat(2, 1)),
        ..SkeletonOptions::default()
    };
    assert!(matches!(
        sparse_tree(&gen("Petersen"), &gen("Path(2)"), &rat(1, 8), 1, &with_width),
        Err(Error::Parameter { .. })
    ));
}

#[test]
fn single_vertex_target_maps_to_the_root() {
    let g = gen("Cycle(7)");
    let sk = find_skeleton(&g, 2, 1, Some(3), SKELETON_NODE_BUDGET).unwrap().unwrap();
    let cert = extract_induced_tree(
        &g,
        &sk,
        &RootedTree::single(),
        &rat(1, 4),
        1,
        &SkeletonOptions::forced(),
    )
    .unwrap();
    assert!(matches!(cert, Certificate::TreeEmbedding { ref map, .. } if map == &vec![3]));
}

#[test]
fn cherry_from_planted_star() {
    let host = planted_tree(&[24], 1, 50, 9).unwrap();
    let sk = find_skeleton(&host.graph, 24, 1, Some(host.map[0]), SKELETON_NODE_BUDGET)
        .unwrap()
        .unwrap();
    let cherry = RootedTree::from_parents(vec![None, Some(0), Some(0)]).unwrap();
    let cert = extract_induced_tree(&host.graph, &sk, &cherry, &rat(49, 100), 1, &SkeletonOptions::forced()).unwrap();
    revalidate(&host.graph, &cert, 0, 0).unwrap();
}

#[test]
fn faithful_extraction_demands_a_wide_skeleton() {
    let g = gen("Cycle(7)");
    let sk = find_skeleton(&g, 2, 1, None, SKELETON_NODE_BUDGET).unwrap().unwrap();
    let cherry = RootedTree::from_parents(vec![None, Some(0), Some(0)]).unwrap();
    let err = extract_induced_tree(&g, &sk, &cherry, &rat(1, 4), 1, &SkeletonOptions::default()).unwrap_err();
    assert!(matches!(err, Error::HypothesisUnmet { .. }));
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0i64..=4, any::<u64>()).prop_map(|(n, p, seed)| FamilySpec::random(n, p, 4, seed).generate().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_skeletons_validate(g in arb_graph(12), d in 1usize..4, h in 0usize..4) {
        if let Some(sk) = find_skeleton(&g, d, h, None, SKELETON_NODE_BUDGET).unwrap() {
            prop_assert_eq!(validate_skeleton(&g, &sk, &Rational::from_int(d as i64), h), Ok(()));
        }
    }

    #[test]
    fn shrink_witnesses_avoid_their_vertex(seed in any::<u64>(), fan in 3usize..8) {
        let host = planted_tree(&[fan], 1, 6, seed).unwrap();
        let g = &host.graph;
        let root = host.map[0];
        let sk = find_skeleton(g, fan, 1, Some(root), SKELETON_NODE_BUDGET).unwrap().unwrap();
        let x: Vec<usize> = (0..g.n()).filter(|&v| !sk.map.contains(&v) && !g.has_edge(v, root)).collect();
        let out = sparse_shrink(g, &sk, &x, &rat(1, 4), 1, true).unwrap();
        for (&y, w) in out.y.iter().zip(&out.witnesses) {
            prop_assert!(x.contains(&y));
            for (node, &kept) in w.iter().enumerate() {
                if kept {
                    let image = sk.map[node];
                    prop_assert!(image != y && !g.has_edge(image, y));
                }
            }
        }
    }

    #[test]
    fn forced_tree_runs_are_sound(seed in any::<u64>(), k in 2usize..5) {
        let host = planted_tree(&[24], 1, 40, seed).unwrap();
        let opts = SkeletonOptions { width: Some(rat(16, 1)), ..SkeletonOptions::forced() };
        let target = gen(&format!("Star({k})"));
        match sparse_tree(&host.graph, &target, &rat(49, 100), 1, &opts) {
            Ok(run) => {
                prop_assert_eq!(validate_skeleton(&host.graph, &run.skeleton, &rat(16, 1), 1), Ok(()));
                revalidate(&host.graph, &run.certificate, 0, 0).unwrap();
            }
            Err(e) => prop_assert!(e.to_string().contains("forced run stopped"), "{}", e),
        }
    }
}
