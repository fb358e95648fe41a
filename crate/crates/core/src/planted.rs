//! Seeded hosts with a planted complete tree plus sparse random noise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::skeletons::RootedTree;

#[derive(Clone, Debug, Serialize)]
pub struct Planted {
    #[serde(skip)]
    pub graph: Graph,
    /// The complete tree that was planted, numbered in BFS order.
    pub tree: RootedTree,
    /// Host vertex of each tree node. The root always gets the largest label.
    pub map: Vec<usize>,
}

/// A complete tree with `branching[i]` children at every node of height
/// `i`, noise edges between other pairs with probability `noise_num /
/// noise_den`, and a random relabelling.
pub fn planted_tree(branching: &[usize], noise_num: u32, noise_den: u32, seed: u64) -> Result<Planted> {
    if branching.contains(&0) {
        return Err(Error::parameter("branching", "every level needs at least one child"));
    }
    if noise_den == 0 || noise_num > noise_den {
        return Err(Error::parameter("noise", "need a probability in [0, 1]"));
    }
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for &b in branching {
        let mut next = Vec::with_capacity(level.len() * b);
        for &p in &level {
            for _ in 0..b {
                next.push(parent.len());
                parent.push(Some(p));
            }
        }
        level = next;
    }
    let tree = RootedTree::from_parents(parent)?;
    let n = tree.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n - 1).collect();
    labels.shuffle(&mut rng);
    let mut map = vec![n - 1];
    map.extend(labels);
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(map[v], map[tree.parent(v).unwrap()]);
    }
    if noise_num > 0 {
        for i in 0..n {
            for j in i + 1..n {
                if !g.has_edge(i, j) && rng.gen_ratio(noise_num, noise_den) {
                    g.add_edge(i, j);
                }
            }
        }
    }
    Ok(Planted { graph: g, tree, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_star_is_a_star_without_noise() {
        let p = planted_tree(&[5], 0, 1, 3).unwrap();
        assert_eq!(p.graph.n(), 6);
        assert_eq!(p.graph.edge_count(), 5);
        assert_eq!(p.graph.degree(5), 5);
        assert_eq!(p.map[0], 5);
    }

    #[test]
    fn same_seed_same_graph() {
        let a = planted_tree(&[3, 4], 1, 10, 7).unwrap();
        let b = planted_tree(&[3, 4], 1, 10, 7).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.map, b.map);
        for v in 1..a.tree.order() {
            assert!(a.graph.has_edge(a.map[v], a.map[a.tree.parent(v).unwrap()]));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(planted_tree(&[2, 0], 0, 1, 0).is_err());
        assert!(planted_tree(&[2], 2, 1, 0).is_err());
    }
}
