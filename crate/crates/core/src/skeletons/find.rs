//! Complete search for skeletons.
//!
//! Given the images of a node and of its ancestors, the subtrees of its
//! children are constrained only through the distinctness of the
//! children's images, so the search picks a system of distinct images for
//! the children and then recurses into each child on its own. Siblings of
//! the same shape share their feasibility tests.

use std::collections::HashMap;

use super::{RootedTree, Skeleton};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cap on the number of subtree placements tried by one search.
pub const SKELETON_NODE_BUDGET: u64 = 5_000_000;

struct Finder<'a> {
    g: &'a Graph,
    tree: &'a RootedTree,
    shape: Vec<usize>,
    budget: u64,
    steps: u64,
}

fn shapes(tree: &RootedTree) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut shape = vec![0; tree.order()];
    for &v in tree.bfs().iter().rev() {
        let mut key: Vec<usize> = tree.children(v).iter().map(|&c| shape[c]).collect();
        key.sort_unstable();
        let next = ids.len();
        shape[v] = *ids.entry(key).or_insert(next);
    }
    shape
}

impl Finder<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::capability(
                "find_skeleton",
                format!("search exceeded {} placements", self.budget),
            ));
        }
        Ok(())
    }

    /// Images for the subtree below `node` placed at `x`, where `chain`
    /// lists the images of the strict ancestors of `node`.
    fn embed(&mut self, node: usize, x: usize, chain: &mut Vec<usize>, out: &mut Vec<(usize, usize)>) -> Result<bool> {
        self.tick()?;
        let kids = self.tree.children(node).to_vec();
        if kids.is_empty() {
            out.push((node, x));
            return Ok(true);
        }
        let g = self.g;
        let cands: Vec<usize> = g
            .neighbours(x)
            .filter(|&y| chain.iter().all(|&a| a != y && !g.has_edge(a, y)))
            .collect();
        if cands.len() < kids.len() {
            return Ok(false);
        }
        chain.push(x);
        let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
        let mut feasible = |f: &mut Self, kid: usize, y: usize, chain: &mut Vec<usize>| -> Result<bool> {
            let key = (f.shape[kid], y);
            if let Some(&ok) = memo.get(&key) {
                return Ok(ok);
            }
            let ok = f.embed(kid, y, chain, &mut Vec::new())?;
            memo.insert(key, ok);
            Ok(ok)
        };
        let same_shape = kids.iter().all(|&k| self.shape[k] == self.shape[kids[0]]);
        let mut chosen: Vec<usize> = Vec::with_capacity(kids.len());
        if same_shape {
            for &y in &cands {
                if chosen.len() == kids.len() {
                    break;
                }
                if feasible(self, kids[0], y, chain)? {
                    chosen.push(y);
                }
            }
        } else {
            let mut options: Vec<Vec<usize>> = Vec::with_capacity(kids.len());
            for &k in &kids {
                let mut opts = Vec::new();
                for &y in &cands {
                    if feasible(self, k, y, chain)? {
                        opts.push(y);
                    }
                }
                options.push(opts);
            }
            chosen = lex_least_sdr(&options).unwrap_or_default();
        }
        if chosen.len() < kids.len() {
            chain.pop();
            return Ok(false);
        }
        out.push((node, x));
        for (&k, &y) in kids.iter().zip(&chosen) {
            let ok = self.embed(k, y, chain, out)?;
            debug_assert!(ok);
        }
        chain.pop();
        Ok(true)
    }
}

/// Lexicographically least system of distinct representatives.
fn lex_least_sdr(options: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn has_matching(options: &[Vec<usize>], from: usize, used: &[usize]) -> bool {
        let rest = &options[from..];
        let mut owner: HashMap<usize, usize> = HashMap::new();
        fn augment(
            i: usize,
            rest: &[Vec<usize>],
            used: &[usize],
            owner: &mut HashMap<usize, usize>,
            seen: &mut Vec<usize>,
        ) -> bool {
            for &y in &rest[i] {
                if used.contains(&y) || seen.contains(&y) {
                    continue;
                }
                seen.push(y);
                let free = match owner.get(&y) {
                    None => true,
                    Some(&j) => augment(j, rest, used, owner, seen),
                };
                if free {
                    owner.insert(y, i);
                    return true;
                }
            }
            false
        }
        (0..rest.len()).all(|i| augment(i, rest, used, &mut owner, &mut Vec::new()))
    }
    if !has_matching(options, 0, &[]) {
        return None;
    }
    let mut chosen = Vec::with_capacity(options.len());
    for i in 0..options.len() {
        let pick = options[i].iter().copied().find(|y| {
            if chosen.contains(y) {
                return false;
            }
            chosen.push(*y);
            let ok = has_matching(options, i + 1, &chosen);
            chosen.pop();
            ok
        })?;
        chosen.push(pick);
    }
    Some(chosen)
}

/// A skeleton from `tree` to `g`, rooted at `root` if given. The search is
/// complete: `None` means there is none. When every parent is numbered
/// below its children, the result is the lexicographically least map.
pub fn find_skeleton_from(g: &Graph, tree: &RootedTree, root: Option<usize>, budget: u64) -> Result<Option<Skeleton>> {
    let roots: Vec<usize> = match root {
        Some(r) => {
            g.check_vertex(r)?;
            vec![r]
        }
        None => (0..g.n()).collect(),
    };
    let mut finder = Finder {
        g,
        tree,
        shape: shapes(tree),
        budget,
        steps: 0,
    };
    for r in roots {
        let mut out = Vec::with_capacity(tree.order());
        if finder.embed(tree.root(), r, &mut Vec::new(), &mut out)? {
            let mut map = vec![0; tree.order()];
            for (node, image) in out {
                map[node] = image;
            }
            return Ok(Some(Skeleton {
                tree: tree.clone(),
                map,
            }));
        }
    }
    Ok(None)
}

/// A `(d, h)`-skeleton with exactly `d` children at every internal node.
/// Any `(d, h)`-skeleton contains one, so this decides existence.
pub fn find_skeleton(g: &Graph, d: usize, h: usize, root: Option<usize>, budget: u64) -> Result<Option<Skeleton>> {
    if d == 0 {
        return Err(Error::parameter("d", "need d >= 1"));
    }
    if h > 0 && d > g.max_degree() {
        if let Some(r) = root {
            g.check_vertex(r)?;
        }
        return Ok(None);
    }
    let tree = RootedTree::wide(d, h)?;
    find_skeleton_from(g, &tree, root, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::scalar::rat;
    use crate::skeletons::validate_skeleton;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn examples() {
        for h in 1..5 {
            let sk = find_skeleton(&gen(&format!("Path({})", h + 1)), 1, h, None, SKELETON_NODE_BUDGET)
                .unwrap()
                .unwrap();
            assert_eq!(sk.root_image(), 0);
            assert_eq!(
                validate_skeleton(&gen(&format!("Path({})", h + 1)), &sk, &rat(1, 1), h),
                Ok(())
            );
        }
        let c5 = gen("Cycle(5)");
        let sk = find_skeleton(&c5, 2, 1, None, SKELETON_NODE_BUDGET).unwrap().unwrap();
        assert_eq!(sk.map, vec![0, 1, 4]);
        assert!(find_skeleton(&c5, 2, 2, None, SKELETON_NODE_BUDGET).unwrap().is_none());
        // P6 is an induced path of C7
        assert!(find_skeleton(&gen("Cycle(7)"), 1, 5, None, SKELETON_NODE_BUDGET)
            .unwrap()
            .is_some());
    }

    #[test]
    fn sdr_prefers_small_images() {
        assert_eq!(lex_least_sdr(&[vec![1, 2], vec![1]]), Some(vec![2, 1]));
        assert_eq!(lex_least_sdr(&[vec![1], vec![1]]), None);
        assert_eq!(lex_least_sdr(&[vec![3, 4], vec![1, 3]]), Some(vec![3, 1]));
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen("Complete(8)");
        let tree = RootedTree::wide(3, 3).unwrap();
        assert!(matches!(
            find_skeleton_from(&g, &tree, None, 10),
            Err(Error::Capability { .. })
        ));
    }
}
