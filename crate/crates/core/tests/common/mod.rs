//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use chilab::Graph;

/// Every parent array on `n` nodes with `parent[i] < i` for `i > 0`.
pub fn parent_arrays(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None]];
    for i in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..i).map(move |q| {
                    let mut next = p.clone();
                    next.push(Some(q));
                    next
                })
            })
            .collect();
    }
    out
}

fn ancestors(parent: &[Option<usize>], v: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = parent[v];
    while let Some(p) = cur {
        out.push(p);
        cur = parent[p];
    }
    out
}

/// Checks the skeleton conditions that involve node `i` and nodes below
/// it in index order.
fn consistent(g: &Graph, parent: &[Option<usize>], map: &[usize], i: usize) -> bool {
    let anc = ancestors(parent, i);
    for (dist, &a) in anc.iter().enumerate() {
        let adjacent = g.has_edge(map[a], map[i]);
        if map[a] == map[i] || adjacent != (dist == 0) {
            return false;
        }
    }
    // neighbours of each tree node get distinct images
    for j in 0..i {
        let siblings = parent[j].is_some() && parent[j] == parent[i];
        let parent_and_child = parent[i] == Some(j) || parent[j] == Some(i);
        let grandparent = parent[i].and_then(|p| parent[p]) == Some(j);
        if siblings && map[j] == map[i] {
            return false;
        }
        if parent_and_child && map[j] == map[i] {
            return false;
        }
        if grandparent && map[j] == map[i] {
            return false;
        }
    }
    true
}

/// Lexicographically least skeleton map, by plain backtracking over all
/// vertex assignments in node order.
pub fn brute_skeleton(g: &Graph, parent: &[Option<usize>], root: Option<usize>) -> Option<Vec<usize>> {
    fn go(g: &Graph, parent: &[Option<usize>], map: &mut Vec<usize>, root: Option<usize>) -> bool {
        let i = map.len();
        if i == parent.len() {
            return true;
        }
        for x in 0..g.n() {
            if i == 0 && root.is_some_and(|r| r != x) {
                continue;
            }
            map.push(x);
            if consistent(g, parent, map, i) && go(g, parent, map, root) {
                return true;
            }
            map.pop();
        }
        false
    }
    let mut map = Vec::with_capacity(parent.len());
    go(g, parent, &mut map, root).then_some(map)
}

/// All rooted subtrees (closed under parents, containing the root) of a
/// tree given by parent links with `parent[i] < i`.
pub fn rooted_subtrees(parent: &[Option<usize>]) -> Vec<Vec<bool>> {
    let n = parent.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if (1..n).all(|i| !keep[i] || keep[parent[i].unwrap()]) {
            out.push(keep);
        }
    }
    out
}

/// Hosts on at most `max_n` vertices against rooted trees on at most
/// `max_tree` nodes: returns (pairs checked, disagreements) between
/// `find_skeleton_from` and [`brute_skeleton`], comparing the maps.
pub fn skeleton_disagreements(max_n: usize, max_tree: usize) -> (usize, Vec<String>) {
    use chilab::graph::{enumerate_graphs, write_graph6};
    use chilab::skeletons::{find_skeleton_from, RootedTree, SKELETON_NODE_BUDGET};
    use rayon::prelude::*;

    let trees: Vec<Vec<Option<usize>>> = (1..=max_tree).flat_map(parent_arrays).collect();
    let hosts: Vec<Graph> = (1..=max_n).flat_map(|n| enumerate_graphs(n, true).unwrap()).collect();
    let results: Vec<Vec<String>> = hosts
        .par_iter()
        .map(|g| {
            let mut bad = Vec::new();
            for parent in &trees {
                let tree = RootedTree::from_parents(parent.clone()).unwrap();
                let fast = find_skeleton_from(g, &tree, None, SKELETON_NODE_BUDGET)
                    .unwrap()
                    .map(|sk| sk.map);
                let slow = brute_skeleton(g, parent, None);
                if fast != slow {
                    bad.push(format!("{} {:?}: {:?} vs {:?}", write_graph6(g), parent, fast, slow));
                }
            }
            bad
        })
        .collect();
    (hosts.len() * trees.len(), results.into_iter().flatten().collect())
}

/// Random labelled graphs on at most `max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=i).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_stable(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

pub fn brute_omega(g: &Graph) -> usize {
    (0..=g.n())
        .rev()
        .find(|&k| subsets(g.n(), k).iter().any(|s| is_clique(g, s)))
        .unwrap()
}

pub fn brute_alpha(g: &Graph) -> usize {
    (0..=g.n())
        .rev()
        .find(|&k| subsets(g.n(), k).iter().any(|s| is_stable(g, s)))
        .unwrap()
}

/// Least `k` with a proper `k`-colouring, by plain backtracking.
pub fn brute_chi(g: &Graph) -> usize {
    fn colourable(g: &Graph, k: usize, colours: &mut Vec<usize>) -> bool {
        let v = colours.len();
        if v == g.n() {
            return true;
        }
        // symmetry: vertex v uses at most one colour beyond those already used
        let used = colours.iter().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !g.has_edge(u, v) || colours[u] != c) {
                colours.push(c);
                if colourable(g, k, colours) {
                    return true;
                }
                colours.pop();
            }
        }
        false
    }
    (0..=g.n()).find(|&k| colourable(g, k, &mut Vec::new())).unwrap()
}

/// Whether `G - removed` is connected (vacuously true when empty).
pub fn connected_without(g: &Graph, removed: &[usize]) -> bool {
    let alive: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; g.n()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for u in g.neighbours(v) {
            if !seen[u] && !removed.contains(&u) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// More than `a` vertices and no separating set of fewer than `a` vertices.
pub fn brute_a_connected(g: &Graph, a: usize) -> bool {
    g.n() > a && (0..a).all(|k| subsets(g.n(), k).iter().all(|s| connected_without(g, s)))
}

/// Whether `map` sends `pattern` onto an induced copy in `host`.
pub fn induces(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    let p = pattern.n();
    map.len() == p
        && (0..p).all(|i| (0..i).all(|j| map[i] != map[j] && host.has_edge(map[i], map[j]) == pattern.has_edge(i, j)))
}

/// Whether some `|pattern|`-subset of `host` induces a copy of `pattern`.
pub fn brute_contains(host: &Graph, pattern: &Graph) -> bool {
    let perms = permutations(pattern.n());
    subsets(host.n(), pattern.n()).iter().any(|set| {
        perms.iter().any(|perm| {
            let map: Vec<usize> = perm.iter().map(|&i| set[i]).collect();
            induces(host, pattern, &map)
        })
    })
}
