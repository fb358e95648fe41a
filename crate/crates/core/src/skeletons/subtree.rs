//! Subtrees of a skeleton that avoid a closed neighbourhood, and the
//! shrinking lemma that makes many vertices good at once.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{ceil_u64, check_c, shortfall, Skeleton};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{edge_pair_count, exceeds_density, DensePair};
use crate::scalar::{fmt_ratio, Rational, Scalar};

/// `x >= frac * y`.
pub(crate) fn at_least(x: usize, frac: &Rational, y: usize) -> bool {
    Rational::from_int(x as i64) >= frac.clone() * Rational::from_int(y as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidingSubtree {
    /// Tree nodes of the subtree, indexed by node.
    pub keep: Vec<bool>,
    /// For each kept node with children in the tree, the fraction of them
    /// that is kept, as `p/q`.
    pub fractions: Vec<Option<String>>,
    #[serde(skip)]
    min: Option<Rational>,
}

impl AvoidingSubtree {
    /// Smallest child fraction over kept internal nodes; `None` when no kept
    /// node has children in the tree.
    pub fn min_fraction(&self) -> Option<&Rational> {
        self.min.as_ref()
    }
}

fn allowed_nodes(sk: &Skeleton, forbidden: &[bool], exempt_root: bool) -> Vec<bool> {
    (0..sk.tree.order())
        .map(|v| (exempt_root && v == sk.tree.root()) || !forbidden[sk.map[v]])
        .collect()
}

/// The largest rooted subtree whose images avoid `forbidden` (indexed by
/// host vertex), with the fraction of children each kept node retains.
/// With `exempt_root` the root is kept regardless of its image. `None` if
/// the root itself is forbidden.
///
/// Maximality alone does not decide `eps`-goodness: a kept node that lost
/// all its children can still be cut away by its parent. Use
/// [`eps_subtree`] for that.
pub fn max_avoiding_subtree(sk: &Skeleton, forbidden: &[bool], exempt_root: bool) -> Option<AvoidingSubtree> {
    let tree = &sk.tree;
    let allowed = allowed_nodes(sk, forbidden, exempt_root);
    if !allowed[tree.root()] {
        return None;
    }
    let mut keep = vec![false; tree.order()];
    for &v in tree.bfs() {
        keep[v] = allowed[v] && tree.parent(v).is_none_or(|p| keep[p]);
    }
    let mut fractions = vec![None; tree.order()];
    let mut min: Option<Rational> = None;
    for &v in tree.bfs() {
        let total = tree.children(v).len();
        if keep[v] && total > 0 {
            let kept = tree.children(v).iter().filter(|&&c| keep[c]).count();
            let f = Rational::new((kept as i64).into(), (total as i64).into());
            fractions[v] = Some(fmt_ratio(&f));
            if min.as_ref().is_none_or(|m| f < *m) {
                min = Some(f);
            }
        }
    }
    Some(AvoidingSubtree { keep, fractions, min })
}

/// The largest `eps`-subtree all of whose nodes are `allowed`: a node is
/// viable if it is allowed and, when it has children, at least `eps` times
/// that many of them are viable. Every `eps`-subtree inside `allowed` is
/// contained in the result. `None` if the root is not viable.
pub fn eps_subtree(sk: &Skeleton, allowed: &[bool], eps: &Rational) -> Option<Vec<bool>> {
    let tree = &sk.tree;
    let mut viable = vec![false; tree.order()];
    for &v in tree.bfs().iter().rev() {
        let kids = tree.children(v);
        viable[v] = allowed[v] && {
            let ok = kids.iter().filter(|&&c| viable[c]).count();
            kids.is_empty() || at_least(ok, eps, kids.len())
        };
    }
    if !viable[tree.root()] {
        return None;
    }
    let mut keep = vec![false; tree.order()];
    for &v in tree.bfs() {
        keep[v] = viable[v] && tree.parent(v).is_none_or(|p| keep[p]);
    }
    Some(keep)
}

fn closed_neighbourhood(g: &Graph, v: usize) -> Vec<bool> {
    let mut out = vec![false; g.n()];
    out[v] = true;
    for u in g.neighbours(v) {
        out[u] = true;
    }
    out
}

/// Largest `eps`-subtree whose image misses `N[v]`, if `v` is `eps`-good.
pub fn is_eps_good(g: &Graph, sk: &Skeleton, v: usize, eps: &Rational) -> Option<Vec<bool>> {
    if sk.map.contains(&v) {
        return None;
    }
    let forbidden = closed_neighbourhood(g, v);
    eps_subtree(sk, &allowed_nodes(sk, &forbidden, false), eps)
}

/// Largest `eps`-subtree whose image meets `N[u]` exactly in the root
/// image, if `u` is `eps`-nice.
pub fn is_eps_nice(g: &Graph, sk: &Skeleton, u: usize, eps: &Rational) -> Option<Vec<bool>> {
    if sk.map.contains(&u) || !g.has_edge(u, sk.root_image()) {
        return None;
    }
    let forbidden = closed_neighbourhood(g, u);
    eps_subtree(sk, &allowed_nodes(sk, &forbidden, true), eps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseLemma {
    /// Least vertex of `A` with at least `c|B|` non-neighbours in `B`.
    pub vertex: usize,
    /// All vertices of `A` with at least `(c/2)|B|` non-neighbours in `B`.
    pub subset: Vec<usize>,
}

fn non_neighbours(g: &Graph, v: usize, b: &[usize]) -> usize {
    b.iter().filter(|&&x| !g.has_edge(v, x)).count()
}

/// The two conclusions for a disjoint pair with `e(A, B) <= (1-c)|A||B|`,
/// both recounted.
pub fn lemma_sparse(g: &Graph, a: &[usize], b: &[usize], c: &Rational) -> Result<SparseLemma> {
    g.check_vertices(a)?;
    g.check_vertices(b)?;
    if *c <= Rational::zero() || *c >= Rational::one() {
        return Err(Error::parameter("c", "need 0 < c < 1"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::parameter("A, B", "both sets must be nonempty"));
    }
    if a.iter().any(|x| b.contains(x)) {
        return Err(Error::parameter("A, B", "sets must be disjoint"));
    }
    let count = edge_pair_count(g, a, b);
    if exceeds_density(count, a.len(), b.len(), c) {
        return Err(Error::parameter(
            "A, B",
            format!("e(A,B) = {count} exceeds (1-c)|A||B|"),
        ));
    }
    let half = c.clone() / Rational::from_int(2);
    let vertex = a
        .iter()
        .copied()
        .find(|&v| at_least(non_neighbours(g, v, b), c, b.len()));
    let subset: Vec<usize> = a
        .iter()
        .copied()
        .filter(|&v| at_least(non_neighbours(g, v, b), &half, b.len()))
        .collect();
    let Some(vertex) = vertex else {
        return Err(Error::invariant(
            "sparse pair lemma",
            "no vertex with c|B| non-neighbours",
        ));
    };
    if !at_least(subset.len(), &half, a.len()) {
        return Err(Error::invariant(
            "sparse pair lemma",
            "fewer than (c/2)|A| vertices qualify",
        ));
    }
    Ok(SparseLemma { vertex, subset })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shrink {
    /// The good vertices, ascending.
    pub y: Vec<usize>,
    /// For each vertex of `y`, the tree nodes of a subtree avoiding its
    /// closed neighbourhood.
    pub witnesses: Vec<Vec<bool>>,
}

impl Shrink {
    pub fn witness(&self, y: usize) -> Option<&[bool]> {
        self.y.binary_search(&y).ok().map(|i| self.witnesses[i].as_slice())
    }
}

struct ShrinkRun<'a> {
    g: &'a Graph,
    sk: &'a Skeleton,
    c: Rational,
    eps: Rational,
    depths: Vec<usize>,
    force: bool,
}

impl ShrinkRun<'_> {
    /// Returns `(y, kept nodes)` pairs for the subtree below `node`.
    fn run(&self, node: usize, xs: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
        let h = self.depths[node];
        if h == 0 || xs.is_empty() {
            return Ok(xs.iter().map(|&y| (y, vec![node])).collect());
        }
        let g = self.g;
        let kids = self.sk.tree.children(node);
        let a: Vec<usize> = kids.iter().map(|&k| self.sk.map[k]).collect();
        if !self.force {
            let count = edge_pair_count(g, &a, xs);
            if exceeds_density(count, a.len(), xs.len(), &self.c) {
                return Err(Error::refuted(
                    "shrinking lemma",
                    "children images and X are too dense",
                    DensePair {
                        a: a.clone(),
                        b: xs.to_vec(),
                        count,
                    },
                ));
            }
        }
        let half_c = self.c.clone() / Rational::from_int(2);
        let a1: Vec<usize> = kids
            .iter()
            .copied()
            .filter(|&k| at_least(non_neighbours(g, self.sk.map[k], xs), &half_c, xs.len()))
            .collect();
        let two_eps = Rational::from_int(2) * self.eps.clone();
        if !self.force && !at_least(a1.len(), &two_eps, kids.len()) {
            return Err(shortfall(false, "shrinking lemma", "|A_1| < 2 eps |A|"));
        }
        let eps_h = self.eps.powi(h as i64);
        let two_eps_h = Rational::from_int(2) * eps_h.clone();
        let mut per_child = Vec::with_capacity(a1.len());
        for &k in &a1 {
            let v = self.sk.map[k];
            let xv: Vec<usize> = xs.iter().copied().filter(|&x| !g.has_edge(v, x)).collect();
            let sub = self.run(k, &xv)?;
            if !self.force && !at_least(sub.len(), &two_eps_h, xs.len()) {
                return Err(shortfall(false, "shrinking lemma", "|X'_v| < 2 eps^h |X|"));
            }
            per_child.push(sub);
        }
        let mut out = Vec::new();
        for &u in xs {
            let mut nodes = vec![node];
            let mut hits = 0usize;
            for sub in &per_child {
                if let Ok(i) = sub.binary_search_by_key(&u, |(y, _)| *y) {
                    hits += 1;
                    nodes.extend_from_slice(&sub[i].1);
                }
            }
            if hits > 0 && at_least(hits, &eps_h, a1.len()) {
                out.push((u, nodes));
            }
        }
        if !self.force && !at_least(out.len(), &eps_h, xs.len()) {
            return Err(shortfall(false, "shrinking lemma", "|Y| < eps^h |X|"));
        }
        Ok(out)
    }
}

/// Shrinks `X` to a set `Y` of vertices each of which has a
/// `2 (c/4)^(h+1)`-subtree avoiding its closed neighbourhood, where `h` is
/// the depth of the skeleton. Without `force`, the skeleton has to be
/// `((4/c)^h t, h)`-wide and `|X| >= (4/c)^h t`; every counting step is then
/// checked, and a shortfall refutes the sparseness of `G`.
pub fn sparse_shrink(g: &Graph, sk: &Skeleton, x: &[usize], c: &Rational, t: usize, force: bool) -> Result<Shrink> {
    check_c(c)?;
    if t == 0 {
        return Err(Error::parameter("t", "need t >= 1"));
    }
    g.check_vertices(x)?;
    let root = sk.root_image();
    let mut in_image = vec![false; g.n()];
    for &v in &sk.map {
        in_image[v] = true;
    }
    if let Some(&bad) = x.iter().find(|&&v| in_image[v] || g.has_edge(v, root)) {
        return Err(Error::parameter(
            "X",
            format!("vertex {bad} lies in the skeleton image or next to its root"),
        ));
    }
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let h = sk.tree.depth();
    let eps = c.clone() / Rational::from_int(4);
    if !force {
        let need = eps.powi(-(h as i64)) * Rational::from_int(t as i64);
        if !sk.tree.is_wide(&need, h) || !at_least(xs.len(), &Rational::one(), ceil_u64(&need) as usize) {
            return Err(Error::HypothesisUnmet {
                detail: format!(
                    "shrinking needs a ({}, {h})-wide skeleton and |X| >= {}",
                    fmt_ratio(&need),
                    fmt_ratio(&need)
                ),
            });
        }
    }
    let run = ShrinkRun {
        g,
        sk,
        c: c.clone(),
        eps: eps.clone(),
        depths: sk.tree.subtree_depths(),
        force,
    };
    let found = run.run(sk.tree.root(), &xs)?;
    let bound = Rational::from_int(2) * eps.powi(h as i64 + 1);
    let mut y = Vec::with_capacity(found.len());
    let mut witnesses = Vec::with_capacity(found.len());
    for (v, nodes) in found {
        let mut keep = vec![false; sk.tree.order()];
        for n in nodes {
            keep[n] = true;
        }
        let avoids = (0..sk.tree.order()).all(|n| !keep[n] || (sk.map[n] != v && !g.has_edge(sk.map[n], v)));
        if !avoids {
            return Err(Error::invariant(
                "shrinking lemma",
                format!("witness for {v} meets its neighbourhood"),
            ));
        }
        if !force && is_eps_good(g, sk, v, &bound).is_none() {
            return Err(Error::invariant(
                "shrinking lemma",
                format!("{v} is not 2 eps^(h+1)-good"),
            ));
        }
        y.push(v);
        witnesses.push(keep);
    }
    Ok(Shrink { y, witnesses })
}
