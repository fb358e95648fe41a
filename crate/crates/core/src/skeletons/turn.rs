//! Turning a wide skeleton into an induced copy of a tree.
//!
//! The target tree `(F, rho)` is mapped into the skeleton's domain one
//! vertex at a time, in order of height. Every mapped vertex with unmapped
//! children keeps a reserved subtree of the domain whose image, apart from
//! its root, avoids and misses the neighbourhoods of all other mapped
//! images. Each new vertex is chosen among the children of its parent's
//! reserved root so that every other reservation survives with a constant
//! fraction of its width.

use serde::Serialize;

use super::subtree::{at_least, sparse_shrink};
use super::{ceil_u64, check_c, check_skeleton, grow_skeleton, shortfall, RootedTree, Skeleton, SkeletonOptions};
use crate::error::{Error, Result};
use crate::extraction::{revalidate, Certificate};
use crate::graph::{write_graph6, Graph};
use crate::invariants::{edge_pair_count, exceeds_density, DensePair};
use crate::scalar::{fmt_ratio, Rational, Scalar};

/// The vertex of least eccentricity (least index among ties) and its
/// eccentricity.
pub fn radius_root(f: &Graph) -> Result<(usize, usize)> {
    RootedTree::from_graph(f, 0)?;
    let mut best = (usize::MAX, 0);
    for v in 0..f.n() {
        let ecc = RootedTree::from_graph(f, v)?.depth();
        if ecc < best.0 {
            best = (ecc, v);
        }
    }
    Ok((best.1, best.0))
}

struct Turn<'a> {
    g: &'a Graph,
    sk: &'a Skeleton,
    f: &'a RootedTree,
    c: Rational,
    t: usize,
    eps: Rational,
    h: usize,
    force: bool,
    /// Domain node of each mapped vertex of `F`.
    psi: Vec<Option<usize>>,
    /// Reserved subtree (as domain nodes) of each unfinished vertex.
    reserved: Vec<Option<Vec<bool>>>,
}

impl Turn<'_> {
    fn image(&self, node: usize) -> usize {
        self.sk.map[node]
    }

    fn mapped(&self) -> usize {
        self.psi.iter().filter(|p| p.is_some()).count()
    }

    fn unfinished(&self, u: usize) -> bool {
        self.psi[u].is_some() && self.f.children(u).iter().any(|&c| self.psi[c].is_none())
    }

    fn width(&self, mapped: usize) -> Rational {
        let a = 3 * self.h * self.f.order();
        self.eps.powi(2 * self.h as i64 * mapped as i64 - a as i64) * Rational::from_int(self.t as i64)
    }

    /// Children of `top` inside `keep`, as domain nodes.
    fn kept_children(&self, top: usize, keep: &[bool]) -> Vec<usize> {
        self.sk
            .tree
            .children(top)
            .iter()
            .copied()
            .filter(|&c| keep[c])
            .collect()
    }

    /// The reserved subtree below one of its nodes.
    fn below(&self, top: usize, keep: &[bool]) -> Vec<bool> {
        let mut out = vec![false; keep.len()];
        for v in self.sk.tree.descendants(top) {
            out[v] = keep[v];
        }
        out[top] = true;
        out
    }

    fn check_state(&self) -> Result<()> {
        let g = self.g;
        let mapped: Vec<usize> = (0..self.f.order()).filter(|&u| self.psi[u].is_some()).collect();
        for (i, &a) in mapped.iter().enumerate() {
            for &b in &mapped[i + 1..] {
                let (x, y) = (self.image(self.psi[a].unwrap()), self.image(self.psi[b].unwrap()));
                let tree_edge = self.f.parent(a) == Some(b) || self.f.parent(b) == Some(a);
                if x == y || g.has_edge(x, y) != tree_edge {
                    return Err(Error::invariant("tree extension", "mapped part is not an induced copy"));
                }
            }
        }
        for &u in &mapped {
            let Some(keep) = &self.reserved[u] else { continue };
            let top = self.psi[u].unwrap();
            for (node, &k) in keep.iter().enumerate() {
                if !k || node == top {
                    continue;
                }
                let x = self.image(node);
                for &w in &mapped {
                    if w == u {
                        continue;
                    }
                    let y = self.image(self.psi[w].unwrap());
                    if x == y || g.has_edge(x, y) {
                        return Err(Error::invariant(
                            "tree extension",
                            "a reserved subtree touches another mapped vertex",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_width(&self, u: usize, mapped: usize) -> Result<()> {
        let Some(keep) = &self.reserved[u] else { return Ok(()) };
        let (sub, _) = self.sk.restrict(self.psi[u].unwrap(), keep);
        let depth = self.h - self.f.height(u);
        if !sub.tree.is_wide(&self.width(mapped), depth) {
            return Err(shortfall(false, "tree extension", "a reserved subtree lost its width"));
        }
        Ok(())
    }

    fn shrink_against(&self, u: usize, xs: &[usize]) -> Result<(Vec<usize>, Vec<Vec<bool>>)> {
        let keep = self.reserved[u].as_ref().expect("unfinished vertex has a reservation");
        let (sub, back) = self.sk.restrict(self.psi[u].unwrap(), keep);
        let out = sparse_shrink(self.g, &sub, xs, &self.c, self.t, self.force)?;
        let witnesses = out
            .witnesses
            .iter()
            .map(|w| {
                let mut full = vec![false; self.sk.tree.order()];
                for (i, &k) in w.iter().enumerate() {
                    if k {
                        full[back[i]] = true;
                    }
                }
                full
            })
            .collect();
        Ok((out.y, witnesses))
    }

    /// Maps the next vertex of `F`.
    fn extend(&mut self) -> Result<()> {
        let force = self.force;
        let f = self.f;
        let z = f
            .bfs()
            .iter()
            .copied()
            .find(|&v| self.psi[v].is_none())
            .expect("an unmapped vertex remains");
        let v = f.parent(z).expect("the root is mapped first");
        let mapped = self.mapped();
        let others: Vec<usize> = (0..f.order()).filter(|&u| u != v && self.unfinished(u)).collect();
        let top = self.psi[v].unwrap();
        let tv = self.reserved[v]
            .clone()
            .expect("parent of an unmapped vertex is unfinished");
        let d_nodes = self.kept_children(top, &tv);
        if !force && !at_least(d_nodes.len(), &self.width(mapped), 1) {
            return Err(shortfall(false, "tree extension", "|D| below the reserved width"));
        }

        // Q: children whose images are good for every other reservation.
        let mut q = d_nodes.clone();
        let mut good: Vec<(usize, Vec<usize>, Vec<Vec<bool>>)> = Vec::with_capacity(others.len());
        for &u in &others {
            let xs: Vec<usize> = q.iter().map(|&n| self.image(n)).collect();
            let (ys, ws) = self.shrink_against(u, &xs)?;
            q.retain(|&n| ys.binary_search(&self.image(n)).is_ok());
            good.push((u, ys, ws));
        }
        let shrink_factor = self.eps.powi((self.h as i64 - 1) * others.len() as i64);
        if !force && !at_least(q.len(), &shrink_factor, d_nodes.len()) {
            return Err(shortfall(false, "tree extension", "|Q| < eps^((h-1)|E|) |D|"));
        }
        if q.is_empty() {
            return Err(shortfall(
                force,
                "tree extension",
                "no child is good for every reservation",
            ));
        }

        let still_needed = f.children(v).iter().any(|&c| c != z && self.psi[c].is_none());
        let (chosen, new_tv) = if still_needed {
            self.split(&d_nodes, &q, &tv)?
        } else {
            (q[0], None)
        };

        let y = self.image(chosen);
        for (u, ys, ws) in good {
            let i = ys.binary_search(&y).expect("chosen image is good");
            self.reserved[u] = Some(ws[i].clone());
        }
        self.reserved[v] = new_tv;
        self.psi[z] = Some(chosen);
        if !f.children(z).is_empty() {
            self.reserved[z] = Some(self.below(chosen, &tv));
        }
        self.check_state()?;
        if !force {
            for u in 0..f.order() {
                if self.unfinished(u) {
                    self.check_width(u, mapped + 1)?;
                }
            }
        }
        Ok(())
    }

    /// Picks the new image among `q` so that a wide part of the parent's
    /// reservation avoids its closed neighbourhood.
    fn split(&self, d_nodes: &[usize], q: &[usize], tv: &[bool]) -> Result<(usize, Option<Vec<bool>>)> {
        let g = self.g;
        let force = self.force;
        let half = q.len().div_ceil(2);
        let y_nodes: Vec<usize> = q[..half].to_vec();
        let x_nodes: Vec<usize> = d_nodes.iter().copied().filter(|n| !y_nodes.contains(n)).collect();
        let ys: Vec<usize> = y_nodes.iter().map(|&n| self.image(n)).collect();
        let xs: Vec<usize> = x_nodes.iter().map(|&n| self.image(n)).collect();
        if x_nodes.is_empty() {
            return Err(shortfall(
                force,
                "tree extension",
                "nothing left to reserve for the parent",
            ));
        }
        if !force {
            let count = edge_pair_count(g, &xs, &ys);
            if exceeds_density(count, xs.len(), ys.len(), &self.c) {
                return Err(Error::refuted(
                    "tree extension",
                    "the two halves of D are too dense",
                    DensePair { a: xs, b: ys, count },
                ));
            }
        }
        let half_c = self.c.clone() / Rational::from_int(2);
        let x_prime: Vec<usize> = x_nodes
            .iter()
            .copied()
            .filter(|&n| {
                let x = self.image(n);
                at_least(ys.iter().filter(|&&y| !g.has_edge(x, y)).count(), &half_c, ys.len())
            })
            .collect();
        let two_eps = Rational::from_int(2) * self.eps.clone();
        if !force && !at_least(x_prime.len(), &two_eps, x_nodes.len()) {
            return Err(shortfall(false, "tree extension", "|X'| < 2 eps |X|"));
        }
        let two_eps_h = Rational::from_int(2) * self.eps.powi(self.h as i64);
        let mut per_x = Vec::with_capacity(x_prime.len());
        for &n in &x_prime {
            let x = self.image(n);
            let candidates: Vec<usize> = ys.iter().copied().filter(|&y| !g.has_edge(x, y)).collect();
            let sub_keep = self.below(n, tv);
            let (sub, back) = self.sk.restrict(n, &sub_keep);
            let out = sparse_shrink(g, &sub, &candidates, &self.c, self.t, force)?;
            if !force && !at_least(out.y.len(), &two_eps_h, ys.len()) {
                return Err(shortfall(false, "tree extension", "|Y_x| < 2 eps^h |Y|"));
            }
            per_x.push((out, back));
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, &y) in ys.iter().enumerate() {
            let count = per_x.iter().filter(|(out, _)| out.witness(y).is_some()).count();
            if best.is_none_or(|(c, _)| count > c) {
                best = Some((count, i));
            }
        }
        let (count, i) = best.expect("Y is nonempty");
        if !force && !at_least(count, &two_eps_h, x_prime.len()) {
            return Err(shortfall(
                false,
                "tree extension",
                "no y is good for 2 eps^h |X'| subtrees",
            ));
        }
        if count == 0 {
            return Err(shortfall(force, "tree extension", "no y leaves the parent any room"));
        }
        let y = ys[i];
        let mut keep = vec![false; self.sk.tree.order()];
        keep[self.psi_of_top(tv)] = true;
        for (out, back) in &per_x {
            if let Some(w) = out.witness(y) {
                for (j, &k) in w.iter().enumerate() {
                    if k {
                        keep[back[j]] = true;
                    }
                }
            }
        }
        Ok((y_nodes[i], Some(keep)))
    }

    fn psi_of_top(&self, tv: &[bool]) -> usize {
        self.sk
            .tree
            .bfs()
            .iter()
            .copied()
            .find(|&n| tv[n])
            .expect("reservation has a root")
    }
}

/// Finds an induced copy of the rooted tree `f` from a skeleton of the same
/// depth (deeper skeletons are cut). Without `force` the skeleton has to be
/// `((4/c)^(3 h |F|) t, h)`-wide.
pub fn extract_induced_tree(
    g: &Graph,
    sk: &Skeleton,
    f: &RootedTree,
    c: &Rational,
    t: usize,
    opts: &SkeletonOptions,
) -> Result<Certificate> {
    check_c(c)?;
    if t == 0 {
        return Err(Error::parameter("t", "need t >= 1"));
    }
    if let Err(v) = check_skeleton(g, sk) {
        return Err(Error::parameter("skeleton", format!("not a skeleton: {v:?}")));
    }
    let h = f.depth();
    if sk.tree.depth() < h {
        return Err(Error::parameter(
            "skeleton",
            format!("depth {} is below the depth {h} of the target", sk.tree.depth()),
        ));
    }
    let sk = sk.truncate(h);
    let eps = c.clone() / Rational::from_int(4);
    let a = 3 * h * f.order();
    let need = eps.powi(-(a as i64)) * Rational::from_int(t as i64);
    if !opts.force && !sk.tree.is_wide(&need, h) {
        return Err(Error::HypothesisUnmet {
            detail: format!("the skeleton is not ({}, {h})-wide", fmt_ratio(&need)),
        });
    }
    let target = write_graph6(&f.to_graph());
    let mut turn = Turn {
        g,
        sk: &sk,
        f,
        c: c.clone(),
        t,
        eps,
        h,
        force: opts.force,
        psi: vec![None; f.order()],
        reserved: vec![None; f.order()],
    };
    let rho = f.root();
    turn.psi[rho] = Some(sk.tree.root());
    if !f.children(rho).is_empty() {
        turn.reserved[rho] = Some(vec![true; sk.tree.order()]);
    }
    while turn.mapped() < f.order() {
        turn.extend()?;
    }
    let map: Vec<usize> = (0..f.order()).map(|u| sk.map[turn.psi[u].unwrap()]).collect();
    let cert = Certificate::TreeEmbedding { target, map };
    revalidate(g, &cert, 0, 0)?;
    Ok(cert)
}

/// Average degree that guarantees an induced `F` in a `(c, t)`-sparse graph:
/// `(4/c)^(4 h |F|) t` with `h` the radius of `F`.
pub fn sparse_tree_threshold(f: &Graph, c: &Rational, t: usize) -> Result<Rational> {
    check_c(c)?;
    let (_, h) = radius_root(f)?;
    Ok((Rational::from_int(4) / c.clone()).powi(4 * h as i64 * f.n() as i64) * Rational::from_int(t as i64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeRun {
    pub root: usize,
    pub radius: usize,
    /// The width `d` of the skeleton that was grown, as `p/q`.
    pub width: String,
    pub skeleton: Skeleton,
    pub certificate: Certificate,
}

/// An induced copy of the tree `f` in a `(c, t)`-sparse graph of large
/// average degree: grows a wide skeleton, then extracts the tree from it.
/// `opts.width` replaces the skeleton width, and only with `force`.
pub fn sparse_tree(g: &Graph, f: &Graph, c: &Rational, t: usize, opts: &SkeletonOptions) -> Result<TreeRun> {
    check_c(c)?;
    if t == 0 {
        return Err(Error::parameter("t", "need t >= 1"));
    }
    if g.is_empty() {
        return Err(Error::parameter("graph", "need at least one vertex"));
    }
    let (root, h) = radius_root(f)?;
    let rooted = RootedTree::from_graph(f, root)?;
    let threshold = sparse_tree_threshold(f, c, t)?;
    let avg = Rational::from_int(2) * g.half_avg_degree();
    let eps = c.clone() / Rational::from_int(4);
    let default_width = eps.powi(-3 * h as i64 * f.n() as i64) * Rational::from_int(t as i64);
    if !opts.force {
        if opts.width.is_some() {
            return Err(Error::parameter("width", "a width override needs force"));
        }
        if avg < threshold {
            let phi_need = super::phi(c, h)? * default_width.clone();
            return Err(Error::HypothesisUnmet {
                detail: format!(
                    "average degree {} is below {} (margin {}); d(G) = {} against Phi(c,{h}) d = {}",
                    fmt_ratio(&avg),
                    fmt_ratio(&threshold),
                    fmt_ratio(&(threshold.clone() - avg.clone())),
                    fmt_ratio(&g.half_avg_degree()),
                    fmt_ratio(&phi_need)
                ),
            });
        }
    }
    let width = opts.width.clone().unwrap_or(default_width);
    if ceil_u64(&width) == 0 {
        return Err(Error::parameter("width", "must be positive"));
    }
    let skeleton = grow_skeleton(g, c, t, &width, h, opts)?;
    let certificate = extract_induced_tree(g, &skeleton, &rooted, c, t, opts)?;
    Ok(TreeRun {
        root,
        radius: h,
        width: fmt_ratio(&width),
        skeleton,
        certificate,
    })
}
