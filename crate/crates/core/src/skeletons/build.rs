//! Growing skeletons one level at a time.
//!
//! A step either finds an induced subgraph of nearly the same density with
//! no wide skeleton of depth `h`, or builds a skeleton of depth `h + 1` by
//! finding a vertex `u` that is nice for the skeletons rooted at many
//! high-degree vertices and hanging those skeletons below `u`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::find::find_skeleton_from;
use super::subtree::{at_least, sparse_shrink};
use super::{ceil_u64, check_c, phi, shortfall, validate_skeleton, RootedTree, Skeleton, SkeletonOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{edge_pair_count, exceeds_density, DensePair};
use crate::scalar::{fmt_ratio, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StepOutcome {
    /// `J = G - X` has no `((4/c)^(h+1) d, h)`-skeleton; `x` are the roots
    /// of the wide skeletons that were removed.
    NoWideSkeleton {
        j: Vec<usize>,
        x: Vec<usize>,
    },
    Skeleton(Skeleton),
}

struct Step<'a> {
    g: &'a Graph,
    c: Rational,
    t: usize,
    eps: Rational,
    h: usize,
    w: Rational,
    opts: &'a SkeletonOptions,
}

impl Step<'_> {
    /// Vertices `u` that are `2 eps^(h+1)`-nice for `phi_v`, each with the
    /// tree nodes of a witnessing subtree.
    fn nice_vertices(&self, v: usize, sk: &Skeleton) -> Result<BTreeMap<usize, Vec<bool>>> {
        let g = self.g;
        let force = self.opts.force;
        let tree = &sk.tree;
        let root = tree.root();
        let kids = tree.children(root);
        let a: Vec<usize> = kids.iter().map(|&k| sk.map[k]).collect();
        let b: Vec<usize> = g.neighbours(v).filter(|x| !a.contains(x)).collect();
        let mut in_image = vec![false; g.n()];
        for &x in &sk.map {
            in_image[x] = true;
        }
        if b.iter().any(|&x| in_image[x]) {
            return Err(Error::invariant("nice vertices", "N(v) \\ A meets the skeleton image"));
        }
        if b.is_empty() {
            return Ok(BTreeMap::new());
        }
        if !force {
            if a.len() < self.t || b.len() < self.t || 4 * b.len() < g.degree(v) {
                return Err(shortfall(false, "nice vertices", "|A| or |B| too small"));
            }
            let count = edge_pair_count(g, &a, &b);
            if exceeds_density(count, a.len(), b.len(), &self.c) {
                return Err(Error::refuted(
                    "nice vertices",
                    "A = phi(N(r)) and B = N(v) \\ A are too dense",
                    DensePair { a, b, count },
                ));
            }
        }
        let half_c = self.c.clone() / Rational::from_int(2);
        let p: Vec<usize> = kids
            .iter()
            .copied()
            .filter(|&k| {
                let z = sk.map[k];
                at_least(b.iter().filter(|&&x| !g.has_edge(z, x)).count(), &half_c, b.len())
            })
            .collect();
        let two_eps = Rational::from_int(2) * self.eps.clone();
        if !force && !at_least(p.len(), &two_eps, a.len()) {
            return Err(shortfall(false, "nice vertices", "|P| < 2 eps |A|"));
        }
        let eps_h = self.eps.powi(self.h as i64);
        let mut shrunk = Vec::with_capacity(p.len());
        for &k in &p {
            let z = sk.map[k];
            let bz: Vec<usize> = b.iter().copied().filter(|&x| !g.has_edge(z, x)).collect();
            let (sub, back) = sk.below(k);
            let out = sparse_shrink(g, &sub, &bz, &self.c, self.t, force)?;
            if !force && !at_least(out.y.len(), &(Rational::from_int(2) * eps_h.clone()), b.len()) {
                return Err(shortfall(false, "nice vertices", "|B_z| < 2 eps^h |B|"));
            }
            shrunk.push((out, back));
        }
        let mut nice = BTreeMap::new();
        for &u in &b {
            let mut keep = vec![false; tree.order()];
            keep[root] = true;
            let mut hits = 0;
            for (out, back) in &shrunk {
                if let Some(w) = out.witness(u) {
                    hits += 1;
                    for (i, &k) in w.iter().enumerate() {
                        if k {
                            keep[back[i]] = true;
                        }
                    }
                }
            }
            if hits > 0 && at_least(hits, &eps_h, p.len()) {
                nice.insert(u, keep);
            }
        }
        if !force && !at_least(nice.len(), &eps_h, b.len()) {
            return Err(shortfall(false, "nice vertices", "|Q| < eps^h |B|"));
        }
        Ok(nice)
    }

    /// The second outcome: a `(d, h+1)`-skeleton, if the counting yields a
    /// vertex that is nice for enough of the skeletons.
    fn assemble(&self, roots: &[(usize, Skeleton)], d: &Rational) -> Result<Option<Skeleton>> {
        let g = self.g;
        let force = self.opts.force;
        let three_halves_w = self.w.clone() * Rational::new(3.into(), 2.into());
        let y: Vec<&(usize, Skeleton)> = roots
            .iter()
            .filter(|(v, _)| Rational::from_int(g.degree(*v) as i64) >= three_halves_w)
            .collect();
        if !force {
            let total: usize = y.iter().map(|(v, _)| g.degree(*v)).sum();
            let half_w_n = self.w.clone() * Rational::from_int(g.n() as i64) / Rational::from_int(2);
            if Rational::from_int(total as i64) <= half_w_n {
                return Err(shortfall(
                    false,
                    "skeleton step",
                    "sum of degrees over Y is at most W|G|/2",
                ));
            }
        }
        let dc = ceil_u64(d) as usize;
        // u -> [(v, pruned subtree)]
        let mut pairs: BTreeMap<usize, Vec<(usize, Vec<bool>)>> = BTreeMap::new();
        let mut pair_count = 0usize;
        for (v, sk) in y {
            for (u, keep) in self.nice_vertices(*v, sk)? {
                pair_count += 1;
                if let Some(pruned) = prune_to_width(&sk.tree, &keep, dc, self.h) {
                    pairs.entry(u).or_default().push((*v, pruned));
                }
            }
        }
        if !force && !at_least(pair_count, d, g.n()) {
            return Err(shortfall(false, "skeleton step", "fewer than d|G| nice pairs"));
        }
        let Some((u, found)) = pairs.into_iter().find(|(_, vs)| vs.len() >= dc) else {
            if !force {
                return Err(shortfall(
                    false,
                    "skeleton step",
                    "no vertex is nice for ceil(d) skeletons",
                ));
            }
            return Ok(None);
        };
        let mut parent = vec![None];
        let mut map = vec![u];
        for (v, keep) in found.iter().take(dc) {
            let sk = &roots.iter().find(|(r, _)| r == v).expect("root listed").1;
            let (sub, _) = sk.restrict(sk.tree.root(), keep);
            let offset = parent.len();
            for (i, p) in sub.tree.parents().iter().enumerate() {
                parent.push(Some(p.map_or(0, |p| p + offset)));
                map.push(sub.map[i]);
            }
        }
        let sk = Skeleton {
            tree: RootedTree::from_parents(parent)?,
            map,
        };
        if let Err(v) = validate_skeleton(g, &sk, d, self.h + 1) {
            return Err(Error::invariant(
                "skeleton step",
                format!("assembled skeleton is invalid: {v:?}"),
            ));
        }
        Ok(Some(sk))
    }
}

/// Inside the kept nodes, the first `dc` viable children of every node
/// above depth `h`, where a node is viable if it can be completed to a
/// `(dc, h)`-wide subtree.
fn prune_to_width(tree: &RootedTree, keep: &[bool], dc: usize, h: usize) -> Option<Vec<bool>> {
    let mut viable = vec![false; tree.order()];
    for &v in tree.bfs().iter().rev() {
        viable[v] = keep[v] && (tree.height(v) >= h || tree.children(v).iter().filter(|&&c| viable[c]).count() >= dc);
    }
    if !viable[tree.root()] {
        return None;
    }
    let mut out = vec![false; tree.order()];
    out[tree.root()] = true;
    for &v in tree.bfs() {
        if out[v] && tree.height(v) < h {
            for &c in tree.children(v).iter().filter(|&&c| viable[c]).take(dc) {
                out[c] = true;
            }
        }
    }
    Some(out)
}

fn check_common(c: &Rational, t: usize, d: &Rational) -> Result<()> {
    check_c(c)?;
    if t == 0 {
        return Err(Error::parameter("t", "need t >= 1"));
    }
    if *d < Rational::from_int(t as i64) {
        return Err(Error::parameter("d", format!("need d >= t, got {}", fmt_ratio(d))));
    }
    Ok(())
}

/// One level of skeleton growth. Faithful runs test the first outcome
/// first, as the argument does; forced runs try to assemble the deeper
/// skeleton first because the first outcome holds trivially on small graphs.
pub fn build_skeleton_step(
    g: &Graph,
    c: &Rational,
    t: usize,
    d: &Rational,
    h: usize,
    opts: &SkeletonOptions,
) -> Result<StepOutcome> {
    check_common(c, t, d)?;
    if h == 0 {
        return Err(Error::parameter("h", "need h >= 1"));
    }
    let eps = c.clone() / Rational::from_int(4);
    let w = d.clone() / eps.powi(h as i64 + 1);
    let wc = ceil_u64(&w);
    let step = Step {
        g,
        c: c.clone(),
        t,
        eps,
        h,
        w: w.clone(),
        opts,
    };
    let mut roots = Vec::new();
    if wc as usize <= g.max_degree() {
        let tree = RootedTree::wide(wc as usize, h)?;
        for v in 0..g.n() {
            if g.degree(v) >= wc as usize {
                if let Some(sk) = find_skeleton_from(g, &tree, Some(v), opts.budget)? {
                    roots.push((v, sk));
                }
            }
        }
    }
    let x: Vec<usize> = roots.iter().map(|(v, _)| *v).collect();
    let j: Vec<usize> = (0..g.n()).filter(|v| !x.contains(v)).collect();
    let first_holds = {
        let dj = g.induced(&j)?.half_avg_degree();
        dj >= g.half_avg_degree() - Rational::from_int(2) * w.clone()
    };
    if opts.force {
        if let Some(sk) = step.assemble(&roots, d)? {
            return Ok(StepOutcome::Skeleton(sk));
        }
        if first_holds {
            return Ok(StepOutcome::NoWideSkeleton { j, x });
        }
        return Err(shortfall(true, "skeleton step", "neither outcome could be established"));
    }
    if first_holds {
        let jg = g.induced(&j)?;
        if wc as usize <= jg.max_degree() {
            let tree = RootedTree::wide(wc as usize, h)?;
            if find_skeleton_from(&jg, &tree, None, opts.budget)?.is_some() {
                return Err(Error::invariant("skeleton step", "G - X still has a wide skeleton"));
            }
        }
        return Ok(StepOutcome::NoWideSkeleton { j, x });
    }
    match step.assemble(&roots, d)? {
        Some(sk) => Ok(StepOutcome::Skeleton(sk)),
        None => Err(shortfall(false, "skeleton step", "no skeleton assembled")),
    }
}

/// A `(d, h)`-skeleton in a `(c, t)`-sparse graph with `d(G) >= Phi(c, h) d`,
/// by induction on `h` through [`build_skeleton_step`].
pub fn grow_skeleton(
    g: &Graph,
    c: &Rational,
    t: usize,
    d: &Rational,
    h: usize,
    opts: &SkeletonOptions,
) -> Result<Skeleton> {
    check_common(c, t, d)?;
    if g.is_empty() {
        return Err(Error::parameter("graph", "need at least one vertex"));
    }
    let need = phi(c, h)? * d.clone();
    let have = g.half_avg_degree();
    if !opts.force && have < need {
        return Err(Error::HypothesisUnmet {
            detail: format!(
                "d(G) = {} is below Phi(c,{h}) d = {}",
                fmt_ratio(&have),
                fmt_ratio(&need)
            ),
        });
    }
    let sk = match h {
        0 => Skeleton {
            tree: RootedTree::single(),
            map: vec![0],
        },
        1 => {
            let dc = ceil_u64(d) as usize;
            let Some(v) = (0..g.n()).find(|&v| g.degree(v) >= dc) else {
                return Err(shortfall(
                    opts.force,
                    "skeleton growth",
                    format!("no vertex of degree {dc}"),
                ));
            };
            let mut map = vec![v];
            map.extend(g.neighbours(v).take(dc));
            Skeleton {
                tree: RootedTree::wide(dc, 1)?,
                map,
            }
        }
        _ => match build_skeleton_step(g, c, t, d, h - 1, opts)? {
            StepOutcome::Skeleton(sk) => sk,
            StepOutcome::NoWideSkeleton { j, .. } => {
                if opts.force {
                    return Err(shortfall(true, "skeleton growth", "the step found no deeper skeleton"));
                }
                let jg = g.induced(&j)?;
                let wider = (Rational::from_int(4) / c.clone()).powi(h as i64) * d.clone();
                grow_skeleton(&jg, c, t, &wider, h - 1, opts)?;
                return Err(Error::invariant(
                    "skeleton growth",
                    "J has a wide skeleton although the step excluded one",
                ));
            }
        },
    };
    if let Err(v) = validate_skeleton(g, &sk, d, h) {
        return Err(Error::invariant("skeleton growth", format!("result is invalid: {v:?}")));
    }
    Ok(sk)
}
