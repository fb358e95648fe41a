//! Path-growing extraction for path-free and broom-free graphs.
//!
//! An induced path `v_1 .. v_p` is grown together with a highly connected
//! induced subgraph `J` that only the last path vertex sees. Each round
//! takes a highly connected `L` inside `J \ N(v_p)`, the set `Z` of vertices
//! of `J` whose non-neighbourhood in `L` has small chromatic number, and
//! either finds a rich stable set inside `Z` or extends the path along a
//! shortest `Z`-avoiding path from `N(v_p)` into `L`. Once the path is long
//! enough it is completed to the excluded pattern.

use num_bigint::BigInt;
use serde::Serialize;

use super::hc::hc_subgraph_in;
use super::stablechi::stablechi_extract;
use super::thresholds::{Threshold, ThresholdKind};
use super::{find_stable_subset, first_stable_subset, revalidate, rich_certificate, Certificate, ExtractOptions};
use crate::error::{Error, Result};
use crate::graph::{full_mask, mask_vertices, BitIter, Graph};
use crate::invariants::{chromatic_in, components, is_a_connected, max_clique_in, max_stable_in, RamseyValue};
use crate::scalar::{binomial, fmt_ratio, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    /// Path length at the start of the round.
    pub p: usize,
    pub j_size: usize,
    pub l_size: usize,
    pub z_size: usize,
    /// The chromatic cut-off defining `Z`, as `p/q`.
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionTrace {
    pub chi: usize,
    pub omega: usize,
    pub ramsey: RamseyValue,
    /// Connectivity demanded of `J`: `R` for paths, `B` for brooms.
    pub connectivity: u64,
    pub a: u64,
    /// `f(1), f(2), ...` as `p/q`, as far as they were used.
    pub fvals: Vec<String>,
    pub steps: Vec<StepRecord>,
    /// Rounds where no highly connected subgraph existed and the forced run
    /// continued with the component of largest chromatic number instead.
    pub fallbacks: usize,
    pub final_path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub certificate: Certificate,
    pub trace: ExtractionTrace,
}

#[derive(Clone, Copy, Debug)]
enum Goal {
    Path { k: usize },
    Broom { k: usize, l: usize },
}

struct Engine<'a> {
    g: &'a Graph,
    masks: Vec<u64>,
    s: usize,
    q: usize,
    goal: Goal,
    opts: &'a ExtractOptions,
    r: u64,
    conn: u64,
    a: u64,
    fvals: Vec<Rational>,
    trace: ExtractionTrace,
}

/// `f(i)` for `i >= 1`: `f(1) = (chi - q - 2a)/s`, `f(i) = (f(i-1) - q - 3a)/s`.
fn f_sequence(chi: usize, s: usize, q: usize, a: u64, len: usize) -> Vec<Rational> {
    let s_ = Rational::from_int(s as i64);
    let q = Rational::from_int(q as i64);
    let a = Rational::from_bigint(&BigInt::from(a));
    let mut out = vec![(Rational::from_int(chi as i64) - q.clone() - a.clone() * Rational::from_int(2)) / s_.clone()];
    while out.len() < len {
        let prev = out.last().expect("non-empty").clone();
        out.push((prev - q.clone() - a.clone() * Rational::from_int(3)) / s_.clone());
    }
    out
}

impl<'a> Engine<'a> {
    fn stall(&self, step: &str, detail: impl Into<String>) -> Error {
        let step = if self.opts.force {
            format!("forced run stopped at {step}")
        } else {
            step.to_string()
        };
        Error::invariant(step, detail)
    }

    fn f(&mut self, i: usize) -> Rational {
        if self.fvals.len() < i {
            let more = f_sequence(self.trace.chi, self.s, self.q, self.a, i);
            self.fvals = more;
            self.trace.fvals = self.fvals.iter().map(fmt_ratio).collect();
        }
        self.fvals[i - 1].clone()
    }

    fn chi(&self, within: u64) -> Result<usize> {
        chromatic_in(&self.masks, within, self.opts.budget)
    }

    fn finish(&mut self, certificate: Certificate, path: &[usize]) -> Result<Extraction> {
        revalidate(self.g, &certificate, self.q, self.opts.budget)?;
        self.trace.final_path = path.to_vec();
        Ok(Extraction {
            certificate,
            trace: self.trace.clone(),
        })
    }

    /// Highly connected subgraph of `G[within]`; in forced runs the
    /// component of largest chromatic number stands in when none exists.
    fn highly_connected(&mut self, within: u64, step: &str) -> Result<u64> {
        if within == 0 {
            return Err(self.stall(step, "empty vertex set"));
        }
        let verts = mask_vertices(within);
        let found = match hc_subgraph_in(self.g, &verts, self.a as usize, self.opts.budget) {
            Ok(found) => found,
            Err(e @ Error::Capability { .. }) if !self.opts.force => return Err(e),
            Err(Error::Capability { .. }) => None,
            Err(e) => return Err(e),
        };
        if let Some(f) = found {
            return Ok(crate::graph::mask_of(&f));
        }
        if !self.opts.force {
            return Err(Error::invariant(
                step,
                format!(
                    "no ({})-connected induced subgraph with the required chromatic number",
                    self.a + 1
                ),
            ));
        }
        self.trace.fallbacks += 1;
        let mut best = (0usize, 0u64);
        for comp in components(self.g, &verts) {
            let m = crate::graph::mask_of(&comp);
            let c = self.chi(m)?;
            if c > best.0 {
                best = (c, m);
            }
        }
        Ok(best.1)
    }

    fn check_structure(&self, path: &[usize], j: u64) -> Result<()> {
        let p = path.len();
        let path_mask = crate::graph::mask_of(path);
        let induced = (0..p).all(|x| (x + 1..p).all(|y| self.g.has_edge(path[x], path[y]) == (y == x + 1)));
        let hidden = path[..p - 1].iter().all(|&v| self.masks[v] & j == 0);
        if !induced || !hidden || path_mask & j != 0 {
            return Err(Error::invariant(
                "path invariant",
                "path is not induced, or an inner path vertex sees J",
            ));
        }
        Ok(())
    }

    fn check_round(&mut self, path: &[usize], j: u64) -> Result<()> {
        let p = path.len();
        let vp = path[p - 1];
        let sub = self.g.induced(&mask_vertices(j))?;
        if !is_a_connected(&sub, self.conn as usize) {
            return Err(Error::invariant(
                "round invariant",
                format!("J is not {}-connected", self.conn),
            ));
        }
        if ((self.masks[vp] & j).count_ones() as u64) < self.conn {
            return Err(Error::invariant("round invariant", "v_p has too few neighbours in J"));
        }
        let chi_rest = Rational::from_int(self.chi(j & !self.masks[vp])? as i64);
        if chi_rest <= self.f(p) {
            return Err(Error::invariant("round invariant", "chi(J \\ N(v_p)) <= f(p)"));
        }
        let s = Rational::from_int(self.s as i64);
        let r = Rational::from_int((self.q + 3 * self.a as usize) as i64) / Rational::from_int(self.s as i64 - 1);
        let lhs = self.f(p) + r.clone();
        let rhs = s.powi(1 - p as i64) * (self.f(1) + r);
        if lhs != rhs {
            return Err(Error::invariant(
                "round invariant",
                "f(i) + r = s^(1-i)(f(1) + r) fails",
            ));
        }
        Ok(())
    }

    fn assemble_path(&mut self, k: usize, path: &[usize], j: u64) -> Result<Extraction> {
        let p = path.len();
        if p >= k {
            let vertices = path[p - k..].to_vec();
            return self.finish(Certificate::InducedPathWitness { vertices, k }, path);
        }
        let vp = path[p - 1];
        let near = j & self.masks[vp];
        let far = j & !self.masks[vp];
        for x in BitIter(near) {
            let mut vertices = path.to_vec();
            vertices.push(x);
            if p + 1 == k {
                return self.finish(Certificate::InducedPathWitness { vertices, k }, path);
            }
            if let Some(y) = BitIter(far & self.masks[x]).next() {
                vertices.push(y);
                return self.finish(Certificate::InducedPathWitness { vertices, k }, path);
            }
        }
        Err(self.stall("path completion", "no edge from N(v_p) into the rest of J"))
    }

    fn assemble_broom(&mut self, k: usize, l: usize, path: &[usize], j: u64) -> Result<Extraction> {
        let p = path.len();
        let vp = path[p - 1];
        let near = mask_vertices(j & self.masks[vp]);
        if near.is_empty() {
            return Err(self.stall("broom completion", "v_p has no neighbour in J"));
        }
        let sub = self.g.induced(&near)?;
        let leaves = match stablechi_extract(&sub, self.s, self.q, Some(l), self.opts)? {
            Certificate::AlphaExceeds { stable_set, .. } => {
                stable_set[..l].iter().map(|&i| near[i]).collect::<Vec<_>>()
            }
            Certificate::RichStableSet { stable_set, .. } => {
                let lifted: Vec<usize> = stable_set.iter().map(|&i| near[i]).collect();
                let cert = rich_certificate(&self.masks, self.g.n(), &lifted, self.q, self.opts.budget)?
                    .ok_or_else(|| Error::invariant("broom completion", "lifted stable set lost its richness"))?;
                return self.finish(cert, path);
            }
            _ => {
                let stable = max_stable_in(&self.masks, crate::graph::mask_of(&near));
                if stable.len() < l {
                    return Err(self.stall("broom completion", "N(v_p) in J has no stable set of size l"));
                }
                stable[..l].to_vec()
            }
        };
        let handle: Vec<usize> = (1..k).map(|i| path[p - 1 - i]).collect();
        self.finish(
            Certificate::InducedBroomWitness {
                center: vp,
                handle,
                leaves,
                k,
                l,
            },
            path,
        )
    }

    /// Shortest path in `G[allowed]` from `sources` to `targets`. Breadth
    /// first by levels; each vertex keeps its least-index discoverer and the
    /// least-index target of the first level that meets the targets wins.
    fn shortest_path(&self, allowed: u64, sources: u64, targets: u64) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.g.n()];
        let mut level = sources & allowed;
        let mut visited = level;
        while level != 0 {
            let hits = level & targets;
            if hits != 0 {
                let mut v = hits.trailing_zeros() as usize;
                let mut out = vec![v];
                while parent[v] != usize::MAX {
                    v = parent[v];
                    out.push(v);
                }
                out.reverse();
                return Some(out);
            }
            let mut next = 0u64;
            for v in BitIter(level) {
                for u in BitIter(self.masks[v] & allowed & !visited) {
                    parent[u] = v;
                    visited |= 1 << u;
                    next |= 1 << u;
                }
            }
            level = next;
        }
        None
    }

    fn run(&mut self) -> Result<Extraction> {
        let n = self.g.n();
        let all = full_mask(n);
        let f_mask = self.highly_connected(all, "initial highly connected subgraph")?;
        let Some(first) = first_stable_subset(&self.masks, f_mask, self.s) else {
            return Err(self.stall("initial stable set", "F has no stable set of size s"));
        };
        if let Some(cert) = rich_certificate(&self.masks, n, &first, self.q, self.opts.budget)? {
            return self.finish(cert, &[]);
        }
        let mut best: Option<(usize, usize)> = None;
        for &v in &first {
            let c = self.chi(f_mask & !self.masks[v])?;
            if best.is_none_or(|(bc, _)| c > bc) {
                best = Some((c, v));
            }
        }
        let v = best.expect("s >= 2").1;
        let mut path = vec![v];
        let mut j = f_mask & !(1u64 << v);

        for _ in 0..=n {
            self.check_structure(&path, j)?;
            let p = path.len();
            match self.goal {
                Goal::Path { k } if p + 2 >= k => return self.assemble_path(k, &path, j),
                Goal::Broom { k, l } if p >= k => return self.assemble_broom(k, l, &path, j),
                _ => {}
            }
            if !self.opts.force {
                self.check_round(&path, j)?;
            }
            let vp = path[p - 1];
            let l_mask = self.highly_connected(j & !self.masks[vp], "L inside J \\ N(v_p)")?;
            let b = self.f(p + 1) + Rational::from_int(self.conn as i64 - 1);
            let mut z = 0u64;
            for zv in BitIter(j) {
                if Rational::from_int(self.chi(l_mask & !self.masks[zv])? as i64) <= b {
                    z |= 1 << zv;
                }
            }
            self.trace.steps.push(StepRecord {
                p,
                j_size: j.count_ones() as usize,
                l_size: l_mask.count_ones() as usize,
                z_size: z.count_ones() as usize,
                b: fmt_ratio(&b),
            });
            if z.count_ones() as u64 >= self.r {
                let mut found = None;
                let force = self.opts.force;
                let (masks, q, budget) = (&self.masks, self.q, self.opts.budget);
                let mut tried = 0;
                find_stable_subset(masks, z, self.s, &mut |set| {
                    tried += 1;
                    found = rich_certificate(masks, n, set, q, budget)?;
                    Ok(found.is_some() || !force)
                })?;
                if let Some(cert) = found {
                    return self.finish(cert, &path);
                }
                if !force {
                    return Err(Error::invariant(
                        "large Z",
                        if tried == 0 {
                            "Z has no stable set of size s"
                        } else {
                            "stable set in Z is not rich"
                        },
                    ));
                }
            }
            let allowed = j & !z;
            let Some(ext) = self.shortest_path(allowed, self.masks[vp] & j, l_mask & !z) else {
                return Err(self.stall("Z-avoiding path", "no path from N(v_p) to L avoiding Z"));
            };
            let t = ext.len();
            let before_last = ext[t - 2];
            let keep_last = ((self.masks[before_last] & l_mask).count_ones() as u64) < self.conn;
            let new_vertices = if keep_last { &ext[..] } else { &ext[..t - 1] };
            let mut next_j = l_mask;
            for &u in &new_vertices[..new_vertices.len() - 1] {
                next_j &= !self.masks[u];
            }
            path.extend_from_slice(new_vertices);
            j = next_j;
        }
        Err(Error::invariant("path growth", "path stopped growing"))
    }
}

fn setup<'a>(
    g: &'a Graph,
    s: usize,
    q: usize,
    goal: Goal,
    opts: &'a ExtractOptions,
) -> Result<(Engine<'a>, Threshold)> {
    if s < 2 {
        return Err(Error::parameter("s", "need s >= 2"));
    }
    if q < 1 {
        return Err(Error::parameter("q", "need q >= 1"));
    }
    g.require_word_sized("extraction")?;
    if g.is_empty() {
        return Err(Error::parameter("graph", "need at least one vertex"));
    }
    let masks = g.masks();
    let all = full_mask(g.n());
    let omega = max_clique_in(&masks, all).len();
    let chi = chromatic_in(&masks, all, opts.budget)?;
    let ramsey = opts.ramsey.value(s as u64, omega as u64 + 1);
    let r = ramsey.value;
    let (conn, kind) = match goal {
        Goal::Path { k } => {
            if k < 5 {
                return Err(Error::parameter("k", "need k >= 5"));
            }
            (
                r,
                ThresholdKind::Path2 {
                    s: s as u64,
                    k: k as u64,
                    q: q as u64,
                    omega: omega as u64,
                },
            )
        }
        Goal::Broom { k, l } => {
            if k < 2 {
                return Err(Error::parameter("k", "need k >= 2"));
            }
            if l < 1 {
                return Err(Error::parameter("l", "need l >= 1"));
            }
            let big = binomial(l as u64, s as u64) * BigInt::from(l * q)
                + num_traits::pow(BigInt::from(l), s) * BigInt::from(r);
            let conn = u64::try_from(big)
                .map_err(|_| Error::capability("broom_extract", "connectivity demand exceeds 64 bits"))?;
            (
                conn,
                ThresholdKind::BroomKS {
                    k: k as u64,
                    l: l as u64,
                    s: s as u64,
                    q: q as u64,
                    omega: omega as u64,
                },
            )
        }
    };
    let threshold = Threshold::new(kind, &opts.ramsey)?;
    let a = s as u64 * (conn - 1);
    let engine = Engine {
        g,
        masks,
        s,
        q,
        goal,
        opts,
        r,
        conn,
        a,
        fvals: Vec::new(),
        trace: ExtractionTrace {
            chi,
            omega,
            ramsey,
            connectivity: conn,
            a,
            fvals: Vec::new(),
            steps: Vec::new(),
            fallbacks: 0,
            final_path: Vec::new(),
        },
    };
    Ok((engine, threshold))
}

fn drive(g: &Graph, s: usize, q: usize, goal: Goal, opts: &ExtractOptions) -> Result<Extraction> {
    let (mut engine, threshold) = setup(g, s, q, goal, opts)?;
    let chi = engine.trace.chi;
    if !opts.force && !threshold.is_met_by(chi) {
        let cert = Certificate::HypothesisUnmet {
            threshold,
            actual_chi: chi,
        };
        return engine.finish(cert, &[]);
    }
    engine.run()
}

/// Finds a stable `s`-set whose common neighbourhood has chromatic number
/// above `q`, or an induced `P_k`.
pub fn gyarfas_extract(g: &Graph, s: usize, q: usize, k: usize, opts: &ExtractOptions) -> Result<Extraction> {
    drive(g, s, q, Goal::Path { k }, opts)
}

/// Finds a stable `s`-set whose common neighbourhood has chromatic number
/// above `q`, or an induced `(k, l)`-broom.
pub fn broom_extract(g: &Graph, k: usize, l: usize, s: usize, q: usize, opts: &ExtractOptions) -> Result<Extraction> {
    drive(g, s, q, Goal::Broom { k, l }, opts)
}
