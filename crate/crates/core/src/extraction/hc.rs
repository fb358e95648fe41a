//! Highly connected induced subgraphs with large chromatic number.
//!
//! The search is exact. Vertices of degree at most `a` cannot lie in an
//! `(a+1)`-connected subgraph and are peeled first. If what remains is not
//! `(a+1)`-connected, a separator `S` with `|S| <= a` splits it into sides
//! `A`, `B`; every `(a+1)`-connected induced subgraph stays connected after
//! deleting `S`, so it lies inside `A ∪ S` or `B ∪ S` and both are searched.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{mask_of, mask_vertices, BitIter, Graph};
use crate::invariants::{a_connectivity, chromatic_in, ConnectivityWitness};

/// Node cap for the separator recursion.
pub const HC_NODE_BUDGET: u64 = 200_000;

struct HcSearch<'a> {
    g: &'a Graph,
    masks: Vec<u64>,
    a: usize,
    target: i64,
    chi_budget: u64,
    seen: HashSet<u64>,
    nodes: u64,
}

impl HcSearch<'_> {
    fn peel(&self, mut x: u64) -> u64 {
        loop {
            let low = BitIter(x)
                .filter(|&v| (self.masks[v] & x).count_ones() as usize <= self.a)
                .fold(0u64, |m, v| m | 1 << v);
            if low == 0 {
                return x;
            }
            x &= !low;
        }
    }

    fn run(&mut self, x: u64) -> Result<Option<u64>> {
        let x = self.peel(x);
        if x.count_ones() as usize <= self.a + 1 || !self.seen.insert(x) {
            return Ok(None);
        }
        self.nodes += 1;
        if self.nodes > HC_NODE_BUDGET {
            return Err(Error::capability(
                "hc_subgraph",
                format!("separator search exceeded {HC_NODE_BUDGET} nodes"),
            ));
        }
        if (chromatic_in(&self.masks, x, self.chi_budget)? as i64) < self.target {
            return Ok(None);
        }
        let verts = mask_vertices(x);
        let sub = self.g.induced(&verts)?;
        match a_connectivity(&sub, self.a + 1) {
            Ok(()) => Ok(Some(x)),
            Err(ConnectivityWitness::TooSmall { .. }) => Ok(None),
            Err(ConnectivityWitness::Cut {
                separator,
                side_a,
                side_b,
            }) => {
                let lift = |set: &[usize]| mask_of(&set.iter().map(|&i| verts[i]).collect::<Vec<_>>());
                let s = lift(&separator);
                let mut parts = [lift(&side_a) | s, lift(&side_b) | s];
                let chi_a = chromatic_in(&self.masks, parts[0], self.chi_budget)?;
                let chi_b = chromatic_in(&self.masks, parts[1], self.chi_budget)?;
                if chi_b > chi_a {
                    parts.swap(0, 1);
                }
                for part in parts {
                    if let Some(found) = self.run(part)? {
                        return Ok(Some(found));
                    }
                }
                Ok(None)
            }
        }
    }
}

/// An `(a+1)`-connected induced subgraph `F` of `G[within]` with
/// `chi(F) >= chi(G[within]) - 2a + 1`, or `None` if there is none.
/// The result is revalidated before it is returned.
pub fn hc_subgraph_in(g: &Graph, within: &[usize], a: usize, chi_budget: u64) -> Result<Option<Vec<usize>>> {
    g.require_word_sized("hc_subgraph")?;
    if a == 0 {
        return Err(Error::parameter("a", "need a >= 1"));
    }
    g.check_vertices(within)?;
    let masks = g.masks();
    let x = mask_of(within);
    let chi = chromatic_in(&masks, x, chi_budget)? as i64;
    let target = chi - 2 * a as i64 + 1;
    let mut search = HcSearch {
        g,
        masks,
        a,
        target,
        chi_budget,
        seen: HashSet::new(),
        nodes: 0,
    };
    let Some(found) = search.run(x)? else {
        return Ok(None);
    };
    let verts = mask_vertices(found);
    let sub = g.induced(&verts)?;
    let chi_f = chromatic_in(&search.masks, found, chi_budget)? as i64;
    if a_connectivity(&sub, a + 1).is_err() || chi_f < target {
        return Err(Error::invariant("hc_subgraph", "result failed revalidation"));
    }
    Ok(Some(verts))
}

pub fn hc_subgraph(g: &Graph, a: usize, chi_budget: u64) -> Result<Option<Vec<usize>>> {
    let all: Vec<usize> = (0..g.n()).collect();
    hc_subgraph_in(g, &all, a, chi_budget)
}
