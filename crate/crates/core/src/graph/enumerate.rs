//! Small-order enumeration.
//!
//! Isomorphism classes are generated by vertex augmentation: every class on
//! `n` vertices arises from a class on `n-1` vertices by adding one vertex
//! with some neighbourhood. Duplicates are removed with a canonical code
//! computed by ordered equitable refinement plus individualisation; the
//! code of a leaf ordering is the graph6 bit string read as an integer and
//! the canonical code is the maximum over all leaves.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{BitIter, Graph};
use crate::error::{Error, Result};

/// Largest `n` enumerated up to isomorphism.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Largest `n` enumerated as labelled graphs (no deduplication).
pub const LABELLED_LIMIT: usize = 6;

/// Largest order whose upper triangle fits in a `u64` code.
const CODE_LIMIT: usize = 11;

/// Number of isomorphism classes of graphs on `n` vertices (OEIS A000088).
pub fn graph_count(n: usize) -> Option<u64> {
    const COUNTS: [u64; 11] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168];
    COUNTS.get(n).copied()
}

fn leaf_code(masks: &[u64], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for j in 1..order.len() {
        let row = masks[order[j]];
        for &u in &order[..j] {
            code = (code << 1) | (row >> u & 1);
        }
    }
    code
}

/// Splits cells until every cell is equitable with respect to every other.
/// Subcells are ordered by their neighbour count into the splitting cell,
/// which keeps the procedure isomorphism-invariant.
fn refine(masks: &[u64], cells: &mut Vec<u64>) {
    'restart: loop {
        for si in 0..cells.len() {
            let splitter = cells[si];
            for ci in 0..cells.len() {
                let cell = cells[ci];
                if cell.count_ones() == 1 {
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in BitIter(cell) {
                    let d = (masks[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(k, _)| *k == d) {
                        Some((_, m)) => *m |= 1 << v,
                        None => groups.push((d, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    groups.sort_unstable_by_key(|&(k, _)| k);
                    cells.splice(ci..=ci, groups.into_iter().map(|(_, m)| m));
                    continue 'restart;
                }
            }
        }
        return;
    }
}

fn search(masks: &[u64], mut cells: Vec<u64>, best: &mut u64) {
    refine(masks, &mut cells);
    match cells.iter().position(|c| c.count_ones() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            *best = (*best).max(leaf_code(masks, &order));
        }
        Some(ci) => {
            let cell = cells[ci];
            for v in BitIter(cell) {
                let mut next = cells.clone();
                next.splice(ci..=ci, [1u64 << v, cell & !(1u64 << v)]);
                search(masks, next, best);
            }
        }
    }
}

fn code_of_masks(masks: &[u64]) -> u64 {
    let n = masks.len();
    if n <= 1 {
        return 0;
    }
    let mut best = 0;
    search(masks, vec![super::full_mask(n)], &mut best);
    best
}

/// Isomorphism-invariant code: two graphs of the same order are isomorphic
/// iff their codes agree.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > CODE_LIMIT {
        return Err(Error::capability(
            "canonical_code",
            format!("canonical codes are limited to {CODE_LIMIT} vertices, got {}", g.n()),
        ));
    }
    Ok(code_of_masks(&g.masks()))
}

/// Rebuilds the graph whose leaf ordering produced `code`.
fn graph_from_code(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut g = Graph::new(n);
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - pos) & 1 == 1 {
                g.add_edge(i, j);
            }
            pos += 1;
        }
    }
    g
}

/// Every graph on `n` vertices. With `dedup` one canonical representative
/// per isomorphism class is returned, sorted by canonical code; otherwise all
/// `2^(n choose 2)` labelled graphs in graph6 bit order.
pub fn enumerate_graphs(n: usize, dedup: bool) -> Result<Vec<Graph>> {
    if dedup {
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::capability(
                "enumerate_graphs",
                format!("isomorphism-free enumeration supports n <= {EXHAUSTIVE_LIMIT}, got {n}"),
            ));
        }
        let mut codes = vec![0u64];
        for k in 1..=n {
            codes = extend_classes(k, &codes);
        }
        Ok(codes.into_iter().map(|c| graph_from_code(n, c)).collect())
    } else {
        if n > LABELLED_LIMIT {
            return Err(Error::capability(
                "enumerate_graphs",
                format!("labelled enumeration supports n <= {LABELLED_LIMIT}, got {n}"),
            ));
        }
        let total = n * n.saturating_sub(1) / 2;
        Ok((0..1u64 << total).map(|c| graph_from_code(n, c)).collect())
    }
}

/// Canonical codes of all classes on `k` vertices from those on `k-1`.
fn extend_classes(k: usize, parents: &[u64]) -> Vec<u64> {
    let found: HashSet<u64> = parents
        .par_iter()
        .flat_map_iter(|&code| {
            let base = graph_from_code(k - 1, code).masks();
            (0..1u64 << (k - 1)).map(move |nbrs| {
                let mut masks = base.clone();
                for v in BitIter(nbrs) {
                    masks[v] |= 1 << (k - 1);
                }
                masks.push(nbrs);
                code_of_masks(&masks)
            })
        })
        .collect();
    let mut codes: Vec<u64> = found.into_iter().collect();
    codes.sort_unstable();
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    #[test]
    fn class_counts_small() {
        for n in 0..=6 {
            let graphs = enumerate_graphs(n, true).unwrap();
            assert_eq!(graphs.len() as u64, graph_count(n).unwrap(), "n={n}");
        }
        assert_eq!(enumerate_graphs(0, false).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(4, false).unwrap().len(), 64);
        assert!(enumerate_graphs(9, true).is_err());
        assert!(enumerate_graphs(7, false).is_err());
    }

    #[test]
    fn code_is_invariant_under_relabelling() {
        let p = FamilySpec::Petersen.generate().unwrap();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&p.permuted(&perm)).unwrap());
        let c5 = FamilySpec::Cycle(5).generate().unwrap();
        let p5 = FamilySpec::Path(5).generate().unwrap();
        assert_ne!(canonical_code(&c5).unwrap(), canonical_code(&p5).unwrap());
    }

    #[test]
    fn representatives_reproduce_their_code() {
        for g in enumerate_graphs(5, true).unwrap() {
            assert_eq!(
                leaf_code(&g.masks(), &(0..5).collect::<Vec<_>>()),
                canonical_code(&g).unwrap()
            );
        }
    }
}
