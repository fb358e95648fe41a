//! Exact clique, stability and chromatic numbers on single-word graphs.
//!
//! The kernels take adjacency masks plus a `within` mask so callers can work
//! on induced subgraphs without relabelling.

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Default node budget for the chromatic branch-and-bound.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Colour classes of a greedy sequential colouring of `within`; its length
/// bounds the clique number from above.
fn greedy_classes(masks: &[u64], mut within: u64) -> usize {
    let mut classes = 0;
    while within != 0 {
        let mut avail = within;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !masks[v] & !(1 << v);
            within &= !(1 << v);
        }
        classes += 1;
    }
    classes
}

fn expand_clique(masks: &[u64], clique: &mut Vec<usize>, mut cand: u64, best: &mut Vec<usize>) {
    if cand == 0 {
        if clique.len() > best.len() {
            best.clone_from(clique);
        }
        return;
    }
    if clique.len() + greedy_classes(masks, cand) <= best.len() {
        return;
    }
    while cand != 0 {
        if clique.len() + cand.count_ones() as usize <= best.len() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        clique.push(v);
        expand_clique(masks, clique, cand & masks[v], best);
        clique.pop();
    }
}

/// Lexicographically least maximum clique of `G[within]`.
///
/// Cliques are explored in lexicographic order of their sorted vertex lists
/// and only strict improvements are kept, so the first maximum found wins.
pub fn max_clique_in(masks: &[u64], within: u64) -> Vec<usize> {
    let mut best = Vec::new();
    expand_clique(masks, &mut Vec::new(), within, &mut best);
    best
}

/// Complement masks restricted to `within`.
pub fn complement_masks(masks: &[u64], within: u64) -> Vec<u64> {
    masks
        .iter()
        .enumerate()
        .map(|(v, &m)| !m & within & !(1u64 << v))
        .collect()
}

/// Lexicographically least maximum stable set of `G[within]`.
pub fn max_stable_in(masks: &[u64], within: u64) -> Vec<usize> {
    max_clique_in(&complement_masks(masks, within), within)
}

pub fn max_clique(g: &Graph) -> Result<Vec<usize>> {
    g.require_word_sized("max_clique")?;
    Ok(max_clique_in(&g.masks(), crate::graph::full_mask(g.n())))
}

pub fn max_stable_set(g: &Graph) -> Result<Vec<usize>> {
    g.require_word_sized("max_stable_set")?;
    Ok(max_stable_in(&g.masks(), crate::graph::full_mask(g.n())))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    max_clique(g).map(|c| c.len())
}

pub fn stability_number(g: &Graph) -> Result<usize> {
    max_stable_set(g).map(|c| c.len())
}

/// One side of a bipartition of `G[within]`, if it is bipartite.
fn bipartition(masks: &[u64], within: u64) -> Option<u64> {
    let mut side = [0u64; 2];
    let mut left = within;
    while left != 0 {
        let root = left.trailing_zeros() as usize;
        side[0] |= 1 << root;
        let mut frontier = 1u64 << root;
        let mut parity = 0;
        let mut seen = frontier;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= masks[v] & within;
            }
            if next & side[parity] != 0 {
                return None;
            }
            parity ^= 1;
            next &= !seen;
            side[parity] |= next;
            seen |= next;
            frontier = next;
        }
        left &= !seen;
    }
    Some(side[0])
}

struct Colourer<'a> {
    masks: &'a [u64],
    classes: Vec<u64>,
    best: usize,
    best_colouring: Vec<u64>,
    lower: usize,
    nodes: u64,
    budget: u64,
}

impl Colourer<'_> {
    fn pick(&self, uncoloured: u64) -> usize {
        let mut best_v = usize::MAX;
        let mut best_key = (0usize, 0u32);
        for v in BitIter(uncoloured) {
            let sat = self.classes.iter().filter(|&&c| c & self.masks[v] != 0).count();
            let key = (sat, (self.masks[v] & uncoloured).count_ones());
            if best_v == usize::MAX || key > best_key {
                best_v = v;
                best_key = key;
            }
        }
        best_v
    }

    fn run(&mut self, uncoloured: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::capability(
                "chromatic_number",
                format!("branch-and-bound exceeded {} nodes", self.budget),
            ));
        }
        if uncoloured == 0 {
            if self.classes.len() < self.best {
                self.best = self.classes.len();
                self.best_colouring.clone_from(&self.classes);
            }
            return Ok(());
        }
        let v = self.pick(uncoloured);
        let rest = uncoloured & !(1 << v);
        for c in 0..self.classes.len() {
            if self.classes[c] & self.masks[v] == 0 {
                self.classes[c] |= 1 << v;
                self.run(rest)?;
                self.classes[c] &= !(1 << v);
                if self.best <= self.lower {
                    return Ok(());
                }
            }
        }
        if self.classes.len() + 1 < self.best {
            self.classes.push(1 << v);
            self.run(rest)?;
            self.classes.pop();
        }
        Ok(())
    }
}

/// Optimal colouring of `G[within]` as colour-class masks.
pub fn colour_in(masks: &[u64], within: u64, budget: u64) -> Result<Vec<u64>> {
    if within == 0 {
        return Ok(Vec::new());
    }
    if BitIter(within).all(|v| masks[v] & within == 0) {
        return Ok(vec![within]);
    }
    if let Some(side) = bipartition(masks, within) {
        return Ok(vec![side, within & !side]);
    }
    let clique = max_clique_in(masks, within);
    let mut c = Colourer {
        masks,
        classes: clique.iter().map(|&v| 1u64 << v).collect(),
        best: within.count_ones() as usize + 1,
        best_colouring: Vec::new(),
        lower: clique.len(),
        nodes: 0,
        budget,
    };
    let seeded = within & !crate::graph::mask_of(&clique);
    c.run(seeded)?;
    Ok(c.best_colouring)
}

pub fn chromatic_in(masks: &[u64], within: u64, budget: u64) -> Result<usize> {
    colour_in(masks, within, budget).map(|c| c.len())
}

pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> Result<usize> {
    g.require_word_sized("chromatic_number")?;
    chromatic_in(&g.masks(), crate::graph::full_mask(g.n()), budget)
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_budget(g, DEFAULT_BUDGET)
}

/// Optimal colouring as a colour index per vertex.
pub fn optimal_colouring(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    g.require_word_sized("optimal_colouring")?;
    let classes = colour_in(&g.masks(), crate::graph::full_mask(g.n()), budget)?;
    let mut colour = vec![0; g.n()];
    for (c, &class) in classes.iter().enumerate() {
        for v in BitIter(class) {
            colour[v] = c;
        }
    }
    Ok(colour)
}

/// Largest minimum degree over all subgraphs, by repeated min-degree removal.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| deg[v])
            .expect("vertices remain");
        best = best.max(deg[v]);
        removed[v] = true;
        for u in g.neighbours(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn chi(spec: &str) -> usize {
        chromatic_number(&spec.parse::<FamilySpec>().unwrap().generate().unwrap()).unwrap()
    }

    #[test]
    fn chromatic_small_families() {
        assert_eq!(chi("Cycle(5)"), 3);
        assert_eq!(chi("Cycle(6)"), 2);
        assert_eq!(chi("Complete(6)"), 6);
        assert_eq!(chi("Petersen"), 3);
        assert_eq!(chi("Empty(4)"), 1);
        assert_eq!(chi("Empty(0)"), 0);
        assert_eq!(chi("Complement(Cycle(7))"), 4);
        assert_eq!(chi("Cocktail(3,2)"), 3);
    }

    #[test]
    fn colouring_is_proper() {
        let g = FamilySpec::random(16, 1, 2, 3).generate().unwrap();
        let colour = optimal_colouring(&g, DEFAULT_BUDGET).unwrap();
        assert!(g.edges().all(|(u, v)| colour[u] != colour[v]));
    }

    #[test]
    fn lex_least_maximum_clique() {
        // two triangles {1,2,3} and {0,4,5}: the lexicographically least is {0,4,5}
        let g = Graph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]).unwrap();
        assert_eq!(max_clique(&g).unwrap(), vec![0, 4, 5]);
        let c5 = FamilySpec::Cycle(5).generate().unwrap();
        assert_eq!(max_stable_set(&c5).unwrap(), vec![0, 2]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = FamilySpec::random(30, 1, 2, 11).generate().unwrap();
        assert!(matches!(
            chromatic_number_with_budget(&g, 3),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(&FamilySpec::Petersen.generate().unwrap()), 3);
        assert_eq!(degeneracy(&FamilySpec::Broom(8, 5).generate().unwrap()), 1);
        assert_eq!(degeneracy(&FamilySpec::Complete(5).generate().unwrap()), 4);
    }
}
