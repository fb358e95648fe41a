//! Simple undirected graphs on vertices `0..n`.
//!
//! Adjacency rows are bitsets. Rows fit in one machine word up to 64
//! vertices, which is the limit for every exhaustive kernel in the crate;
//! larger graphs are representable (multi-word rows) for the polynomial
//! skeleton procedures.

mod enumerate;
mod families;
mod graph6;

pub use enumerate::{canonical_code, enumerate_graphs, graph_count, EXHAUSTIVE_LIMIT, LABELLED_LIMIT};
pub use families::{FamilySpec, PRNG_NAME};
pub use graph6::{parse_graph6, parse_graph_file, parse_graph_text, parse_sparse6, write_graph6};

use std::fmt;

use crate::error::{Error, Result};

/// Largest order handled by single-word kernels.
pub const WORD_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::parameter("edges", format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from single-word adjacency masks (n <= 64).
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        assert!(n <= WORD_LIMIT);
        let mut g = Graph::new(n);
        for (v, &m) in masks.iter().enumerate() {
            g.adj[v] = m & !(1u64 << v);
        }
        debug_assert!(g.is_symmetric());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::parameter(
                "vertex",
                format!("vertex {v} out of range for a graph on {} vertices", self.n),
            ));
        }
        Ok(())
    }

    pub fn check_vertices(&self, set: &[usize]) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single word. Only valid for n <= 64.
    #[inline]
    pub fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= WORD_LIMIT);
        self.adj[v * self.words]
    }

    /// All single-word rows (n <= 64).
    pub fn masks(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.row64(v)).collect()
    }

    pub fn require_word_sized(&self, what: &str) -> Result<()> {
        if self.n > WORD_LIMIT {
            return Err(Error::capability(
                what,
                format!("graph has {} vertices, exhaustive kernels stop at {WORD_LIMIT}", self.n),
            ));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| i * 64 + b))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbours(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// `G[S]`, relabelled to `0..|S|` in the order the vertices are given.
    pub fn induced(&self, set: &[usize]) -> Result<Graph> {
        self.check_vertices(set)?;
        let mut g = Graph::new(set.len());
        for (i, &u) in set.iter().enumerate() {
            for (j, &v) in set.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::parameter("set", format!("vertex {u} repeated")));
                }
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `⋂_{v ∈ S} N(v)`; the whole vertex set when `S` is empty.
    pub fn common_neighbourhood(&self, set: &[usize]) -> Result<Vec<usize>> {
        self.check_vertices(set)?;
        Ok((0..self.n)
            .filter(|&x| set.iter().all(|&v| self.has_edge(v, x)))
            .collect())
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        g
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Half the average degree, `|E| / |V|` (zero for the null graph).
    pub fn half_avg_degree(&self) -> crate::scalar::Rational {
        if self.n == 0 {
            return crate::scalar::int(0);
        }
        crate::scalar::rat(self.edge_count() as i64, self.n as i64)
    }

    fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbours(u).all(|v| self.has_edge(v, u)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

/// Iterates the set bit positions of a word in increasing order.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

pub fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &v| m | 1 << v)
}

pub fn mask_vertices(mask: u64) -> Vec<usize> {
    BitIter(mask).collect()
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
