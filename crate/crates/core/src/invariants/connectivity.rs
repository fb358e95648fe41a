//! Connectivity in the sense "more than `a` vertices and no separating set of
//! fewer than `a` vertices".

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectivityWitness {
    /// The graph has at most `a` vertices.
    TooSmall { n: usize },
    /// Deleting `separator` leaves `side_a` and `side_b` nonempty and
    /// anticomplete; together with the separator they cover the graph.
    Cut {
        separator: Vec<usize>,
        side_a: Vec<usize>,
        side_b: Vec<usize>,
    },
}

impl ConnectivityWitness {
    /// Checks the witness against `g` and `a`.
    pub fn is_valid(&self, g: &Graph, a: usize) -> bool {
        match self {
            ConnectivityWitness::TooSmall { n } => *n == g.n() && g.n() <= a,
            ConnectivityWitness::Cut {
                separator,
                side_a,
                side_b,
            } => {
                let mut seen = vec![false; g.n()];
                for &v in separator.iter().chain(side_a).chain(side_b) {
                    if v >= g.n() || seen[v] {
                        return false;
                    }
                    seen[v] = true;
                }
                separator.len() < a
                    && !side_a.is_empty()
                    && !side_b.is_empty()
                    && seen.iter().all(|&s| s)
                    && side_a.iter().all(|&x| side_b.iter().all(|&y| !g.has_edge(x, y)))
            }
        }
    }
}

struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

/// Unit vertex-capacity network: vertex `v` becomes `2v -> 2v+1`.
struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let mut net = Network {
            arcs: (0..2 * g.n()).map(|_| Vec::new()).collect(),
        };
        let big = u32::MAX / 2;
        for v in 0..g.n() {
            let cap = if v == s || v == t { big } else { 1 };
            net.add(2 * v, 2 * v + 1, cap);
        }
        for (u, v) in g.edges() {
            net.add(2 * u + 1, 2 * v, big);
            net.add(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        let rf = self.arcs[to].len();
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc { to, cap, rev: rf });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: rt,
        });
    }

    /// Breadth-first residual search; returns parent arcs when `sink` is hit.
    fn bfs(&self, source: usize, sink: usize) -> (Vec<bool>, Option<Vec<(usize, usize)>>) {
        let mut seen = vec![false; self.arcs.len()];
        let mut parent = vec![(usize::MAX, 0); self.arcs.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(x) = queue.pop_front() {
            for (i, arc) in self.arcs[x].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = (x, i);
                    if arc.to == sink {
                        return (seen, Some(parent));
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        (seen, None)
    }

    /// Augments up to `limit` units; returns the flow value and, if it stayed
    /// below `limit`, the residual-reachable set.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> (usize, Option<Vec<bool>>) {
        let mut flow = 0;
        while flow < limit {
            let (seen, parent) = self.bfs(source, sink);
            let Some(parent) = parent else {
                return (flow, Some(seen));
            };
            let mut x = sink;
            while x != source {
                let (p, i) = parent[x];
                self.arcs[p][i].cap -= 1;
                let rev = self.arcs[p][i].rev;
                self.arcs[x][rev].cap += 1;
                x = p;
            }
            flow += 1;
        }
        (flow, None)
    }
}

fn component_of(g: &Graph, start: usize, removed: &[bool]) -> Vec<bool> {
    let mut mark = vec![false; g.n()];
    mark[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in g.neighbours(x) {
            if !removed[y] && !mark[y] {
                mark[y] = true;
                stack.push(y);
            }
        }
    }
    mark
}

/// `Ok(())` when `g` is `a`-connected, otherwise a witness.
///
/// A separator of size below `a` misses one of the first `a` vertices, so
/// only pairs `(u, w)` with `u < a` and `w` nonadjacent to `u` are tested.
pub fn a_connectivity(g: &Graph, a: usize) -> Result<(), ConnectivityWitness> {
    let n = g.n();
    if n <= a {
        return Err(ConnectivityWitness::TooSmall { n });
    }
    if a == 0 {
        return Ok(());
    }
    for u in 0..a.min(n) {
        for w in 0..n {
            if w == u || g.has_edge(u, w) {
                continue;
            }
            let mut net = Network::new(g, u, w);
            let (flow, reach) = net.max_flow(2 * u + 1, 2 * w, a);
            if flow >= a {
                continue;
            }
            let reach = reach.expect("flow below limit leaves a residual cut");
            let mut removed = vec![false; n];
            let separator: Vec<usize> = (0..n)
                .filter(|&v| v != u && reach[2 * v] && !reach[2 * v + 1])
                .collect();
            for &v in &separator {
                removed[v] = true;
            }
            let comp = component_of(g, u, &removed);
            let side_a = (0..n).filter(|&v| comp[v]).collect();
            let side_b = (0..n).filter(|&v| !comp[v] && !removed[v]).collect();
            return Err(ConnectivityWitness::Cut {
                separator,
                side_a,
                side_b,
            });
        }
    }
    Ok(())
}

pub fn is_a_connected(g: &Graph, a: usize) -> bool {
    a_connectivity(g, a).is_ok()
}

/// Vertices reachable from the lowest vertex of `set` inside `G[set]`, for
/// each component in order of its least vertex.
pub fn components(g: &Graph, set: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut done = vec![false; g.n()];
    let mut out = Vec::new();
    for &start in &sorted {
        if done[start] {
            continue;
        }
        let mut comp = vec![start];
        done[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in g.neighbours(x) {
                if inside[y] && !done[y] {
                    done[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn cycle_and_path_examples() {
        let c5 = gen("Cycle(5)");
        assert!(is_a_connected(&c5, 2));
        let p4 = gen("Path(4)");
        let w = a_connectivity(&p4, 2).unwrap_err();
        assert!(w.is_valid(&p4, 2));
        match &w {
            ConnectivityWitness::Cut { separator, .. } => assert_eq!(separator.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
        let w = a_connectivity(&c5, 3).unwrap_err();
        assert!(w.is_valid(&c5, 3));
        assert!(matches!(w, ConnectivityWitness::Cut { ref separator, .. } if separator.len() == 2));
    }

    #[test]
    fn size_and_complete_cases() {
        let k4 = gen("Complete(4)");
        assert!(is_a_connected(&k4, 3));
        assert_eq!(a_connectivity(&k4, 4), Err(ConnectivityWitness::TooSmall { n: 4 }));
        assert!(is_a_connected(&gen("Empty(1)"), 0));
        assert!(!is_a_connected(&gen("Empty(2)"), 1));
        assert!(is_a_connected(&gen("Petersen"), 3));
        assert!(!is_a_connected(&gen("Petersen"), 4));
    }

    #[test]
    fn components_in_order() {
        let g = gen("Union(Path(2),Cycle(3))");
        assert_eq!(components(&g, &[4, 3, 2, 1, 0]), vec![vec![0, 1], vec![2, 3, 4]]);
    }
}
