//! Induced-subgraph containment.
//!
//! Pattern vertices are placed in breadth-first order from a maximum-degree
//! vertex; host candidates are tried in increasing index. Each candidate set
//! is the intersection of the neighbourhoods of the already placed pattern
//! neighbours with the non-neighbourhoods of the placed non-neighbours, so
//! adjacency and non-adjacency are both enforced while searching.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{full_mask, BitIter, FamilySpec, Graph};

/// Largest arbitrary pattern accepted by [`find_induced`].
pub const ARBITRARY_PATTERN_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Path(usize),
    Cycle(usize),
    Broom(usize, usize),
    CompleteBipartite(usize, usize),
    CocktailMulti(usize, usize),
    Arbitrary(Graph),
}

impl PatternSpec {
    pub fn graph(&self) -> Result<Graph> {
        let family = match self {
            PatternSpec::Path(k) => FamilySpec::Path(*k),
            PatternSpec::Cycle(k) => FamilySpec::Cycle(*k),
            PatternSpec::Broom(k, l) => FamilySpec::Broom(*k, *l),
            PatternSpec::CompleteBipartite(s, t) => FamilySpec::CompleteBipartite(*s, *t),
            PatternSpec::CocktailMulti(m, s) => FamilySpec::CocktailMulti(*m, *s),
            PatternSpec::Arbitrary(g) => {
                if g.n() > ARBITRARY_PATTERN_LIMIT {
                    return Err(Error::parameter(
                        "pattern",
                        format!("arbitrary patterns are limited to {ARBITRARY_PATTERN_LIMIT} vertices"),
                    ));
                }
                return Ok(g.clone());
            }
        };
        family.generate()
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Path(k) => write!(f, "P{k}"),
            PatternSpec::Cycle(k) => write!(f, "C{k}"),
            PatternSpec::Broom(k, l) => write!(f, "Broom({k},{l})"),
            PatternSpec::CompleteBipartite(s, t) => write!(f, "K{s},{t}"),
            PatternSpec::CocktailMulti(m, s) => write!(f, "co-{m}K{s}"),
            PatternSpec::Arbitrary(g) => write!(f, "g6:{g}"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// Accepts `P5`, `C4`, `K2,2`, `co-2K2`, `g6:<graph6>` and any family
    /// expression such as `Broom(3,2)` or `Path(5)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::parameter("pattern", format!("cannot parse pattern `{t}`"));
        if let Some(g6) = t.strip_prefix("g6:") {
            return Ok(PatternSpec::Arbitrary(crate::graph::parse_graph6(g6)?));
        }
        if let Some(rest) = t.strip_prefix("co-") {
            let (m, s) = rest.split_once(['K', 'k']).ok_or_else(bad)?;
            let m = if m.is_empty() { 1 } else { m.parse().map_err(|_| bad())? };
            return Ok(PatternSpec::CocktailMulti(m, s.parse().map_err(|_| bad())?));
        }
        let shorthand = t.len() > 1 && t.as_bytes()[1].is_ascii_digit();
        if shorthand && !t.contains('(') {
            let (head, rest) = t.split_at(1);
            match head {
                "P" | "p" => return Ok(PatternSpec::Path(rest.parse().map_err(|_| bad())?)),
                "C" | "c" => return Ok(PatternSpec::Cycle(rest.parse().map_err(|_| bad())?)),
                "K" | "k" => {
                    let (s, u) = rest.split_once(',').ok_or_else(bad)?;
                    return Ok(PatternSpec::CompleteBipartite(
                        s.parse().map_err(|_| bad())?,
                        u.parse().map_err(|_| bad())?,
                    ));
                }
                _ => {}
            }
        }
        let spec: FamilySpec = t.parse()?;
        Ok(match spec {
            FamilySpec::Path(k) => PatternSpec::Path(k),
            FamilySpec::Cycle(k) => PatternSpec::Cycle(k),
            FamilySpec::Broom(k, l) => PatternSpec::Broom(k, l),
            FamilySpec::CompleteBipartite(s, u) => PatternSpec::CompleteBipartite(s, u),
            FamilySpec::CocktailMulti(m, s) => PatternSpec::CocktailMulti(m, s),
            other => PatternSpec::Arbitrary(other.generate()?),
        })
    }
}

/// Pattern vertices in breadth-first order from the first maximum-degree
/// vertex, restarting in each further component.
fn placement_order(p: &Graph) -> Vec<usize> {
    let k = p.n();
    let mut order = Vec::with_capacity(k);
    let mut seen = vec![false; k];
    while order.len() < k {
        let root = (0..k)
            .filter(|&v| !seen[v])
            .max_by(|&a, &b| p.degree(a).cmp(&p.degree(b)).then(b.cmp(&a)))
            .expect("unplaced vertex remains");
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in p.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    host: &'a [u64],
    host_deg: Vec<u32>,
    order: Vec<usize>,
    /// For each position, which earlier positions are pattern-adjacent.
    back_adj: Vec<Vec<bool>>,
    pattern_deg: Vec<u32>,
    image: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize, used: u64, all: u64) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let mut cand = all & !used;
        for (j, &adj) in self.back_adj[pos].iter().enumerate() {
            let row = self.host[self.image[j]];
            cand &= if adj { row } else { !row };
        }
        for x in BitIter(cand) {
            if self.host_deg[x] < self.pattern_deg[pos] {
                continue;
            }
            self.image.push(x);
            if self.extend(pos + 1, used | 1 << x, all) {
                return true;
            }
            self.image.pop();
        }
        false
    }
}

/// An induced copy of `pattern` in `host`: `map[v]` is the host vertex of
/// pattern vertex `v`. The map is revalidated before it is returned.
pub fn find_induced_graph(host: &Graph, pattern: &Graph) -> Result<Option<Vec<usize>>> {
    host.require_word_sized("find_induced")?;
    let k = pattern.n();
    if k > host.n() {
        return Ok(None);
    }
    let order = placement_order(pattern);
    let back_adj = (0..k)
        .map(|i| (0..i).map(|j| pattern.has_edge(order[i], order[j])).collect())
        .collect();
    let masks = host.masks();
    let mut search = Search {
        host_deg: masks.iter().map(|m| m.count_ones()).collect(),
        host: &masks,
        pattern_deg: order.iter().map(|&v| pattern.degree(v) as u32).collect(),
        order,
        back_adj,
        image: Vec::with_capacity(k),
    };
    if !search.extend(0, 0, full_mask(host.n())) {
        return Ok(None);
    }
    let mut map = vec![0; k];
    for (pos, &v) in search.order.iter().enumerate() {
        map[v] = search.image[pos];
    }
    if !is_induced_embedding(host, pattern, &map) {
        return Err(Error::invariant("find_induced", "embedding failed revalidation"));
    }
    Ok(Some(map))
}

pub fn find_induced(host: &Graph, pattern: &PatternSpec) -> Result<Option<Vec<usize>>> {
    find_induced_graph(host, &pattern.graph()?)
}

pub fn is_free(host: &Graph, patterns: &[PatternSpec]) -> Result<bool> {
    for p in patterns {
        if find_induced(host, p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No induced cycle of even length at least four.
pub fn is_even_hole_free(host: &Graph) -> Result<bool> {
    let holes: Vec<PatternSpec> = (4..=host.n()).step_by(2).map(PatternSpec::Cycle).collect();
    is_free(host, &holes)
}

/// Injective, and preserves both adjacency and non-adjacency.
pub fn is_induced_embedding(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.n() || map.iter().any(|&x| x >= host.n()) {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return false;
    }
    (0..map.len()).all(|u| (u + 1..map.len()).all(|v| pattern.has_edge(u, v) == host.has_edge(map[u], map[v])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn cycle_examples() {
        let c5 = gen("Cycle(5)");
        let map = find_induced(&c5, &PatternSpec::Path(4)).unwrap().unwrap();
        assert!(is_induced_embedding(&c5, &gen("Path(4)"), &map));
        assert!(find_induced(&c5, &PatternSpec::Cycle(4)).unwrap().is_none());
        assert!(find_induced(&gen("Petersen"), &PatternSpec::CompleteBipartite(2, 2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn is_free_examples() {
        let c4 = gen("Cycle(4)");
        assert!(!is_free(&c4, &[PatternSpec::Path(5), PatternSpec::CocktailMulti(2, 2)]).unwrap());
        assert!(is_free(&gen("Cycle(5)"), &[PatternSpec::Path(5)]).unwrap());
        let broom = gen("Broom(8,5)");
        assert!(is_free(&broom, &(3..=13).map(PatternSpec::Cycle).collect::<Vec<_>>()).unwrap());
        assert!(is_even_hole_free(&gen("Cycle(5)")).unwrap());
        assert!(!is_even_hole_free(&gen("Cycle(6)")).unwrap());
    }

    #[test]
    fn pattern_text() {
        assert_eq!("P5".parse::<PatternSpec>().unwrap(), PatternSpec::Path(5));
        assert_eq!(
            "K2,2".parse::<PatternSpec>().unwrap(),
            PatternSpec::CompleteBipartite(2, 2)
        );
        assert_eq!(
            "co-2K3".parse::<PatternSpec>().unwrap(),
            PatternSpec::CocktailMulti(2, 3)
        );
        assert_eq!("Broom(3,2)".parse::<PatternSpec>().unwrap(), PatternSpec::Broom(3, 2));
        assert!(matches!(
            "Petersen".parse::<PatternSpec>().unwrap(),
            PatternSpec::Arbitrary(_)
        ));
        for p in ["P5", "C4", "K2,3", "co-2K2", "Broom(3,2)"] {
            assert_eq!(p.parse::<PatternSpec>().unwrap().to_string(), p);
        }
    }

    #[test]
    fn pattern_larger_than_host() {
        assert!(find_induced(&gen("Path(3)"), &PatternSpec::Path(4)).unwrap().is_none());
        assert!(find_induced(&gen("Empty(0)"), &PatternSpec::Arbitrary(Graph::new(0)))
            .unwrap()
            .is_some());
    }
}
