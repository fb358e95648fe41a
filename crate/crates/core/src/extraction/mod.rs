//! Constructive extraction procedures.
//!
//! Each procedure either finds a stable set whose common neighbourhood has
//! large chromatic number, or an induced copy of the excluded pattern, or
//! reports that the chromatic-number hypothesis is unmet. Every certificate
//! is revalidated by independent code before it is returned.

mod gyarfas;
mod hc;
mod stablechi;
mod thresholds;

pub use gyarfas::{broom_extract, gyarfas_extract, Extraction, ExtractionTrace, StepRecord};
pub use hc::{hc_subgraph, hc_subgraph_in, HC_NODE_BUDGET};
pub use stablechi::stablechi_extract;
pub use thresholds::{
    broom_ks_value, check_cocktail_chain, cocktail_chain, cocktail_ks_value, kappa_chi_value, path2_value,
    stable_chi_order_value, stable_chi_value, CocktailChain, Threshold, ThresholdKind,
};

use serde::Serialize;

use crate::detectors::is_induced_embedding;
use crate::error::{Error, Result};
use crate::graph::{mask_of, parse_graph6, BitIter, FamilySpec, Graph};
use crate::invariants::{chromatic_in, chromatic_number_with_budget, RamseyTable, DEFAULT_BUDGET};

#[derive(Clone, Debug)]
pub struct ExtractOptions {
    /// Run below the chromatic-number threshold. Results are then only
    /// guaranteed to be sound, not to exist.
    pub force: bool,
    pub budget: u64,
    pub ramsey: RamseyTable,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            force: false,
            budget: DEFAULT_BUDGET,
            ramsey: RamseyTable::bundled().clone(),
        }
    }
}

impl ExtractOptions {
    pub fn forced() -> Self {
        ExtractOptions {
            force: true,
            ..ExtractOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum Certificate {
    /// A stable set whose common neighbourhood has chromatic number
    /// `chi_common`.
    RichStableSet {
        stable_set: Vec<usize>,
        common: Vec<usize>,
        chi_common: usize,
    },
    /// Vertices of an induced path, in path order.
    InducedPathWitness {
        vertices: Vec<usize>,
        k: usize,
    },
    /// An induced `(k, l)`-broom: `handle[0]` is adjacent to the centre and
    /// `handle` continues as a path of `k-1` vertices.
    InducedBroomWitness {
        center: usize,
        handle: Vec<usize>,
        leaves: Vec<usize>,
        k: usize,
        l: usize,
    },
    /// An induced copy of the tree `target` (graph6); `map[i]` is the image
    /// of its vertex `i`.
    TreeEmbedding {
        target: String,
        map: Vec<usize>,
    },
    /// A stable set with more than `a` vertices.
    AlphaExceeds {
        a: usize,
        stable_set: Vec<usize>,
    },
    HypothesisUnmet {
        threshold: Threshold,
        actual_chi: usize,
    },
}

fn fail(detail: impl Into<String>) -> Error {
    Error::invariant("certificate revalidation", detail)
}

fn is_stable(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

/// Independent check of a certificate against `g`. `q` is the chromatic
/// bound a rich stable set has to beat.
pub fn revalidate(g: &Graph, cert: &Certificate, q: usize, budget: u64) -> Result<()> {
    match cert {
        Certificate::RichStableSet {
            stable_set,
            common,
            chi_common,
        } => {
            g.check_vertices(stable_set)?;
            if !is_stable(g, stable_set) {
                return Err(fail("stable set has an edge or a repeated vertex"));
            }
            let expected: Vec<usize> = (0..g.n())
                .filter(|&x| stable_set.iter().all(|&v| g.has_edge(v, x)))
                .collect();
            if &expected != common {
                return Err(fail("common neighbourhood does not match"));
            }
            let chi = chromatic_number_with_budget(&g.induced(common)?, budget)?;
            if chi != *chi_common || chi <= q {
                return Err(fail(format!("common neighbourhood has chi {chi}, need > {q}")));
            }
            Ok(())
        }
        Certificate::InducedPathWitness { vertices, k } => {
            let path = FamilySpec::Path(*k).generate()?;
            if !is_induced_embedding(g, &path, vertices) {
                return Err(fail("vertices do not induce the path"));
            }
            Ok(())
        }
        Certificate::InducedBroomWitness {
            center,
            handle,
            leaves,
            k,
            l,
        } => {
            let broom = FamilySpec::Broom(*k, *l).generate()?;
            let mut map = vec![*center];
            map.extend(leaves);
            map.extend(handle);
            if !is_induced_embedding(g, &broom, &map) {
                return Err(fail("vertices do not induce the broom"));
            }
            Ok(())
        }
        Certificate::TreeEmbedding { target, map } => {
            g.check_vertices(map)?;
            let tree = parse_graph6(target)?;
            if !is_induced_embedding(g, &tree, map) {
                return Err(fail("map is not an induced embedding of the tree"));
            }
            Ok(())
        }
        Certificate::AlphaExceeds { a, stable_set } => {
            g.check_vertices(stable_set)?;
            if stable_set.len() <= *a || !is_stable(g, stable_set) {
                return Err(fail("stable set too small or not stable"));
            }
            Ok(())
        }
        Certificate::HypothesisUnmet { threshold, actual_chi } => {
            let chi = chromatic_number_with_budget(g, budget)?;
            if chi != *actual_chi || threshold.is_met_by(chi) {
                return Err(fail("chromatic number meets the threshold"));
            }
            Ok(())
        }
    }
}

/// Calls `f` on every stable `s`-subset of `G[within]` in lexicographic
/// order until it returns `true`; returns that subset.
pub(crate) fn find_stable_subset(
    masks: &[u64],
    within: u64,
    s: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<Option<Vec<usize>>> {
    fn rec(
        masks: &[u64],
        cand: u64,
        s: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if cur.len() == s {
            return f(cur);
        }
        let mut rest = cand;
        while rest != 0 {
            if (rest.count_ones() as usize) < s - cur.len() {
                return Ok(false);
            }
            let v = rest.trailing_zeros() as usize;
            rest &= !(1 << v);
            cur.push(v);
            if rec(masks, rest & !masks[v], s, cur, f)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    let mut cur = Vec::with_capacity(s);
    if rec(masks, within, s, &mut cur, f)? {
        Ok(Some(cur))
    } else {
        Ok(None)
    }
}

/// Lexicographically first stable `s`-subset of `G[within]`.
pub(crate) fn first_stable_subset(masks: &[u64], within: u64, s: usize) -> Option<Vec<usize>> {
    find_stable_subset(masks, within, s, &mut |_| Ok(true)).expect("infallible callback")
}

/// `RichStableSet` for `set` if its common neighbourhood has chromatic
/// number above `q`.
pub(crate) fn rich_certificate(
    masks: &[u64],
    n: usize,
    set: &[usize],
    q: usize,
    budget: u64,
) -> Result<Option<Certificate>> {
    let common_mask = set.iter().fold(crate::graph::full_mask(n), |m, &v| m & masks[v]);
    let chi = chromatic_in(masks, common_mask, budget)?;
    if chi > q {
        return Ok(Some(Certificate::RichStableSet {
            stable_set: set.to_vec(),
            common: BitIter(common_mask).collect(),
            chi_common: chi,
        }));
    }
    Ok(None)
}

/// Lexicographically least stable `s`-set whose common neighbourhood has
/// chromatic number above `q`, by complete search.
pub fn find_rich_stable_set_bruteforce(g: &Graph, s: usize, q: usize, budget: u64) -> Result<Option<Certificate>> {
    g.require_word_sized("find_rich_stable_set_bruteforce")?;
    let masks = g.masks();
    let all = mask_of(&(0..g.n()).collect::<Vec<_>>());
    let mut found = None;
    find_stable_subset(&masks, all, s, &mut |set| {
        found = rich_certificate(&masks, g.n(), set, q, budget)?;
        Ok(found.is_some())
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let c4 = gen("Cycle(4)");
        let cert = find_rich_stable_set_bruteforce(&c4, 2, 0, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert_eq!(
            cert,
            Certificate::RichStableSet {
                stable_set: vec![0, 2],
                common: vec![1, 3],
                chi_common: 1
            }
        );
        revalidate(&c4, &cert, 0, DEFAULT_BUDGET).unwrap();
        assert!(
            find_rich_stable_set_bruteforce(&gen("Complete(5)"), 2, 0, DEFAULT_BUDGET)
                .unwrap()
                .is_none()
        );
        let pet = gen("Petersen");
        let cert = find_rich_stable_set_bruteforce(&pet, 2, 0, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        // vertices 0 and 2 are at distance two and share the single neighbour 1
        assert_eq!(
            cert,
            Certificate::RichStableSet {
                stable_set: vec![0, 2],
                common: vec![1],
                chi_common: 1
            }
        );
    }

    #[test]
    fn revalidation_rejects_bad_certificates() {
        let c4 = gen("Cycle(4)");
        let bad = Certificate::RichStableSet {
            stable_set: vec![0, 1],
            common: vec![],
            chi_common: 0,
        };
        assert!(revalidate(&c4, &bad, 0, DEFAULT_BUDGET).is_err());
        let path = Certificate::InducedPathWitness {
            vertices: vec![0, 1, 2, 3],
            k: 4,
        };
        assert!(revalidate(&c4, &path, 0, DEFAULT_BUDGET).is_err());
        let p5 = gen("Path(5)");
        let ok = Certificate::InducedPathWitness {
            vertices: vec![4, 3, 2, 1, 0],
            k: 5,
        };
        revalidate(&p5, &ok, 0, DEFAULT_BUDGET).unwrap();
    }

    #[test]
    fn stable_subsets_in_lex_order() {
        let c5 = gen("Cycle(5)");
        let masks = c5.masks();
        let mut seen = Vec::new();
        find_stable_subset(&masks, 0b11111, 2, &mut |s| {
            seen.push(s.to_vec());
            Ok(false)
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]);
    }
}
