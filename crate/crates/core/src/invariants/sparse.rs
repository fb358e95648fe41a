//! Edge counts between vertex sets and `(c, t)`-sparseness.
//!
//! `G` is `(c, t)`-sparse when every pair `A, B` with `|A|, |B| >= t` has
//! `e(A, B) <= (1 - c)|A||B|`, where `e` counts ordered pairs.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};
use crate::scalar::{fmt_ratio, Rational};

/// Largest order accepted by the exhaustive sparseness check.
pub const SPARSE_EXHAUSTIVE_LIMIT: usize = 20;

/// Largest order accepted by the naive all-pairs oracle.
pub const SPARSE_NAIVE_LIMIT: usize = 10;

/// Two vertex sets with more edges between them than a sparseness bound allows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensePair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsenessVerdict {
    pub sparse: bool,
    /// `false` for the sampling mode, whose `sparse: true` only means that no
    /// violation was found.
    pub exhaustive: bool,
    pub violating_pair: Option<DensePair>,
}

/// `|{(a, b) in A x B : ab in E(G)}|`. `A` and `B` may overlap.
pub fn edge_pair_count(g: &Graph, a: &[usize], b: &[usize]) -> u64 {
    let mut in_b = vec![false; g.n()];
    for &v in b {
        in_b[v] = true;
    }
    a.iter()
        .map(|&x| g.neighbours(x).filter(|&y| in_b[y]).count() as u64)
        .sum()
}

fn check_params(c: &Rational, t: usize) -> Result<()> {
    if *c <= Rational::zero() || *c >= Rational::one() {
        return Err(Error::parameter("c", format!("need 0 < c < 1, got {}", fmt_ratio(c))));
    }
    if t == 0 {
        return Err(Error::parameter("t", "need t >= 1"));
    }
    Ok(())
}

/// `count > (1 - c) * a * b`, exactly.
pub fn exceeds_density(count: u64, a: usize, b: usize, c: &Rational) -> bool {
    let slack = Rational::one() - c;
    BigInt::from(count) * slack.denom() > BigInt::from(a as u64 * b as u64) * slack.numer()
}

/// Checks a claimed violation of `(c, t)`-sparseness.
pub fn is_dense_pair(g: &Graph, c: &Rational, t: usize, pair: &DensePair) -> bool {
    let distinct = |s: &[usize]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() == s.len() && v.iter().all(|&x| x < g.n())
    };
    distinct(&pair.a)
        && distinct(&pair.b)
        && pair.a.len() >= t
        && pair.b.len() >= t
        && edge_pair_count(g, &pair.a, &pair.b) == pair.count
        && exceeds_density(pair.count, pair.a.len(), pair.b.len(), c)
}

/// For a fixed `A`, the densest `B` of each size takes the vertices with the
/// most neighbours in `A`. Returns the first violating `B`, if any.
fn best_partner(g: &Graph, a_mask: u64, a_len: usize, c: &Rational, t: usize) -> Option<DensePair> {
    let n = g.n();
    let mut by_deg: Vec<(u32, usize)> = (0..n).map(|v| ((g.row64(v) & a_mask).count_ones(), v)).collect();
    by_deg.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut sum = 0u64;
    for (m, &(d, _)) in by_deg.iter().enumerate() {
        sum += d as u64;
        let size = m + 1;
        if size >= t && exceeds_density(sum, a_len, size, c) {
            let mut b: Vec<usize> = by_deg[..size].iter().map(|&(_, v)| v).collect();
            b.sort_unstable();
            return Some(DensePair {
                a: BitIter(a_mask).collect(),
                b,
                count: sum,
            });
        }
    }
    None
}

/// Exhaustive `(c, t)`-sparseness check for graphs with at most 20 vertices.
pub fn is_ct_sparse(g: &Graph, c: &Rational, t: usize) -> Result<SparsenessVerdict> {
    check_params(c, t)?;
    if g.n() > SPARSE_EXHAUSTIVE_LIMIT {
        return Err(Error::capability(
            "is_ct_sparse",
            format!("exhaustive mode supports n <= {SPARSE_EXHAUSTIVE_LIMIT}, got {}", g.n()),
        ));
    }
    let n = g.n();
    for a_mask in 1u64..1 << n {
        let a_len = a_mask.count_ones() as usize;
        if a_len < t {
            continue;
        }
        if let Some(pair) = best_partner(g, a_mask, a_len, c, t) {
            return Ok(SparsenessVerdict {
                sparse: false,
                exhaustive: true,
                violating_pair: Some(pair),
            });
        }
    }
    Ok(SparsenessVerdict {
        sparse: true,
        exhaustive: true,
        violating_pair: None,
    })
}

/// Plain enumeration of every pair `(A, B)`; an oracle for small graphs.
pub fn is_ct_sparse_naive(g: &Graph, c: &Rational, t: usize) -> Result<SparsenessVerdict> {
    check_params(c, t)?;
    if g.n() > SPARSE_NAIVE_LIMIT {
        return Err(Error::capability(
            "is_ct_sparse_naive",
            format!("naive mode supports n <= {SPARSE_NAIVE_LIMIT}, got {}", g.n()),
        ));
    }
    let n = g.n();
    for a_mask in 1u64..1 << n {
        if (a_mask.count_ones() as usize) < t {
            continue;
        }
        let a: Vec<usize> = BitIter(a_mask).collect();
        for b_mask in 1u64..1 << n {
            if (b_mask.count_ones() as usize) < t {
                continue;
            }
            let b: Vec<usize> = BitIter(b_mask).collect();
            let count = edge_pair_count(g, &a, &b);
            if exceeds_density(count, a.len(), b.len(), c) {
                return Ok(SparsenessVerdict {
                    sparse: false,
                    exhaustive: true,
                    violating_pair: Some(DensePair { a, b, count }),
                });
            }
        }
    }
    Ok(SparsenessVerdict {
        sparse: true,
        exhaustive: true,
        violating_pair: None,
    })
}

/// Refutation-only check for graphs up to 64 vertices: draws `samples`
/// random sets `A` (ChaCha8, `seed`) and pairs each with its densest `B`.
pub fn sample_ct_sparse(g: &Graph, c: &Rational, t: usize, samples: usize, seed: u64) -> Result<SparsenessVerdict> {
    check_params(c, t)?;
    g.require_word_sized("sample_ct_sparse")?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a_mask = rng.next_u64() & crate::graph::full_mask(n);
        let a_len = a_mask.count_ones() as usize;
        if a_len < t {
            continue;
        }
        if let Some(pair) = best_partner(g, a_mask, a_len, c, t) {
            return Ok(SparsenessVerdict {
                sparse: false,
                exhaustive: false,
                violating_pair: Some(pair),
            });
        }
    }
    Ok(SparsenessVerdict {
        sparse: true,
        exhaustive: false,
        violating_pair: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;
    use crate::scalar::rat;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn ordered_pair_counts() {
        let k2 = gen("Complete(2)");
        assert_eq!(edge_pair_count(&k2, &[0, 1], &[0, 1]), 2);
        let k3 = gen("Complete(3)");
        assert_eq!(edge_pair_count(&k3, &[0, 1], &[1, 2]), 3);
        let k6 = gen("Complete(6)");
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(edge_pair_count(&k6, &all, &all), 30);
    }

    #[test]
    fn complete_graph_is_dense() {
        let k5 = gen("Complete(5)");
        let v = is_ct_sparse(&k5, &rat(1, 4), 2).unwrap();
        assert!(!v.sparse);
        let pair = v.violating_pair.unwrap();
        assert!(is_dense_pair(&k5, &rat(1, 4), 2, &pair));
        assert!(is_ct_sparse(&gen("Empty(8)"), &rat(1, 4), 2).unwrap().sparse);
    }

    #[test]
    fn parameter_checks() {
        let g = gen("Path(3)");
        assert!(is_ct_sparse(&g, &rat(0, 1), 1).is_err());
        assert!(is_ct_sparse(&g, &rat(1, 1), 1).is_err());
        assert!(is_ct_sparse(&g, &rat(1, 2), 0).is_err());
        assert!(is_ct_sparse(&gen("Empty(21)"), &rat(1, 2), 1).is_err());
    }

    #[test]
    fn agrees_with_naive_on_random_graphs() {
        for seed in 0..20 {
            let g = FamilySpec::random(7, 1, 2, seed).generate().unwrap();
            for (c, t) in [(rat(1, 8), 2), (rat(1, 2), 3), (rat(1, 3), 1)] {
                let fast = is_ct_sparse(&g, &c, t).unwrap();
                let slow = is_ct_sparse_naive(&g, &c, t).unwrap();
                assert_eq!(fast.sparse, slow.sparse, "seed {seed}");
            }
        }
    }

    #[test]
    fn sampling_finds_obvious_violations() {
        let k10 = gen("Complete(10)");
        let v = sample_ct_sparse(&k10, &rat(1, 4), 3, 100, 1).unwrap();
        assert!(!v.sparse && !v.exhaustive);
    }
}
