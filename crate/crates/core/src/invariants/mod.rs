//! Exact graph parameters and the predicates built on them.

mod connectivity;
mod exact;
mod ramsey;
mod sparse;

pub use connectivity::{a_connectivity, components, is_a_connected, ConnectivityWitness};
pub use exact::{
    chromatic_in, chromatic_number, chromatic_number_with_budget, clique_number, colour_in, complement_masks,
    degeneracy, max_clique, max_clique_in, max_stable_in, max_stable_set, optimal_colouring, stability_number,
    DEFAULT_BUDGET,
};
pub use ramsey::{ramsey, Exactness, RamseyTable, RamseyValue};
pub use sparse::{
    edge_pair_count, exceeds_density, is_ct_sparse, is_ct_sparse_naive, is_dense_pair, sample_ct_sparse, DensePair,
    SparsenessVerdict, SPARSE_EXHAUSTIVE_LIMIT, SPARSE_NAIVE_LIMIT,
};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{full_mask, Graph};
use crate::scalar::{fmt_ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub chi: usize,
    pub omega: usize,
    pub alpha: usize,
    pub degeneracy: usize,
}

pub fn exact_invariants(g: &Graph) -> Result<Invariants> {
    exact_invariants_with_budget(g, DEFAULT_BUDGET)
}

pub fn exact_invariants_with_budget(g: &Graph, budget: u64) -> Result<Invariants> {
    g.require_word_sized("exact_invariants")?;
    Ok(Invariants {
        chi: chromatic_number_with_budget(g, budget)?,
        omega: clique_number(g)?,
        alpha: stability_number(g)?,
        degeneracy: degeneracy(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsChiVerdict {
    pub dense: bool,
    /// First vertex whose non-neighbourhood has chromatic number at least
    /// `eps * chi(G)`.
    pub violating_vertex: Option<usize>,
    pub chi: usize,
}

/// Whether every vertex's non-neighbours induce a subgraph of chromatic
/// number strictly below `eps * chi(G)`.
pub fn is_eps_chi_dense(g: &Graph, eps: &Rational, budget: u64) -> Result<EpsChiVerdict> {
    if *eps <= Rational::zero() {
        return Err(Error::parameter("eps", format!("need eps > 0, got {}", fmt_ratio(eps))));
    }
    g.require_word_sized("is_eps_chi_dense")?;
    let masks = g.masks();
    let all = full_mask(g.n());
    let chi = chromatic_in(&masks, all, budget)?;
    for v in 0..g.n() {
        let non = all & !masks[v] & !(1u64 << v);
        let sub = chromatic_in(&masks, non, budget)?;
        // sub < eps * chi  <=>  sub * den < num * chi
        if BigInt::from(sub) * eps.denom() >= eps.numer() * BigInt::from(chi) {
            return Ok(EpsChiVerdict {
                dense: false,
                violating_vertex: Some(v),
                chi,
            });
        }
    }
    Ok(EpsChiVerdict {
        dense: true,
        violating_vertex: None,
        chi,
    })
}
