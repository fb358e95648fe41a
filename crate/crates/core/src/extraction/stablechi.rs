//! Stable sets with rich common neighbourhood inside a maximum stable set.
//!
//! If no `s`-subset of a maximum stable set `S` has a common neighbourhood
//! of chromatic number above `q`, the vertices outside `S` split by their
//! trace on `S` into few small or low-chromatic parts, which bounds
//! `chi(G)` by `C(|S|, s) q + |S|^(s-1) R(s, omega+1)`.

use num_traits::ToPrimitive;

use super::thresholds::{stable_chi_order_value, Threshold, ThresholdKind};
use super::{find_stable_subset, rich_certificate, Certificate, ExtractOptions};
use crate::error::{Error, Result};
use crate::graph::{full_mask, mask_of, Graph};
use crate::invariants::{chromatic_in, max_clique_in, max_stable_in};
use crate::scalar::Rational;

/// With `a_opt = Some(a)` and `|G| >= a C(a,s) q + a^s R`, a stable set of
/// more than `a` vertices is reported as [`Certificate::AlphaExceeds`]
/// before anything else is tried.
pub fn stablechi_extract(
    g: &Graph,
    s: usize,
    q: usize,
    a_opt: Option<usize>,
    opts: &ExtractOptions,
) -> Result<Certificate> {
    if s < 2 {
        return Err(Error::parameter("s", "need s >= 2"));
    }
    if q < 1 {
        return Err(Error::parameter("q", "need q >= 1"));
    }
    g.require_word_sized("stablechi_extract")?;
    let n = g.n();
    if n == 0 {
        // The null graph meets the threshold C(0,s)q + 0 vacuously.
        return Err(Error::parameter("graph", "need at least one vertex"));
    }
    let masks = g.masks();
    let all = full_mask(n);
    let omega = max_clique_in(&masks, all).len();
    let r = opts.ramsey.value(s as u64, omega as u64 + 1).value;
    let stable = max_stable_in(&masks, all);
    if let Some(a) = a_opt {
        let order_bound: Rational = stable_chi_order_value(a as u64, s as u64, q as u64, r);
        let big_enough = order_bound.ceil().to_integer().to_usize().is_some_and(|b| n >= b);
        if big_enough && stable.len() > a {
            return Ok(Certificate::AlphaExceeds {
                a,
                stable_set: stable[..=a].to_vec(),
            });
        }
    }
    let mut found = None;
    find_stable_subset(&masks, mask_of(&stable), s, &mut |set| {
        found = rich_certificate(&masks, n, set, q, opts.budget)?;
        Ok(found.is_some())
    })?;
    if let Some(cert) = found {
        return Ok(cert);
    }
    let chi = chromatic_in(&masks, all, opts.budget)?;
    let threshold = Threshold::new(
        ThresholdKind::StableChi {
            s: s as u64,
            q: q as u64,
            alpha: stable.len() as u64,
            omega: omega as u64,
        },
        &opts.ramsey,
    )?;
    if !threshold.is_met_by(chi) {
        return Ok(Certificate::HypothesisUnmet {
            threshold,
            actual_chi: chi,
        });
    }
    Err(Error::invariant(
        "stablechi_extract",
        format!("chi = {chi} meets the threshold but no s-subset of a maximum stable set is rich"),
    ))
}
