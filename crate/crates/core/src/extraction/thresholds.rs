//! Chromatic-number thresholds of the extraction theorems.
//!
//! The value formulas are generic over [`Scalar`]; [`Threshold`] packages
//! the exact rational value with the parameters and the exactness of the
//! Ramsey number it was computed from.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::{Exactness, RamseyTable};
use crate::scalar::{binomial, fmt_ratio, Rational, Scalar};

/// `(2 s^(k-3))^(m-1) (4s+1) R`.
pub fn cocktail_ks_value<S: Scalar>(m: u64, s: u64, k: u64, r: u64) -> S {
    let s_ = S::from_int(s as i64);
    let base = S::from_int(2) * s_.powi(k as i64 - 3);
    base.powi(m as i64 - 1) * S::from_int(4 * s as i64 + 1) * S::from_int(r as i64)
}

/// `s^(k-3) (2q + 7sR - 7s)`.
pub fn path2_value<S: Scalar>(s: u64, k: u64, q: &S, r: u64) -> S {
    let s_ = S::from_int(s as i64);
    let seven_s = S::from_int(7) * s_.clone();
    s_.powi(k as i64 - 3) * (S::from_int(2) * q.clone() + seven_s.clone() * S::from_int(r as i64) - seven_s)
}

/// `7 s^k l^(s+1) (q + R)`.
pub fn broom_ks_value<S: Scalar>(k: u64, l: u64, s: u64, q: u64, r: u64) -> S {
    S::from_int(7)
        * S::from_int(s as i64).powi(k as i64)
        * S::from_int(l as i64).powi(s as i64 + 1)
        * S::from_int((q + r) as i64)
}

/// `C(alpha, s) q + alpha^(s-1) R`.
pub fn stable_chi_value<S: Scalar>(s: u64, q: u64, alpha: u64, r: u64) -> S {
    S::from_bigint(&(binomial(alpha, s) * BigInt::from(q)))
        + S::from_int(alpha as i64).powi(s as i64 - 1) * S::from_int(r as i64)
}

/// `4a - 1`.
pub fn kappa_chi_value<S: Scalar>(a: u64) -> S {
    S::from_int(4 * a as i64 - 1)
}

/// Order bound for the second form of the stable-set lemma:
/// `a C(a, s) q + a^s R`.
pub fn stable_chi_order_value<S: Scalar>(a: u64, s: u64, q: u64, r: u64) -> S {
    S::from_bigint(&(binomial(a, s) * BigInt::from(a) * BigInt::from(q)))
        + S::from_int(a as i64).powi(s as i64) * S::from_int(r as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ThresholdKind {
    CocktailKS { m: u64, s: u64, k: u64, omega: u64 },
    Path2 { s: u64, k: u64, q: u64, omega: u64 },
    BroomKS { k: u64, l: u64, s: u64, q: u64, omega: u64 },
    StableChi { s: u64, q: u64, alpha: u64, omega: u64 },
    KappaChi { a: u64 },
}

fn ser_ratio<S: Serializer>(r: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&fmt_ratio(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub kind: ThresholdKind,
    #[serde(serialize_with = "ser_ratio")]
    pub value: Rational,
    pub exactness: Exactness,
}

fn need(field: &str, value: u64, min: u64) -> Result<()> {
    if value < min {
        return Err(Error::parameter(field, format!("must be >= {min}, got {value}")));
    }
    Ok(())
}

impl Threshold {
    pub fn new(kind: ThresholdKind, table: &RamseyTable) -> Result<Threshold> {
        let ramsey = |s: u64, omega: u64| table.value(s, omega + 1);
        let (value, exactness) = match kind {
            ThresholdKind::CocktailKS { m, s, k, omega } => {
                need("m", m, 1)?;
                need("s", s, 2)?;
                need("k", k, 3)?;
                let r = ramsey(s, omega);
                (cocktail_ks_value::<Rational>(m, s, k, r.value), r.exactness)
            }
            ThresholdKind::Path2 { s, k, q, omega } => {
                need("s", s, 2)?;
                need("k", k, 5)?;
                need("q", q, 1)?;
                let r = ramsey(s, omega);
                let q = Rational::from_int(q as i64);
                (path2_value::<Rational>(s, k, &q, r.value), r.exactness)
            }
            ThresholdKind::BroomKS { k, l, s, q, omega } => {
                need("k", k, 2)?;
                need("l", l, 1)?;
                need("s", s, 2)?;
                need("q", q, 1)?;
                let r = ramsey(s, omega);
                (broom_ks_value::<Rational>(k, l, s, q, r.value), r.exactness)
            }
            ThresholdKind::StableChi { s, q, alpha, omega } => {
                need("s", s, 2)?;
                let r = ramsey(s, omega);
                (stable_chi_value::<Rational>(s, q, alpha, r.value), r.exactness)
            }
            ThresholdKind::KappaChi { a } => {
                need("a", a, 1)?;
                (kappa_chi_value::<Rational>(a), Exactness::Exact)
            }
        };
        Ok(Threshold { kind, value, exactness })
    }

    pub fn bundled(kind: ThresholdKind) -> Result<Threshold> {
        Threshold::new(kind, RamseyTable::bundled())
    }

    /// `chi >= value`.
    pub fn is_met_by(&self, chi: usize) -> bool {
        Rational::from_int(chi as i64) >= self.value
    }

    /// `value - chi`, positive when the hypothesis is unmet.
    pub fn margin(&self, chi: usize) -> Rational {
        self.value.clone() - Rational::from_int(chi as i64)
    }

    /// Smallest integer chromatic number meeting the threshold, if it fits.
    pub fn min_chi(&self) -> Option<u64> {
        self.value.ceil().to_integer().to_u64()
    }
}

/// The inductive bound behind the cocktail-party theorem:
/// with `a = 2 s^(k-3)` and `c = 7as(R-1) / (2(a-1))`, level `j` bounds the
/// chromatic number of a `{P_k, co-jK_s}`-free graph by
/// `a^(j-1) (R-1+c) - c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocktailChain<S> {
    pub a: S,
    pub c: S,
    /// `bounds[j-1]` is the level-`j` bound.
    pub bounds: Vec<S>,
}

pub fn cocktail_chain<S: Scalar>(m: u64, s: u64, k: u64, r: u64) -> CocktailChain<S> {
    let a = S::from_int(2) * S::from_int(s as i64).powi(k as i64 - 3);
    let one = S::one();
    let r_ = S::from_int(r as i64);
    let c = S::from_int(7) * a.clone() * S::from_int(s as i64) * (r_.clone() - one.clone())
        / (S::from_int(2) * (a.clone() - one.clone()));
    let bounds = (1..=m)
        .map(|j| a.powi(j as i64 - 1) * (r_.clone() - one.clone() + c.clone()) - c.clone())
        .collect();
    CocktailChain { a, c, bounds }
}

/// Checks every inequality of the inductive argument in exact arithmetic:
/// the level-1 bound is `R - 1`; for `j >= 2` the step threshold with
/// `q = floor(bound_(j-1))` is at most `bound_j`; the final bound is below
/// the closed form.
pub fn check_cocktail_chain(m: u64, s: u64, k: u64, r: u64) -> bool {
    let chain = cocktail_chain::<Rational>(m, s, k, r);
    let one = Rational::from_int(1);
    if chain.bounds[0] != Rational::from_int(r as i64) - one.clone() {
        return false;
    }
    for j in 1..chain.bounds.len() {
        let q = Rational::from_bigint(&chain.bounds[j - 1].floor_bigint());
        if path2_value::<Rational>(s, k, &q, r) > chain.bounds[j] {
            return false;
        }
    }
    let last = chain.bounds.last().expect("m >= 1").clone();
    last + chain.c.clone() < cocktail_ks_value::<Rational>(m, s, k, r)
        && (r == 1
            || one.clone() + chain.c.clone() / (Rational::from_int(r as i64) - one.clone())
                <= Rational::from_int(4 * s as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn worked_values() {
        let t = Threshold::bundled(ThresholdKind::CocktailKS {
            m: 1,
            s: 2,
            k: 5,
            omega: 2,
        })
        .unwrap();
        assert_eq!(t.value, rat(27, 1));
        let t = Threshold::bundled(ThresholdKind::Path2 {
            s: 2,
            k: 5,
            q: 1,
            omega: 2,
        })
        .unwrap();
        assert_eq!(t.value, rat(120, 1));
        let t = Threshold::bundled(ThresholdKind::StableChi {
            s: 2,
            q: 0,
            alpha: 2,
            omega: 1,
        })
        .unwrap();
        assert_eq!(t.value, rat(4, 1));
        let t = Threshold::bundled(ThresholdKind::KappaChi { a: 3 }).unwrap();
        assert_eq!(t.value, rat(11, 1));
    }

    #[test]
    fn exactness_follows_ramsey() {
        let t = Threshold::bundled(ThresholdKind::CocktailKS {
            m: 1,
            s: 5,
            k: 5,
            omega: 4,
        })
        .unwrap();
        assert_eq!(t.exactness, Exactness::UpperBound);
        let t = Threshold::bundled(ThresholdKind::CocktailKS {
            m: 1,
            s: 3,
            k: 5,
            omega: 2,
        })
        .unwrap();
        assert_eq!(t.exactness, Exactness::Exact);
    }

    #[test]
    fn parameter_ranges() {
        assert!(Threshold::bundled(ThresholdKind::Path2 {
            s: 2,
            k: 4,
            q: 1,
            omega: 2
        })
        .is_err());
        assert!(Threshold::bundled(ThresholdKind::Path2 {
            s: 1,
            k: 5,
            q: 1,
            omega: 2
        })
        .is_err());
        assert!(Threshold::bundled(ThresholdKind::BroomKS {
            k: 1,
            l: 1,
            s: 2,
            q: 1,
            omega: 2
        })
        .is_err());
    }

    #[test]
    fn float_and_exact_agree() {
        let exact: Rational = broom_ks_value(3, 2, 2, 1, 3);
        let float: f64 = broom_ks_value(3, 2, 2, 1, 3);
        assert_eq!(exact, rat(7 * 8 * 8 * 4, 1));
        assert!((Scalar::to_f64(&exact) - float).abs() < 1e-9);
    }

    #[test]
    fn chain_inequalities_hold_on_a_grid() {
        for m in 1..=4 {
            for s in 2..=4 {
                for k in 5..=7 {
                    for r in 1..=30 {
                        assert!(check_cocktail_chain(m, s, k, r), "m={m} s={s} k={k} R={r}");
                    }
                }
            }
        }
    }
}
