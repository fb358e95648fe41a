//! Scalar abstraction for bound arithmetic.
//!
//! Every theorem threshold, the skeleton growth function and the counting
//! bounds of the sparse-pair lemmas are written once against [`Scalar`].
//! The exact instantiation ([`Rational`]) is what every check uses; the
//! `f64` instantiation exists for quick reporting and sanity comparisons.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for all threshold comparisons.
pub type Rational = BigRational;

/// Ordered field operations needed by the bound formulas.
pub trait Scalar: Num + Clone + PartialOrd + fmt::Debug {
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    /// Smallest integer `>= self`, if it fits in a `u64` and is non-negative.
    fn ceil_u64(&self) -> Option<u64>;
    /// Largest integer `<= self`.
    fn floor_bigint(&self) -> BigInt;
    fn to_f64(&self) -> f64;

    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.clone())
    }
    fn ceil_u64(&self) -> Option<u64> {
        if self.is_negative() {
            return None;
        }
        self.ceil().to_integer().to_u64()
    }
    fn floor_bigint(&self) -> BigInt {
        self.floor().to_integer()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i128> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }
    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.to_i128().expect("integer exceeds i128"))
    }
    fn ceil_u64(&self) -> Option<u64> {
        if self.is_negative() {
            return None;
        }
        u64::try_from(self.ceil().to_integer()).ok()
    }
    fn floor_bigint(&self) -> BigInt {
        BigInt::from(self.floor().to_integer())
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::INFINITY)
    }
    fn ceil_u64(&self) -> Option<u64> {
        if *self < 0.0 || !self.is_finite() || *self > u64::MAX as f64 {
            return None;
        }
        Some(self.ceil() as u64)
    }
    fn floor_bigint(&self) -> BigInt {
        BigInt::from(self.floor() as i128)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Exact rational from a non-negative integer count.
pub fn int(v: u64) -> Rational {
    Ratio::from_integer(BigInt::from(v))
}

/// Renders a rational as `p/q` (the denominator is always present).
pub fn fmt_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or a decimal such as `0.25` into an exact rational.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::parameter("rational", format!("cannot parse `{text}` as p/q"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::parameter("rational", "zero denominator"));
        }
        return Ok(Ratio::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let digits = format!("{whole}{frac}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        let q = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Ratio::new(p, q));
    }
    let p: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(p))
}

/// `x > y * (num/den)` decided in integers (all operands non-negative).
pub fn exceeds_fraction(x: u64, y: u64, frac: &Rational) -> bool {
    BigInt::from(x) * frac.denom() > BigInt::from(y) * frac.numer()
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}
