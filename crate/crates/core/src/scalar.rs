//! Numeric abstraction shared by the LP machinery.
//!
//! Everything that compares fractional values (feasibility checks, the
//! rounding threshold, the simplex oracle) is written against [`Scalar`] so
//! the same code runs in `f64` and in exact rational arithmetic.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    /// Slack allowed when checking `lhs >= rhs`. Zero for exact types.
    fn tolerance() -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self >= other` up to [`Scalar::tolerance`].
    fn approx_ge(&self, other: &Self) -> bool {
        self.clone() + Self::tolerance() >= *other
    }

    fn is_exact() -> bool {
        Self::tolerance().is_zero()
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
}

/// Parses `"1"`, `"0.25"`, `"1/3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Some(BigRational::new(num, den));
    }
    let num: BigInt = text.parse().ok()?;
    Some(BigRational::from_integer(num))
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
