//! Scalar abstraction shared by the series and recursion layers.
//!
//! Everything here is exact when instantiated with [`Rational`]; the same code
//! runs over `f64`/`f32` for quick approximate evaluation.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// A field element the series code can work with.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Equality up to the rounding the scalar incurs; exact for rationals.
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for Rational {}

impl Scalar for f64 {
    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}

impl Scalar for f32 {
    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-4 * self.abs().max(other.abs()).max(1.0)
    }
}

/// `num/den` with an explicit denominator, the outward format for every rational.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Inverse of [`format_rational`]; also accepts a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}
