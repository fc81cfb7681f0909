//! Arbitrary-precision integers, normalized rationals, factorials and
//! binomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Signed arbitrary-precision integer.
pub type UnboundedInt = BigInt;

/// Exact fraction, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the normalized rational `num / den`.
pub fn rational_make(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num.into(), den))
}

/// Lifts an integer into a rational with denominator 1.
pub fn rational_from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n!`
pub fn factorial(n: u64) -> UnboundedInt {
    (2..=n).fold(BigInt::one(), |acc, t| acc * t)
}

/// `2^e` by shifting.
pub fn pow2(e: u64) -> UnboundedInt {
    BigInt::one() << e
}

/// Falling factorial `(x)_j = x (x-1) ... (x-j+1)` at an integer point.
pub fn falling_factorial(x: i64, j: u64) -> UnboundedInt {
    (0..j).fold(BigInt::one(), |acc, t| acc * (BigInt::from(x) - t))
}

/// `C(n, j)`, with the convention `C(n, j) = 0` for `j > n`.
///
/// Negative arguments are rejected: nothing in the closed forms produces them,
/// so one reaching here is a caller bug.
pub fn binomial(n: i64, j: i64) -> Result<UnboundedInt> {
    if n < 0 || j < 0 {
        return Err(Error::NegativeBinomial { n, j });
    }
    if j > n {
        return Ok(BigInt::zero());
    }
    let j = j.min(n - j);
    // acc * (n - t) is always divisible by (t + 1) at step t
    let mut acc = BigInt::one();
    for t in 0..j {
        acc = acc * (n - t) / (t + 1);
    }
    Ok(acc)
}

/// Whether a rational is an integer, returning it if so.
pub fn as_integer(q: &Rational) -> Option<UnboundedInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Formats a rational as `num/den` in lowest terms, or just `num` when the
/// denominator is 1 and `always_fraction` is false.
pub fn format_rational(q: &Rational, always_fraction: bool) -> String {
    if q.is_integer() && !always_fraction {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
