//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::numeric::{format_rational, rational_from_int, Rational, UnboundedInt};

/// Polynomial in a single indeterminate (usually `k`); `coeffs[p]` multiplies
/// the `p`-th power. The highest stored coefficient is never zero, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KPolynomial {
    coeffs: Vec<Rational>,
}

impl KPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<UnboundedInt>,
    {
        Self::new(coeffs.into_iter().map(rational_from_int).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: impl Into<UnboundedInt>) -> Self {
        Self::new(vec![-rational_from_int(a), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of the `p`-th power (zero past the degree).
    pub fn coeff(&self, p: usize) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: impl Into<UnboundedInt>) -> Rational {
        self.eval(&rational_from_int(x))
    }

    /// Drops the constant term and lowers every power by one. Exact division by
    /// the indeterminate when the constant term is zero.
    pub fn shift_down(&self) -> Self {
        Self::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Substitutes `c * x` for `x`: coefficient `p` picks up `c^p`.
    pub fn dilate(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::new(out)
    }
}

impl Add for &KPolynomial {
    type Output = KPolynomial;

    fn add(self, rhs: &KPolynomial) -> KPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPolynomial::new((0..n).map(|p| self.coeff(p) + rhs.coeff(p)).collect())
    }
}

impl Mul for &KPolynomial {
    type Output = KPolynomial;

    fn mul(self, rhs: &KPolynomial) -> KPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return KPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPolynomial::new(out)
    }
}

impl Neg for &KPolynomial {
    type Output = KPolynomial;

    fn neg(self) -> KPolynomial {
        KPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Writes descending powers in the indeterminate `k`, e.g. `1/16k^2 - 3/16k + 1/8`.
impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let mag = format_rational(&c.abs(), false);
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_mag = p == 0 || !c.abs().is_one();
            if show_mag {
                f.write_str(&mag)?;
            }
            match p {
                0 => {}
                1 => f.write_str("k")?,
                _ => write!(f, "k^{p}")?,
            }
        }
        Ok(())
    }
}
