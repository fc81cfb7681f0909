//! Exact sums of the first `m*k` terms of k-generalized Fibonacci sequences.
//!
//! Three independent evaluators are provided: direct generation
//! ([`kbonacci::mk_sum_oracle`]), an alternating binomial sum
//! ([`closed_forms::mk_sum_parks_wills`]) and a double sum over unsigned
//! Stirling numbers of the first kind ([`closed_forms::mk_sum_stirling`]).
//! The Stirling form is also exposed symbolically, as one polynomial in `k`
//! per power `2^((m-i+1)k)`, and arranged into the triangular
//! [`pyramid::Pyramid`] of rational coefficients.

pub mod bench;
pub mod closed_forms;
pub mod error;
pub mod kbonacci;
pub mod numeric;
pub mod polynomial;
pub mod pyramid;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{Rational, UnboundedInt};
pub use polynomial::KPolynomial;
