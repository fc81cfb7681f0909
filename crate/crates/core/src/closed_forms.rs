//! Closed forms for the sum of the first `m*k` terms of the width-`k` sequence.
//!
//! Two routes are implemented:
//!
//! * the alternating binomial sum
//!   `sum_{j=0}^{floor(n/(k+1))} (-1)^j C(n - jk, j) 2^(n - j(k+1))`, which is
//!   the prefix sum through index `n`, taken at `n = mk - 1`;
//! * the Stirling double sum
//!   `sum_{i=1}^{m} 2^((m-i+1)k) sum_{j=1}^{i} (-1)^(j-1) S(i,j) ((m-i+1)k)^(j-1) / ((i-1)! 2^i)`.
//!
//! Block `i` of the Stirling form corresponds to binomial index `j = i - 1`:
//! both carry the power `2^((m-i+1)k)`, and their remaining factors agree term
//! by term (see [`termwise_identity`]).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{require_positive, Error, Result};
use crate::numeric::{
    as_integer, binomial, factorial, pow2, rational_from_int, rational_make, Rational,
    UnboundedInt,
};
use crate::polynomial::KPolynomial;
use crate::stirling::shared_table;

/// `sum_{t=0}^{n} f_t` via the alternating binomial sum.
pub fn parks_wills_prefix(n: u64, k: u32) -> Result<UnboundedInt> {
    require_positive("k", k)?;
    let k = u64::from(k);
    let upper = n / (k + 1);
    let mut total = BigInt::zero();
    for j in 0..=upper {
        let c = binomial((n - j * k) as i64, j as i64)?;
        let term = c << (n - j * (k + 1));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Binomial form at `n = mk - 1`, with the floor-bounded index range.
pub fn mk_sum_parks_wills(k: u32, m: u32) -> Result<UnboundedInt> {
    require_positive("k", k)?;
    require_positive("m", m)?;
    parks_wills_prefix(u64::from(m) * u64::from(k) - 1, k)
}

/// Binomial form at `n = mk - 1` with the index range extended to `j = m-1`
/// and the power of two split as `2^((m-j)k) * 2^(-j-1)`. Indices past the
/// floor bound contribute `C(n, j) = 0` with `j > n`.
pub fn mk_sum_parks_wills_extended(k: u32, m: u32) -> Result<UnboundedInt> {
    require_positive("k", k)?;
    require_positive("m", m)?;
    let (k, m) = (u64::from(k), u64::from(m));
    let mut total = Rational::zero();
    for j in 0..m {
        let c = binomial(((m - j) * k) as i64 - 1, j as i64)?;
        let term = rational_make(c << ((m - j) * k), pow2(j + 1))?;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    as_integer(&total).ok_or_else(|| {
        Error::Inconsistency(format!("extended binomial sum is not an integer: {total}"))
    })
}

/// Theorem-form double sum in exact rational arithmetic. The total is
/// required to be an integer.
pub fn mk_sum_stirling(k: u32, m: u32) -> Result<UnboundedInt> {
    require_positive("k", k)?;
    require_positive("m", m)?;
    let table = shared_table(m as usize);
    let kk = BigInt::from(k);
    let mut total = Rational::zero();
    for i in 1..=m as usize {
        let c = u64::from(m) - i as u64 + 1;
        let x = BigInt::from(c) * &kk;
        // inner sum over j, as an integer numerator; Horner in x with alternating sign
        let mut inner = BigInt::zero();
        for j in (1..=i).rev() {
            let s = table.unsigned(i, j);
            inner = inner * &x + if (j - 1) % 2 == 0 { s } else { -s };
        }
        let den = factorial(i as u64 - 1) << i;
        total += rational_make(inner << (c * u64::from(k)), den)?;
    }
    as_integer(&total).ok_or_else(|| {
        Error::Inconsistency(format!("Stirling double sum is not an integer: {total}"))
    })
}

/// Polynomial in `k` multiplying `2^((m-i+1)k)`: the coefficient of `k^(j-1)`
/// is `(-1)^(j-1) S(i,j) (m-i+1)^(j-1) / ((i-1)! 2^i)`.
pub fn coefficient_polynomial(m: u32, i: u32) -> Result<KPolynomial> {
    require_positive("m", m)?;
    if i == 0 || i > m {
        return Err(Error::OutOfRange {
            name: "i",
            value: u64::from(i),
            lo: 1,
            hi: u64::from(m),
        });
    }
    let table = shared_table(i as usize);
    let c = BigInt::from(m - i + 1);
    let den = factorial(u64::from(i) - 1) << i;
    let mut power = BigInt::one();
    let mut coeffs = Vec::with_capacity(i as usize);
    for j in 1..=i as usize {
        let s = table.unsigned(i as usize, j) * &power;
        let num = if (j - 1) % 2 == 0 { s } else { -s };
        coeffs.push(rational_make(num, den.clone())?);
        power *= &c;
    }
    Ok(KPolynomial::new(coeffs))
}

/// One block of a [`SumFormula`]: `polynomial(k) * 2^((m - index + 1) k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaBlock {
    pub index: u32,
    pub polynomial: KPolynomial,
}

/// The closed form for fixed `m` as a function of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFormula {
    pub m: u32,
    pub blocks: Vec<FormulaBlock>,
}

impl SumFormula {
    /// Multiplier of `k` in the exponent of block `index`.
    pub fn power_multiplier(&self, index: u32) -> u32 {
        self.m - index + 1
    }
}

pub fn sum_formula(m: u32) -> Result<SumFormula> {
    require_positive("m", m)?;
    let blocks = (1..=m)
        .map(|i| {
            coefficient_polynomial(m, i).map(|polynomial| FormulaBlock { index: i, polynomial })
        })
        .collect::<Result<_>>()?;
    Ok(SumFormula { m, blocks })
}

pub fn evaluate_sum_formula(formula: &SumFormula, k: u32) -> Result<UnboundedInt> {
    require_positive("k", k)?;
    let mut total = Rational::zero();
    for block in &formula.blocks {
        let shift = u64::from(formula.power_multiplier(block.index)) * u64::from(k);
        total += block.polynomial.eval_int(k) * rational_from_int(pow2(shift));
    }
    as_integer(&total).ok_or_else(|| {
        Error::Inconsistency(format!("formula for m={} at k={k} is not an integer", formula.m))
    })
}

/// Both sides of the block-`i` identity linking the two closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermwiseIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

/// Block `i`, with `c = m - i + 1`:
///
/// * `lhs = (-1)^(i-1) C(ck - 1, i - 1)` (binomial side),
/// * `rhs = sum_{j=1}^{i} (-1)^(j-1) S(i,j) (ck)^(j-1) / (i-1)!` (Stirling side).
pub fn termwise_identity(m: u32, i: u32, k: u32) -> Result<TermwiseIdentity> {
    require_positive("m", m)?;
    require_positive("k", k)?;
    if i == 0 || i > m {
        return Err(Error::OutOfRange {
            name: "i",
            value: u64::from(i),
            lo: 1,
            hi: u64::from(m),
        });
    }
    let ck = i64::from(m - i + 1) * i64::from(k);
    let mut lhs = rational_from_int(binomial(ck - 1, i64::from(i) - 1)?);
    if (i - 1) % 2 == 1 {
        lhs = -lhs;
    }

    let table = shared_table(i as usize);
    let x = BigInt::from(ck);
    let mut power = BigInt::one();
    let mut num = BigInt::zero();
    for j in 1..=i as usize {
        let s = table.unsigned(i as usize, j) * &power;
        if (j - 1) % 2 == 0 {
            num += s;
        } else {
            num -= s;
        }
        power *= &x;
    }
    let rhs = rational_make(num, factorial(u64::from(i) - 1))?;
    let equal = lhs == rhs;
    Ok(TermwiseIdentity { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kbonacci::{mk_sum_oracle, prefix_sum_oracle};

    fn q(n: i64, d: i64) -> Rational {
        rational_make(n, d).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_prefix_values() {
        for k in 1..=5 {
            assert_eq!(parks_wills_prefix(0, k).unwrap(), big(1));
        }
        assert_eq!(parks_wills_prefix(3, 2).unwrap(), big(7));
        assert_eq!(parks_wills_prefix(5, 3).unwrap(), big(28));
        assert!(parks_wills_prefix(5, 0).is_err());
    }

    #[test]
    fn binomial_prefix_matches_oracle_for_every_n() {
        for k in 1..=8u32 {
            for n in 0..=80u64 {
                assert_eq!(
                    parks_wills_prefix(n, k).unwrap(),
                    prefix_sum_oracle(k, n + 1).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn block_sums() {
        assert_eq!(mk_sum_parks_wills(2, 2).unwrap(), big(7));
        assert_eq!(mk_sum_parks_wills(2, 1).unwrap(), big(2));
        assert_eq!(mk_sum_parks_wills(3, 2).unwrap(), big(28));
        assert_eq!(mk_sum_stirling(2, 2).unwrap(), big(7));
        assert_eq!(mk_sum_stirling(3, 2).unwrap(), big(28));
        for m in 1..=30 {
            assert_eq!(mk_sum_stirling(1, m).unwrap(), big(i64::from(m)));
        }
        assert!(mk_sum_stirling(0, 2).is_err());
        assert!(mk_sum_parks_wills(2, 0).is_err());
    }

    #[test]
    fn three_way_agreement() {
        for k in 1..=12 {
            for m in 1..=12 {
                let oracle = mk_sum_oracle(k, m).unwrap();
                assert_eq!(mk_sum_parks_wills(k, m).unwrap(), oracle, "k={k} m={m}");
                assert_eq!(mk_sum_parks_wills_extended(k, m).unwrap(), oracle, "k={k} m={m}");
                assert_eq!(mk_sum_stirling(k, m).unwrap(), oracle, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn coefficient_polynomials() {
        for m in 1..=6 {
            assert_eq!(coefficient_polynomial(m, 1).unwrap(), KPolynomial::constant(q(1, 2)));
        }
        assert_eq!(
            coefficient_polynomial(6, 2).unwrap(),
            KPolynomial::new(vec![q(1, 4), q(-5, 4)])
        );
        assert_eq!(
            coefficient_polynomial(3, 3).unwrap(),
            KPolynomial::new(vec![q(1, 8), q(-3, 16), q(1, 16)])
        );
        assert!(matches!(coefficient_polynomial(3, 4), Err(Error::OutOfRange { .. })));
        assert!(matches!(coefficient_polynomial(3, 0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn formulas() {
        let f2 = sum_formula(2).unwrap();
        assert_eq!(f2.blocks.len(), 2);
        assert_eq!(f2.blocks[0].polynomial, KPolynomial::constant(q(1, 2)));
        assert_eq!(f2.blocks[1].polynomial, KPolynomial::new(vec![q(1, 4), q(-1, 4)]));
        let f1 = sum_formula(1).unwrap();
        assert_eq!(f1.blocks, vec![FormulaBlock { index: 1, polynomial: KPolynomial::constant(q(1, 2)) }]);
        let f4 = sum_formula(4).unwrap();
        assert_eq!(f4.blocks[1].polynomial, KPolynomial::new(vec![q(1, 4), q(-3, 4)]));

        assert_eq!(evaluate_sum_formula(&f2, 2).unwrap(), big(7));
        assert_eq!(evaluate_sum_formula(&f1, 5).unwrap(), big(16));
        assert_eq!(evaluate_sum_formula(&f4, 2).unwrap(), big(54));
        assert!(sum_formula(0).is_err());
    }

    #[test]
    fn formula_block_structure() {
        for m in 1..=12 {
            let f = sum_formula(m).unwrap();
            assert_eq!(f.blocks.len(), m as usize);
            for b in &f.blocks {
                assert_eq!(b.polynomial.degree(), Some(b.index as usize - 1));
                assert_eq!(b.polynomial.coeff(0), q(1, 1 << b.index));
            }
            assert_eq!(f.blocks[0].polynomial, KPolynomial::constant(q(1, 2)));
            for k in 1..=12 {
                assert_eq!(evaluate_sum_formula(&f, k).unwrap(), mk_sum_stirling(k, m).unwrap());
            }
        }
    }

    #[test]
    fn termwise_examples() {
        let t = termwise_identity(2, 2, 2).unwrap();
        assert_eq!((t.lhs.clone(), t.rhs.clone(), t.equal), (q(-1, 1), q(-1, 1), true));
        for m in 1..=5 {
            for k in 1..=5 {
                let t = termwise_identity(m, 1, k).unwrap();
                assert_eq!((t.lhs, t.rhs), (q(1, 1), q(1, 1)));
            }
        }
        let t = termwise_identity(4, 4, 2).unwrap();
        assert_eq!((t.lhs, t.rhs, t.equal), (Rational::zero(), Rational::zero(), true));
        assert!(termwise_identity(2, 3, 2).is_err());
    }

    #[test]
    fn termwise_sweep() {
        for m in 1..=12 {
            for i in 1..=m {
                for k in 1..=12 {
                    assert!(termwise_identity(m, i, k).unwrap().equal, "m={m} i={i} k={k}");
                }
            }
        }
    }
}
