//! k-generalized Fibonacci numbers and their exact prefix sums.
//!
//! The sequence is seeded with `f_0 = 1` and `f_n = 0` for `n < 0`; every later
//! term is the sum of the `k` terms before it. The direct prefix sum computed
//! here is the ground truth the closed forms are checked against.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{require_positive, Result};
use crate::numeric::UnboundedInt;

/// Parameters of a k-bonacci question: width `k`, block count `m`, index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KbonacciQuery {
    pub k: u32,
    pub m: u32,
    pub n: i64,
}

impl KbonacciQuery {
    pub fn term(k: u32, n: i64) -> Self {
        Self { k, m: 1, n }
    }

    /// Number of terms in the block sum, `m * k`.
    pub fn block_len(&self) -> u64 {
        u64::from(self.m) * u64::from(self.k)
    }
}

/// The first `terms.len()` terms of the width-`k` sequence, from index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbonacciSequence {
    pub k: u32,
    pub terms: Vec<UnboundedInt>,
}

/// Iterator over `f_0, f_1, ...` using a sliding-window running sum: each step
/// pushes the window total and drops the term that falls out of the window.
#[derive(Debug, Clone)]
pub struct KbonacciIter {
    k: usize,
    window: VecDeque<BigInt>,
    window_sum: BigInt,
}

impl KbonacciIter {
    pub fn new(k: u32) -> Result<Self> {
        require_positive("k", k)?;
        Ok(Self {
            k: k as usize,
            window: VecDeque::with_capacity(k as usize + 1),
            window_sum: BigInt::zero(),
        })
    }
}

impl Iterator for KbonacciIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let next = if self.window.is_empty() {
            BigInt::one()
        } else {
            self.window_sum.clone()
        };
        self.window_sum += &next;
        self.window.push_back(next.clone());
        if self.window.len() > self.k {
            if let Some(old) = self.window.pop_front() {
                self.window_sum -= old;
            }
        }
        Some(next)
    }
}

/// `f_n` for the query's `k` and `n`.
pub fn kbonacci_term(query: KbonacciQuery) -> Result<UnboundedInt> {
    let mut it = KbonacciIter::new(query.k)?;
    if query.n < 0 {
        return Ok(BigInt::zero());
    }
    Ok(it.nth(query.n as usize).expect("sequence is infinite"))
}

pub fn kbonacci_sequence(k: u32, count: usize) -> Result<KbonacciSequence> {
    let terms = KbonacciIter::new(k)?.take(count).collect();
    Ok(KbonacciSequence { k, terms })
}

/// `f_0 + f_1 + ... + f_{count-1}`, by direct generation.
pub fn prefix_sum_oracle(k: u32, count: u64) -> Result<UnboundedInt> {
    let it = KbonacciIter::new(k)?;
    Ok(it.take(count as usize).fold(BigInt::zero(), |acc, t| acc + t))
}

/// Sum of the first `m * k` terms by direct generation.
pub fn mk_sum_oracle(k: u32, m: u32) -> Result<UnboundedInt> {
    require_positive("m", m)?;
    prefix_sum_oracle(k, u64::from(m) * u64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Definitional sum over the previous `k` terms, no window tricks.
    fn naive(k: usize, count: usize) -> Vec<BigInt> {
        let mut t: Vec<BigInt> = Vec::with_capacity(count);
        for n in 0..count {
            let v = if n == 0 {
                BigInt::one()
            } else {
                (1..=k).filter(|&i| i <= n).map(|i| t[n - i].clone()).sum()
            };
            t.push(v);
        }
        t
    }

    #[test]
    fn terms() {
        assert_eq!(kbonacci_term(KbonacciQuery::term(2, -1)).unwrap(), BigInt::zero());
        assert_eq!(kbonacci_term(KbonacciQuery::term(2, 5)).unwrap(), BigInt::from(8));
        assert_eq!(kbonacci_term(KbonacciQuery::term(4, 4)).unwrap(), BigInt::from(8));
        assert!(kbonacci_term(KbonacciQuery::term(0, 4)).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(kbonacci_sequence(2, 8).unwrap().terms, ints(&[1, 1, 2, 3, 5, 8, 13, 21]));
        assert_eq!(kbonacci_sequence(3, 6).unwrap().terms, ints(&[1, 1, 2, 4, 7, 13]));
        assert_eq!(kbonacci_sequence(1, 4).unwrap().terms, ints(&[1, 1, 1, 1]));
        assert!(kbonacci_sequence(2, 0).unwrap().terms.is_empty());
        assert!(kbonacci_sequence(0, 3).is_err());
    }

    #[test]
    fn prefix_sums() {
        assert_eq!(prefix_sum_oracle(2, 4).unwrap(), BigInt::from(7));
        assert_eq!(prefix_sum_oracle(2, 0).unwrap(), BigInt::zero());
        assert_eq!(prefix_sum_oracle(5, 5).unwrap(), BigInt::from(16));
        assert!(prefix_sum_oracle(0, 5).is_err());
        assert!(mk_sum_oracle(2, 0).is_err());
    }

    #[test]
    fn sliding_window_matches_definition() {
        for k in 1..=10 {
            let fast = kbonacci_sequence(k as u32, 201).unwrap().terms;
            let slow = naive(k, 201);
            assert_eq!(fast, slow, "k={k}");
            // f_n = 2 f_{n-1} - f_{n-k-1}
            for n in 2..=200usize {
                let back = if n > k { slow[n - k - 1].clone() } else { BigInt::zero() };
                assert_eq!(slow[n], BigInt::from(2) * &slow[n - 1] - back, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn doubling_prefix_and_monotonicity() {
        for k in 1..=20u32 {
            let t = kbonacci_sequence(k, 120).unwrap().terms;
            for (n, term) in t.iter().enumerate().take(k as usize + 1).skip(1) {
                assert_eq!(term, &(BigInt::one() << (n - 1)));
            }
            assert!(t.windows(2).all(|w| w[1] >= w[0]));
            assert!(t.iter().all(|x| x > &BigInt::zero()));
            assert_eq!(prefix_sum_oracle(k, u64::from(k)).unwrap(), BigInt::one() << (k - 1));
        }
    }

    #[test]
    fn width_one_is_constant() {
        for m in 0..=100u64 {
            assert_eq!(prefix_sum_oracle(1, m).unwrap(), BigInt::from(m));
        }
    }
}
