//! Stirling numbers of the first kind and falling-factorial expansions.
//!
//! `S(n, j)` is the unsigned number (permutations of `n` with `j` cycles),
//! built from `S(n, j) = (n-1) S(n-1, j) + S(n-1, j-1)` with `S(0, 0) = 1`.
//! The signed number is `s(n, j) = (-1)^(n-j) S(n, j)`, which is the
//! coefficient of `x^j` in `(x)_n = x (x-1) ... (x-n+1)`.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::{rational_from_int, UnboundedInt};
use crate::polynomial::KPolynomial;

/// Triangle of unsigned Stirling numbers `S(n, j)` for `0 <= j <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<UnboundedInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            for j in 1..=n {
                let carry = prev.get(j).map(|s| s * (n - 1)).unwrap_or_default();
                row[j] = carry + &prev[j - 1];
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, j)`; zero for `j > n`. Panics if `n > max_n`.
    pub fn unsigned(&self, n: usize, j: usize) -> UnboundedInt {
        self.rows[n].get(j).cloned().unwrap_or_default()
    }

    pub fn signed(&self, n: usize, j: usize) -> UnboundedInt {
        let s = self.unsigned(n, j);
        if j <= n && (n - j) % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// `[S(n, 0), ..., S(n, n)]`.
    pub fn row(&self, n: usize) -> &[UnboundedInt] {
        &self.rows[n]
    }
}

static SHARED: Mutex<Option<Arc<StirlingTable>>> = Mutex::new(None);

/// Process-wide table covering at least rows `0..=min_n`. Grown on demand and
/// never mutated once handed out.
pub fn shared_table(min_n: usize) -> Arc<StirlingTable> {
    let mut guard = SHARED.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.as_ref() {
        if t.max_n() >= min_n {
            return Arc::clone(t);
        }
    }
    // grow with headroom so sweeps do not rebuild on every new row
    let size = min_n.max(32).next_power_of_two();
    let table = Arc::new(StirlingTable::new(size));
    *guard = Some(Arc::clone(&table));
    table
}

pub fn stirling_unsigned(n: usize, j: usize) -> UnboundedInt {
    if j > n {
        return BigInt::zero();
    }
    shared_table(n).unsigned(n, j)
}

pub fn stirling_signed(n: usize, j: usize) -> UnboundedInt {
    if j > n {
        return BigInt::zero();
    }
    shared_table(n).signed(n, j)
}

/// `[S(n, 1), ..., S(n, n)]`, or `[1]` for `n = 0`.
pub fn stirling_row(n: usize) -> Vec<UnboundedInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    shared_table(n).row(n)[1..].to_vec()
}

/// `(x)_n` expanded by multiplying out its linear factors.
pub fn falling_factorial_coeffs(n: usize) -> KPolynomial {
    (0..n).fold(KPolynomial::one(), |acc, t| &acc * &KPolynomial::linear_root(t as u64))
}

/// `(ck - 1)(ck - 2) ... (ck - (i-1))` as a polynomial in `k`, read off the
/// Stirling table: the coefficient of `k^(j-1)` is `s(i, j) c^(j-1)`.
/// Equivalently `(x)_i / x` at `x = ck`.
pub fn shifted_falling_poly(i: usize, c: u64) -> KPolynomial {
    assert!(i >= 1, "shifted_falling_poly needs i >= 1");
    let table = shared_table(i);
    let c = BigInt::from(c);
    let mut power = BigInt::one();
    let mut coeffs = Vec::with_capacity(i);
    for j in 1..=i {
        coeffs.push(rational_from_int(table.signed(i, j) * &power));
        power *= &c;
    }
    KPolynomial::new(coeffs)
}
