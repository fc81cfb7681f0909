//! Parameter sweeps that cross-check the evaluators and identities, plus an
//! audit of the published example formulas for `m = 2, 3, 4`.
//!
//! A failed check is data, not an error: every sweep returns a
//! [`VerificationReport`] whose entries are in canonical parameter order no
//! matter how the work was scheduled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{
    coefficient_polynomial, mk_sum_parks_wills, mk_sum_parks_wills_extended, mk_sum_stirling,
    termwise_identity,
};
use crate::error::Result;
use crate::kbonacci::mk_sum_oracle;
use crate::numeric::{factorial, falling_factorial, format_rational, pow2, rational_from_int, rational_make, Rational};
use crate::polynomial::KPolynomial;
use crate::pyramid::{build_pyramid, row_numerators};
use crate::stirling::{falling_factorial_coeffs, shared_table, StirlingTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        parameters: &[(&str, i64)],
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Self {
            name: name.into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status,
            expected,
            actual,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        Self { checks, passed, failed }
    }

    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        Self::from_checks(reports.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width text table, one row per check, followed by the tally.
    pub fn to_table(&self) -> String {
        let params: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
            })
            .collect();
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let par_w = params.iter().map(String::len).max().unwrap_or(10).max(10);
        let mut out = format!("{:<6} {:<name_w$} {:<par_w$} expected | actual\n", "status", "check", "parameters");
        for (c, p) in self.checks.iter().zip(&params) {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let detail = if c.passed() {
                truncate(&c.expected)
            } else {
                format!("{} | {}", truncate(&c.expected), truncate(&c.actual))
            };
            let _ = writeln!(out, "{status:<6} {:<name_w$} {p:<par_w$} {detail}", c.name);
        }
        let _ = writeln!(out, "passed: {}, failed: {}", self.passed, self.failed);
        out
    }
}

fn truncate(s: &str) -> String {
    const MAX: usize = 60;
    if s.len() <= MAX {
        s.to_string()
    } else {
        format!("{}...({} chars)", &s[..MAX], s.len())
    }
}

fn show<T: ToString>(r: Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn grid(k_max: u32, m_max: u32) -> Vec<(u32, u32)> {
    (1..=k_max).flat_map(|k| (1..=m_max).map(move |m| (k, m))).collect()
}

/// Oracle vs binomial form vs Stirling form, one check per `(k, m)`.
pub fn cross_check(k_max: u32, m_max: u32) -> VerificationReport {
    let checks = grid(k_max, m_max)
        .into_par_iter()
        .map(|(k, m)| {
            let oracle = show(mk_sum_oracle(k, m));
            let pw = show(mk_sum_parks_wills(k, m));
            let st = show(mk_sum_stirling(k, m));
            let actual = if pw == oracle && st == oracle {
                oracle.clone()
            } else {
                format!("binomial={pw}; stirling={st}")
            };
            Check::new("three-way mk-sum", &[("k", k.into()), ("m", m.into())], oracle, actual)
        })
        .collect();
    VerificationReport::from_checks(checks)
}

/// Block identity for every `1 <= i <= m <= m_max`, `k <= k_max`.
pub fn lemma_sweep(k_max: u32, m_max: u32) -> VerificationReport {
    let triples: Vec<(u32, u32, u32)> = (1..=k_max)
        .flat_map(|k| (1..=m_max).flat_map(move |m| (1..=m).map(move |i| (k, m, i))))
        .collect();
    let checks = triples
        .into_par_iter()
        .map(|(k, m, i)| {
            let params = [("k", k.into()), ("m", m.into()), ("i", i.into())];
            match termwise_identity(m, i, k) {
                Ok(t) => Check::new("termwise identity", &params, t.lhs.to_string(), t.rhs.to_string()),
                Err(e) => Check::new("termwise identity", &params, "ok", format!("error: {e}")),
            }
        })
        .collect();
    VerificationReport::from_checks(checks)
}

/// Both sides of the lemma exactly as stated in its published form:
///
/// `sum_{j=0}^{m-1} (-1)^j ((m-j)k - 1)_j / j!`  vs
/// `sum_{i=1}^{m} sum_{j=1}^{i} (-1)^(j-1) S(i,j) k^(j-1) (m-i)^j / (i-1)!`.
///
/// The right side carries `(m-i)^j` where the corrected block identity needs
/// `(m-i+1)^(j-1)`, so the two sides disagree (already at `m = k = 2`).
pub fn literal_lemma_sides(m: u32, k: u32) -> (Rational, Rational) {
    let (m64, k64) = (i64::from(m), i64::from(k));
    let mut lhs = Rational::zero();
    for j in 0..m64 {
        let term = rational_make(falling_factorial((m64 - j) * k64 - 1, j as u64), factorial(j as u64))
            .expect("factorial is nonzero");
        if j % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let table = shared_table(m as usize);
    let mut rhs = Rational::zero();
    for i in 1..=m64 {
        for j in 1..=i {
            let num = table.unsigned(i as usize, j as usize)
                * num_traits::pow(BigInt::from(k64), (j - 1) as usize)
                * num_traits::pow(BigInt::from(m64 - i), j as usize);
            let term = rational_make(num, factorial((i - 1) as u64)).expect("factorial is nonzero");
            if (j - 1) % 2 == 0 {
                rhs += term;
            } else {
                rhs -= term;
            }
        }
    }
    (lhs, rhs)
}

/// Check entry for the literal lemma at `(m, k)`; expected to fail.
pub fn literal_lemma_probe(m: u32, k: u32) -> Check {
    let (lhs, rhs) = literal_lemma_sides(m, k);
    Check::new(
        "lemma as published, (m-i)^j form",
        &[("k", k.into()), ("m", m.into())],
        lhs.to_string(),
        rhs.to_string(),
    )
}

/// Floor-bounded binomial sum vs the version extended to `j = m - 1`.
pub fn bound_equivalence_check(k_max: u32, m_max: u32) -> VerificationReport {
    let checks = grid(k_max, m_max)
        .into_par_iter()
        .map(|(k, m)| {
            Check::new(
                "truncated vs extended binomial bound",
                &[("k", k.into()), ("m", m.into())],
                show(mk_sum_parks_wills(k, m)),
                show(mk_sum_parks_wills_extended(k, m)),
            )
        })
        .collect();
    VerificationReport::from_checks(checks)
}

/// Falling-factorial coefficients vs signed Stirling numbers for `n <= n_max`,
/// and unsigned row sums vs `n!` for `n <= row_sum_max`.
pub fn stirling_duality_check(n_max: usize, row_sum_max: usize) -> VerificationReport {
    let table = StirlingTable::new(n_max.max(row_sum_max));
    let mut checks = Vec::new();
    for n in 0..=n_max {
        let expected: Vec<String> = (0..=n).map(|j| table.signed(n, j).to_string()).collect();
        let poly = falling_factorial_coeffs(n);
        let actual: Vec<String> = (0..=n).map(|j| format_rational(&poly.coeff(j), false)).collect();
        checks.push(Check::new(
            "falling factorial coefficients = signed Stirling row",
            &[("n", n as i64)],
            expected.join(","),
            actual.join(","),
        ));
    }
    for n in 0..=row_sum_max {
        let sum: BigInt = table.row(n).iter().sum();
        checks.push(Check::new(
            "unsigned Stirling row sum = n!",
            &[("n", n as i64)],
            factorial(n as u64).to_string(),
            sum.to_string(),
        ));
    }
    VerificationReport::from_checks(checks)
}

/// Pyramid structure: the `1/2^r` diagonal, divisibility by `(r-1)! 2^r`, and
/// the last row's numerators being an unsigned Stirling row.
pub fn pyramid_check(m_max: u32) -> VerificationReport {
    let mut checks = Vec::new();
    for m in 1..=m_max {
        let pyramid = match build_pyramid(m) {
            Ok(p) => p,
            Err(e) => {
                checks.push(Check::new("pyramid construction", &[("m", m.into())], "ok", format!("error: {e}")));
                continue;
            }
        };
        for r in 1..=m {
            let params = [("m", i64::from(m)), ("r", i64::from(r))];
            let right = pyramid.row(r).and_then(|row| row.last()).map(|q| q.to_string());
            let expected = rational_make(1, pow2(u64::from(r))).map(|q| q.to_string());
            checks.push(Check::new(
                "rightmost entry = 1/2^r",
                &params,
                show(expected),
                right.unwrap_or_default(),
            ));
            let divisible = row_numerators(m, r).map(|_| "integral");
            checks.push(Check::new(
                "row scaled by (r-1)! 2^r",
                &params,
                "integral",
                show(divisible),
            ));
        }
        let stirling: Vec<String> = shared_table(m as usize)
            .row(m as usize)
            .iter()
            .skip(1)
            .rev()
            .map(BigInt::to_string)
            .collect();
        let numerators = row_numerators(m, m).map(|nr| {
            nr.numerators.iter().map(|n| n.magnitude().to_string()).collect::<Vec<_>>().join(",")
        });
        checks.push(Check::new(
            "last-row numerators = unsigned Stirling row",
            &[("m", m.into())],
            stirling.join(","),
            show(numerators),
        ));
    }
    VerificationReport::from_checks(checks)
}

/// Every identity sweep bounded by `k_max`, `m_max`. All entries are expected
/// to pass.
pub fn full_verification(k_max: u32, m_max: u32) -> VerificationReport {
    VerificationReport::merge([
        cross_check(k_max, m_max),
        bound_equivalence_check(k_max, m_max),
        lemma_sweep(k_max, m_max),
        stirling_duality_check(15, 20),
        pyramid_check(m_max),
    ])
}

/// A published closed form for one `m`: block `i` holds the coefficients of
/// the polynomial multiplying `2^((m-i+1)k)`, leading coefficient first.
pub struct PublishedFormula {
    pub m: u32,
    pub blocks: &'static [&'static [(i64, i64)]],
}

/// The example formulas for `m = 2, 3, 4`, transcribed coefficient by
/// coefficient as printed.
pub const PUBLISHED_FORMULAS: [PublishedFormula; 3] = [
    PublishedFormula {
        m: 2,
        blocks: &[&[(1, 2)], &[(-1, 4), (1, 4)]],
    },
    PublishedFormula {
        m: 3,
        blocks: &[&[(1, 2)], &[(-1, 2), (1, 4)], &[(1, 16), (-3, 16), (1, 8)]],
    },
    PublishedFormula {
        m: 4,
        blocks: &[
            &[(1, 2)],
            &[(1, 1), (1, 4)],
            &[(1, 4), (-3, 8), (1, 8)],
            &[(-1, 96), (1, 16), (-11, 96), (1, 16)],
        ],
    },
];

impl PublishedFormula {
    pub fn polynomial(&self, block: usize) -> KPolynomial {
        let coeffs = self.blocks[block]
            .iter()
            .rev()
            .map(|&(n, d)| rational_make(n, d).expect("fixture denominators are nonzero"))
            .collect();
        KPolynomial::new(coeffs)
    }

    /// The printed formula evaluated at `k`.
    pub fn evaluate(&self, k: u32) -> Rational {
        (0..self.blocks.len())
            .map(|b| {
                let shift = u64::from(self.m - b as u32) * u64::from(k);
                self.polynomial(b).eval_int(k) * rational_from_int(pow2(shift))
            })
            .sum()
    }
}

/// Compares each printed block against the computed coefficient polynomial,
/// then evaluates each printed formula against the oracle for `k = 1..=6`.
/// The `m = 4` formula's `8^k` block (printed `k + 1/4`, computed
/// `-3/4 k + 1/4`) shows up as failures here.
pub fn audit_published_formulas() -> VerificationReport {
    let mut checks = Vec::new();
    for f in &PUBLISHED_FORMULAS {
        for b in 0..f.blocks.len() {
            let i = b as u32 + 1;
            let base = 1u64 << (f.m - b as u32);
            checks.push(Check::new(
                format!("published m={} formula, {base}^k block", f.m),
                &[("m", f.m.into()), ("i", i.into())],
                show(coefficient_polynomial(f.m, i)),
                f.polynomial(b).to_string(),
            ));
        }
        for k in 1..=6u32 {
            checks.push(Check::new(
                format!("published m={} formula vs oracle", f.m),
                &[("k", k.into()), ("m", f.m.into())],
                show(mk_sum_oracle(k, f.m)),
                format_rational(&f.evaluate(k), false),
            ));
        }
    }
    VerificationReport::from_checks(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_check_sizes_and_values() {
        let r = cross_check(12, 12);
        assert_eq!(r.checks.len(), 144);
        assert!(r.all_passed());
        let one = cross_check(1, 1);
        assert_eq!(one.checks.len(), 1);
        assert_eq!(one.checks[0].actual, "1");
        let r = cross_check(2, 4);
        let c = r.checks.iter().find(|c| c.parameters["k"] == 2 && c.parameters["m"] == 4).unwrap();
        assert_eq!(c.expected, "54");
        assert!(c.passed());
    }

    #[test]
    fn canonical_order() {
        let r = cross_check(3, 3);
        let order: Vec<(i64, i64)> = r.checks.iter().map(|c| (c.parameters["k"], c.parameters["m"])).collect();
        let mut sorted = order.clone();
        sorted.sort();
        assert_eq!(order, sorted);
    }

    #[test]
    fn lemma_sweeps() {
        assert!(lemma_sweep(12, 12).all_passed());
        let one = lemma_sweep(1, 1);
        assert_eq!(one.checks.len(), 1);
        assert_eq!((one.checks[0].expected.as_str(), one.checks[0].actual.as_str()), ("1", "1"));
    }

    #[test]
    fn literal_lemma_fails_at_two_two() {
        let (lhs, rhs) = literal_lemma_sides(2, 2);
        assert_eq!(lhs, Rational::zero());
        assert_eq!(rhs, rational_from_int(1));
        let c = literal_lemma_probe(2, 2);
        assert_eq!(c.status, Status::Fail);
        assert_eq!((c.expected.as_str(), c.actual.as_str()), ("0", "1"));
    }

    #[test]
    fn bound_equivalence() {
        assert!(bound_equivalence_check(12, 12).all_passed());
        let r = bound_equivalence_check(2, 4);
        let c = r.checks.iter().find(|c| c.parameters["k"] == 2 && c.parameters["m"] == 4).unwrap();
        assert_eq!((c.expected.as_str(), c.actual.as_str()), ("54", "54"));
        let r = bound_equivalence_check(5, 1);
        assert!(r.all_passed());
    }

    #[test]
    fn audit_pattern() {
        let r = audit_published_formulas();
        let failed: Vec<&Check> = r.failures().collect();
        // m=4, block 2 coefficient mismatch, plus the m=4 evaluation at every k
        assert!(failed.iter().all(|c| c.parameters["m"] == 4));
        let block = failed.iter().find(|c| c.parameters.get("i") == Some(&2)).expect("8^k flag");
        assert_eq!(block.expected, "-3/4k + 1/4");
        assert_eq!(block.actual, "k + 1/4");
        assert_eq!(failed.iter().filter(|c| c.parameters.contains_key("i")).count(), 1);
        let at_two = failed.iter().find(|c| c.parameters.get("k") == Some(&2)).unwrap();
        assert_eq!((at_two.expected.as_str(), at_two.actual.as_str()), ("54", "278"));
    }

    #[test]
    fn other_sweeps_pass() {
        assert!(stirling_duality_check(15, 20).all_passed());
        assert!(pyramid_check(12).all_passed());
    }

    #[test]
    fn json_is_deterministic() {
        let a = full_verification(4, 4).to_json();
        let b = full_verification(4, 4).to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["failed"], 0);
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0]["parameters"]["k"].is_i64());
    }

    #[test]
    fn table_tally() {
        let r = audit_published_formulas();
        let t = r.to_table();
        assert!(t.contains("FAIL"));
        assert!(t.trim_end().ends_with(&format!("passed: {}, failed: {}", r.passed, r.failed)));
        assert_eq!(r.passed + r.failed, r.checks.len());
    }
}
