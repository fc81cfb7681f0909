//! Wall-clock comparison of the three mk-sum evaluators.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::closed_forms::{mk_sum_parks_wills, mk_sum_stirling};
use crate::error::{require_positive, Error, Result};
use crate::kbonacci::mk_sum_oracle;
use crate::numeric::UnboundedInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    ParksWills,
    Stirling,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Oracle, Method::ParksWills, Method::Stirling];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::ParksWills => "parks-wills",
            Method::Stirling => "stirling",
        }
    }

    pub fn evaluate(self, k: u32, m: u32) -> Result<UnboundedInt> {
        match self {
            Method::Oracle => mk_sum_oracle(k, m),
            Method::ParksWills => mk_sum_parks_wills(k, m),
            Method::Stirling => mk_sum_stirling(k, m),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodTiming {
    pub method: Method,
    #[serde(serialize_with = "as_secs")]
    pub min: Duration,
    #[serde(serialize_with = "as_secs")]
    pub mean: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub k: u32,
    pub m: u32,
    pub repetitions: u32,
    pub value: UnboundedInt,
    pub timings: Vec<MethodTiming>,
}

impl BenchReport {
    pub fn digits(&self) -> usize {
        self.value.magnitude().to_string().len()
    }

    pub fn timing(&self, method: Method) -> Option<&MethodTiming> {
        self.timings.iter().find(|t| t.method == method)
    }
}

/// Times each evaluator `repetitions` times. The three results must agree
/// before any timing is reported; a mismatch is an [`Error::Inconsistency`].
pub fn bench(k: u32, m: u32, repetitions: u32) -> Result<BenchReport> {
    require_positive("k", k)?;
    require_positive("m", m)?;
    require_positive("repetitions", repetitions)?;

    let mut values = Vec::with_capacity(Method::ALL.len());
    let mut timings = Vec::with_capacity(Method::ALL.len());
    for method in Method::ALL {
        let mut samples = Vec::with_capacity(repetitions as usize);
        let mut value = None;
        for _ in 0..repetitions {
            let start = Instant::now();
            let v = method.evaluate(k, m)?;
            samples.push(start.elapsed());
            value = Some(v);
        }
        let total: Duration = samples.iter().sum();
        timings.push(MethodTiming {
            method,
            min: samples.iter().min().copied().unwrap_or_default(),
            mean: total / repetitions,
        });
        values.push((method, value.expect("at least one repetition")));
    }

    let (_, reference) = &values[0];
    for (method, v) in &values[1..] {
        if v != reference {
            return Err(Error::Inconsistency(format!(
                "{} disagrees with the oracle at k={k}, m={m}",
                method.name()
            )));
        }
    }
    let value = values.swap_remove(0).1;
    Ok(BenchReport { k, m, repetitions, value, timings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_benches_agree() {
        let r = bench(1, 1000, 1).unwrap();
        assert_eq!(r.value, BigInt::from(1000));
        let r = bench(2, 1, 1).unwrap();
        assert_eq!(r.value, BigInt::from(2));
        assert_eq!(r.timings.len(), 3);
        assert!(bench(2, 2, 0).is_err());
    }
}
