use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are recorded in a [`crate::verify::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("binomial arguments must be nonnegative, got C({n}, {j})")]
    NegativeBinomial { n: i64, j: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{name} = {value} is out of range {lo}..={hi}")]
    OutOfRange {
        name: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    /// A closed form produced a non-integer or the evaluators disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidArgument(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}
