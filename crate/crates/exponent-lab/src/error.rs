//! Error type shared across the workbench.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision of {0} bits is below the supported minimum of 64")]
    UnsupportedPrecision(u32),

    #[error("pi^{0} exceeds the supported exponent range (k must be 1..=64)")]
    ExponentOutOfRange(u32),

    #[error("base {0} is invalid (need base >= 2)")]
    InvalidBase(u32),

    #[error("rational fixture has zero denominator")]
    ZeroDenominator,

    #[error("precision ceiling of {max_digits} digits reached while {context}")]
    PrecisionCeiling { max_digits: u64, context: String },

    #[error("expression did not stabilize to {target_digits} digits after {doublings} precision doublings")]
    NoConvergence { target_digits: u32, doublings: u32 },

    #[error("z is within 2^(-{half_prec}) of a multiple of pi; raise precision or use the limit value")]
    NearSingularity { half_prec: u32 },

    #[error("comparison tie: intervals overlap at the working precision ({context})")]
    UnresolvedTie { context: String },

    #[error("requested {requested} terms but only {verified} are certified")]
    PrefixTooShort { requested: usize, verified: usize },

    #[error("argument out of range: {0}")]
    Domain(String),

    #[error("working precision too low: {0}")]
    PrecisionTooLow(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures that the pipeline treats as "raise precision and retry".
    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::PrecisionCeiling { .. }
                | Error::NoConvergence { .. }
                | Error::NearSingularity { .. }
                | Error::UnresolvedTie { .. }
                | Error::PrecisionTooLow(_)
        )
    }
}
