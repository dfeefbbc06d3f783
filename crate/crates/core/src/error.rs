use thiserror::Error;

/// Errors raised while building problems or running solvers and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("stratum frame is empty")]
    EmptyFrame,

    #[error("duplicate stratum label `{label}`")]
    DuplicateLabel { label: String },

    #[error("column `{field}` has {found} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("stratum `{label}`: `{field}` must be positive and finite, got {value}")]
    NonPositiveParameter {
        label: String,
        field: &'static str,
        value: f64,
    },

    #[error("stratum `{label}`: `{field}` must be non-negative and finite, got {value}")]
    NegativeParameter {
        label: String,
        field: &'static str,
        value: f64,
    },

    #[error("stratum `{label}`: upper bound {upper} exceeds stratum size {size}")]
    BoundExceedsSize {
        label: String,
        upper: f64,
        size: f64,
    },

    #[error("stratum `{label}` has no `{bound}` bound")]
    MissingBound { label: String, bound: &'static str },

    #[error("parameter `{name}` is invalid: {value}")]
    InvalidScalar { name: &'static str, value: f64 },

    #[error("stratum `{label}`: allocation must be positive, got {value}")]
    NonPositiveAllocation { label: String, value: f64 },

    #[error("s(L) is undefined when every stratum is in the take-set")]
    FullTakeSet,

    #[error("stratum `{label}` has A = 0 (zero standard deviation)")]
    ZeroA { label: String },

    #[error("stratum `{label}`: `{field}` must be positive and finite, got {value}")]
    NonPositiveInput {
        label: String,
        field: &'static str,
        value: f64,
    },

    #[error("unknown stratum label `{label}`")]
    UnknownLabel { label: String },

    #[error("problem is infeasible: {detail}")]
    Infeasible { detail: String },

    #[error("{strata} strata exceed the enumeration cap of {cap}")]
    TooLarge { strata: usize, cap: usize },

    #[error("grid oracle supports 2 or 3 strata, got {strata}")]
    UnsupportedDimension { strata: usize },

    #[error("KKT multiplier for stratum `{label}` is negative ({value})")]
    NegativeMultiplier { label: String, value: f64 },

    #[error("subset pair is invalid: {detail}")]
    InvalidPair { detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
