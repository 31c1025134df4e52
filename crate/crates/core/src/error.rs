use thiserror::Error;

pub type Result<T, E = ZetaError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    /// Argument outside the domain of the requested operation.
    #[error("{operation}: argument {argument} outside domain ({domain})")]
    Domain {
        operation: &'static str,
        argument: f64,
        domain: &'static str,
    },

    #[error("{operation}: argument {argument} is within {guard:e} of the pole at s = 1")]
    PoleProximity {
        operation: &'static str,
        argument: f64,
        guard: f64,
    },

    #[error("index {requested} exceeds table capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("integrand returned {value} at x = {abscissa}")]
    NonFinite { abscissa: f64, value: f64 },

    #[error("integrand does not decay: tail term {term:e} at x = {abscissa:e}")]
    NonDecay { abscissa: f64, term: f64 },

    #[error("no applicable route for s = {argument}")]
    NoApplicableRoute { argument: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("consistency check failed: {what} (gap {gap:e}, allowed {allowed:e})")]
    Consistency {
        what: String,
        gap: f64,
        allowed: f64,
    },

    #[error("value overflows binary64: {0}")]
    Overflow(String),
}

impl ZetaError {
    pub(crate) fn domain(operation: &'static str, argument: f64, domain: &'static str) -> Self {
        ZetaError::Domain {
            operation,
            argument,
            domain,
        }
    }
}
