use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain: {0}")]
    Domain(&'static str),

    #[error("pole: the denominator vanishes at the requested argument")]
    Pole,

    #[error("overflow: {0}")]
    Overflow(&'static str),

    #[error("range: |z| = {modulus} exceeds the series limit {limit}")]
    Range { modulus: f64, limit: f64 },

    #[error("continued fraction did not converge within depth {depth}")]
    Convergence { depth: usize },

    #[error("oracle integrity: methods disagree by {agreement:e} at z = {x} + {y}i")]
    OracleIntegrity { x: f64, y: f64, agreement: f64 },

    #[error("non-finite argument")]
    NonFinite,

    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
