use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument out of domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{function}: series diverges ({detail})")]
    Divergence {
        function: &'static str,
        detail: String,
    },

    #[error("{what}: no convergence (estimate {value:e}, error estimate {error_est:e})")]
    NotConverged {
        what: &'static str,
        value: f64,
        error_est: f64,
    },

    #[error("integrand returned a non-finite value at x = {x:e}")]
    NonFinite { x: f64 },

    #[error("|z| = {modulus} exceeds the series radius {limit}")]
    RadiusViolation { modulus: f64, limit: f64 },

    #[error("{0}: pole at the origin")]
    Pole(&'static str),

    #[error("singular points {first} and {second} overlap for local radius {radius}")]
    OverlappingSingularities {
        first: String,
        second: String,
        radius: f64,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("negative radicand {value:e} for {operator} at n = {n}; a quadrature route failed")]
    NegativeRadicand {
        operator: &'static str,
        n: u64,
        value: f64,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
