use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// The exact identities checked by [`crate::exact::verify_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `P_n = C(2n, n)^2 f(n)`.
    ClfRatio,
    /// `f(n) = n!^3 / (2^n (1/2)_n^2) F_n`.
    GeneratingRatio,
    /// The quadratic-transformation form of `f(n)` matches the `3F2` sum.
    QuadraticForm,
    /// The `(-n, -n, 1/2; 1, 1/2-n; -1)` form of `f(n)` matches the `3F2` sum.
    BalancedForm,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::ClfRatio => "P_n = C(2n,n)^2 f(n)",
            Identity::GeneratingRatio => "f(n) = n!^3/(2^n (1/2)_n^2) F_n",
            Identity::QuadraticForm => "2^n 3F2(-n,-n/2,(1-n)/2; 1/2-n,1/2-n; 1) = f(n)",
            Identity::BalancedForm => "n!/(2^n (1/2)_n) 3F2(-n,-n,1/2; 1,1/2-n; -1) = f(n)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("identity violated at n = {n}: {identity}")]
    IdentityViolation { identity: Identity, n: u64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unsupported order {requested}: at most {max} is available")]
    UnsupportedOrder { requested: usize, max: usize },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    #[error("{method} did not converge for n = {n} (last relative change {last_change:e})")]
    NonConvergence {
        method: &'static str,
        n: u64,
        last_change: f64,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
