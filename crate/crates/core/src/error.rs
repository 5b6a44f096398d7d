use thiserror::Error;

/// Errors raised by the special-function kernel, the closed-form families and
/// the numerical verification layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{function} series did not converge within {terms} terms (a={a}, b={b}, z={z})")]
    NonConvergence {
        function: &'static str,
        terms: usize,
        a: f64,
        b: f64,
        z: f64,
    },

    #[error("x = {x} lies outside the configuration space ({domain})")]
    Domain { x: f64, domain: &'static str },

    #[error("u(x) = {u} is not positive at x = {x}")]
    Singular { x: f64, u: f64 },

    #[error("inadmissible parameters: {}", .0.join("; "))]
    Inadmissible(Vec<String>),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("potential is not finite at x = {x}")]
    NonFinitePotential { x: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
