use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma argument or a lower hypergeometric parameter sits on a pole.
    #[error("pole at {at} ({what})")]
    Pole { what: &'static str, at: f64 },

    /// Argument outside the region where the requested evaluation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {max_terms} terms (last relative term {last_rel:e})")]
    NoConvergence { max_terms: usize, last_rel: f64 },

    /// An identity was requested at a parameter set where it degenerates
    /// (integer `c - a - b`, gamma pole in a weight, vanishing sample).
    #[error("degenerate case: {0}")]
    DegenerateCase(String),

    /// The lower parameter of a solution branch is a non-positive integer that the
    /// series reaches, or the second solution coincides with the first.
    #[error("degenerate lower parameter c = {c}: {reason}")]
    DegenerateC { c: f64, reason: &'static str },

    #[error("complex exponent: square-root argument {argument} is negative")]
    ComplexExponent { argument: f64 },

    #[error("exponent {mu} is not an indicial root at {at} (residual {residual:e})")]
    RootMismatch { at: &'static str, mu: f64, residual: f64 },

    /// Structural invariant of an input parameter pack is violated.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl Error {
    /// True for errors caused by the inputs violating a structural invariant
    /// rather than by a numerical breakdown.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvalidParams(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
