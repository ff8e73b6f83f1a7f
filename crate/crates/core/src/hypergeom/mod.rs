//! Gauss hypergeometric function ₂F₁ and the transformation identities used
//! to move between the endpoint expansions of the solution families.

mod gamma;
mod series;
mod transforms;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gamma::{gamma, gamma_tol, integer_distance, ln_gamma, nonpositive_integer, pochhammer, rgamma, sin_pi};
pub use series::{hyp2f1, hyp2f1_derivative};
pub use transforms::{
    connection_15_8_4, connection_lhs, inversion_15_8_6, inversion_lhs, pfaff_transform, quadratic_15_8_20,
};

pub const DEFAULT_REL_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: usize = 500;
pub const DEFAULT_POLE_TOL: f64 = 1e-10;

/// Truncation and pole-detection settings for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Relative size below which the series tail is dropped.
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Absolute distance below which a real is treated as a non-positive integer.
    pub pole_tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            pole_tol: DEFAULT_POLE_TOL,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || !(self.pole_tol > 0.0) {
            return Err(Error::InvalidParams(format!(
                "eval config needs rel_tol > 0, max_terms >= 1, pole_tol > 0 (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// Parameter triple (a, b; c) of a Gauss hypergeometric function.
///
/// `terminating_degree` is fixed at construction: it is the degree of the
/// polynomial the series collapses to when `a` or `b` is a non-positive
/// integer (the smaller one when both are).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hyp2F1 {
    a: f64,
    b: f64,
    c: f64,
    terminating_degree: Option<u64>,
}

impl Hyp2F1 {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self::with_pole_tol(a, b, c, DEFAULT_POLE_TOL)
    }

    pub fn with_pole_tol(a: f64, b: f64, c: f64, pole_tol: f64) -> Self {
        let terminating_degree = match (nonpositive_integer(a, pole_tol), nonpositive_integer(b, pole_tol)) {
            (Some(da), Some(db)) => Some(da.min(db)),
            (da, db) => da.or(db),
        };
        Self {
            a,
            b,
            c,
            terminating_degree,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn terminating_degree(&self) -> Option<u64> {
        self.terminating_degree
    }

    /// c - a - b, the exponent governing the behaviour at z = 1.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    /// True when the series hits a vanishing (c)ₙ before it terminates.
    pub fn reaches_lower_pole(&self, pole_tol: f64) -> bool {
        match nonpositive_integer(self.c, pole_tol) {
            None => false,
            Some(m) => match self.terminating_degree {
                Some(d) => d > m,
                None => true,
            },
        }
    }

    /// Parameters and prefactor of the derivative: d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z).
    pub fn shifted(&self) -> (f64, Hyp2F1) {
        let factor = self.a * self.b / self.c;
        (factor, Hyp2F1::new(self.a + 1.0, self.b + 1.0, self.c + 1.0))
    }

    /// Shorthand for [`hyp2f1`].
    pub fn eval(&self, z: f64, cfg: &EvalConfig) -> Result<f64> {
        hyp2f1(self, z, cfg)
    }
}
