//! The second-order equation with regular singular points at ξ₁, ξ₂ and ∞,
//!
//! ```text
//! (r-ξ₁)(ξ₂-r) F'' + (a₁r + b₁) F' + (λ + (a₂r + b₂ + a₃r² + b₃r + c₃)/((r-ξ₁)(ξ₂-r))) F = 0,
//! ```
//!
//! its Frobenius exponents, and its closed-form hypergeometric solutions.

mod branch;
mod connection;
mod exponents;
mod residual;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use branch::{build_branch, evaluate, BranchId, CoordinateMap, MapKind, SolutionBranch};
pub use connection::{connection_check, second_connection_check, ConnectionCheck, SecondConnectionCheck};
pub use exponents::{
    indicial_exponents, reduced_equation_coefficients, IndicialExponents, IndicialQuadratic, ReducedCoefficients,
    RootPair,
};
pub use residual::{residual, Jet, Solution, SolutionCombination};

/// Coefficients of the equation. Field names double as the JSON keys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeParams {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub a3: f64,
    pub b3: f64,
    pub c3: f64,
    pub lambda: f64,
    pub xi1: f64,
    pub xi2: f64,
}

impl OdeParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("a1", self.a1),
            ("b1", self.b1),
            ("a2", self.a2),
            ("b2", self.b2),
            ("a3", self.a3),
            ("b3", self.b3),
            ("c3", self.c3),
            ("lambda", self.lambda),
            ("xi1", self.xi1),
            ("xi2", self.xi2),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
        }
        if !(self.xi1 < self.xi2) {
            return Err(Error::InvalidParams(format!(
                "singular points must satisfy xi1 < xi2 (got {} and {})",
                self.xi1, self.xi2
            )));
        }
        Ok(())
    }

    /// ξ₂ - ξ₁
    pub fn width(&self) -> f64 {
        self.xi2 - self.xi1
    }

    /// (r-ξ₁)(ξ₂-r)
    pub fn leading(&self, r: f64) -> f64 {
        (r - self.xi1) * (self.xi2 - r)
    }

    /// Numerator of the rational part, a₃r² + (a₂+b₃)r + b₂ + c₃.
    pub fn numerator(&self, r: f64) -> f64 {
        (self.a3 * r + (self.a2 + self.b3)) * r + (self.b2 + self.c3)
    }

    /// ((a₁+1)/2)² + λ - a₃, the quantity under the square root in every branch.
    pub fn sqrt_argument(&self) -> f64 {
        let h = 0.5 * (self.a1 + 1.0);
        h * h + self.lambda - self.a3
    }

    /// Raw left-hand side of the equation for given F, F', F'' at r.
    pub fn apply(&self, r: f64, f: f64, df: f64, d2f: f64) -> f64 {
        let lead = self.leading(r);
        lead * d2f + (self.a1 * r + self.b1) * df + (self.lambda + self.numerator(r) / lead) * f
    }

    pub fn contains(&self, r: f64) -> bool {
        self.xi1 < r && r < self.xi2
    }
}

/// `n` Chebyshev nodes strictly inside (ξ₁, ξ₂).
pub fn chebyshev_points(xi1: f64, xi2: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (xi1 + xi2);
    let half = 0.5 * (xi2 - xi1);
    (0..n)
        .map(|j| {
            let theta = std::f64::consts::PI * (2 * j + 1) as f64 / (2 * n) as f64;
            mid + half * theta.cos()
        })
        .collect()
}
