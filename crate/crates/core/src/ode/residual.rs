use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::EvalConfig;

use super::{OdeParams, SolutionBranch};

/// F, F' and F'' at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Anything that can be differentiated twice in r at an interior point.
pub trait Solution {
    fn jet(&self, r: f64, cfg: &EvalConfig) -> Result<Jet>;
}

impl Solution for SolutionBranch {
    fn jet(&self, r: f64, cfg: &EvalConfig) -> Result<Jet> {
        let (value, d1, d2) = self.jet_at(r, cfg)?;
        Ok(Jet { value, d1, d2 })
    }
}

/// Σ cᵢ·Fᵢ over branches built for the same equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionCombination {
    terms: Vec<(f64, SolutionBranch)>,
}

impl SolutionCombination {
    pub fn new(terms: Vec<(f64, SolutionBranch)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidParams("empty solution combination".into()));
        };
        let (xi1, xi2) = (first.map.xi1, first.map.xi2);
        for (coef, b) in &terms {
            if !coef.is_finite() {
                return Err(Error::InvalidParams(format!("coefficient {coef} is not finite")));
            }
            if b.map.xi1 != xi1 || b.map.xi2 != xi2 {
                return Err(Error::InvalidParams("branches live on different intervals".into()));
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, SolutionBranch)] {
        &self.terms
    }
}

impl Solution for SolutionCombination {
    fn jet(&self, r: f64, cfg: &EvalConfig) -> Result<Jet> {
        let mut acc = Jet {
            value: 0.0,
            d1: 0.0,
            d2: 0.0,
        };
        for (coef, b) in &self.terms {
            let j = b.jet(r, cfg)?;
            acc.value += coef * j.value;
            acc.d1 += coef * j.d1;
            acc.d2 += coef * j.d2;
        }
        Ok(acc)
    }
}

/// |L[F](r)| / (1 + |F| + |F'| + |F''|), with L the full differential operator.
pub fn residual<S: Solution + ?Sized>(s: &S, p: &OdeParams, r: f64, cfg: &EvalConfig) -> Result<f64> {
    p.validate()?;
    if !p.contains(r) {
        return Err(Error::Domain(format!("r = {r} is outside ({}, {})", p.xi1, p.xi2)));
    }
    let j = s.jet(r, cfg)?;
    let lhs = p.apply(r, j.value, j.d1, j.d2);
    Ok(lhs.abs() / (1.0 + j.value.abs() + j.d1.abs() + j.d2.abs()))
}
