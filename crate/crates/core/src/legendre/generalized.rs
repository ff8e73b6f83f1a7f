use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeom::{EvalConfig, Hyp2F1, DEFAULT_POLE_TOL};
use crate::ode::{
    residual, BranchId, CoordinateMap, MapKind, OdeParams, Solution, SolutionBranch, SolutionCombination,
};

/// Degree k and orders m, n of a generalized associated Legendre function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegendreTriple {
    pub k: f64,
    pub m: f64,
    pub n: f64,
}

impl LegendreTriple {
    pub fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.m.is_finite() && self.n.is_finite()) {
            return Err(Error::InvalidParams(format!("triple {self:?} is not finite")));
        }
        Ok(())
    }
}

/// k = -½ - s, n = c_hat - 1, m = 1 - c_breve for the exponent pair (μ₁, μ₂).
pub fn map_to_triple(p: &OdeParams, mu1: f64, mu2: f64) -> Result<LegendreTriple> {
    p.validate()?;
    let argument = p.sqrt_argument();
    if argument < 0.0 {
        return Err(Error::ComplexExponent { argument });
    }
    let d = p.width();
    Ok(LegendreTriple {
        k: -0.5 - argument.sqrt(),
        n: 2.0 * mu1 - 1.0 + (p.b1 + p.a1 * p.xi1) / d,
        m: 1.0 - 2.0 * mu2 + (p.b1 + p.a1 * p.xi2) / d,
    })
}

/// F₁ and F₂ written as solution objects so they can be differentiated.
/// F₂ carries the constant (ξ₂-ξ₁)^m that turns (ξ₂-r)^m into w^m.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedBranches {
    pub f1: Result<SolutionBranch>,
    pub f2: Result<SolutionCombination>,
}

fn branch(id: BranchId, t: &LegendreTriple, mu1: f64, mu2: f64, xi1: f64, xi2: f64) -> Result<SolutionBranch> {
    let (shift, c, extra_power) = match id {
        BranchId::Breve1 => (0.5 * (t.n - t.m), 1.0 - t.m, 0.0),
        _ => (0.5 * (t.n + t.m), 1.0 + t.m, t.m),
    };
    let hyp = Hyp2F1::new(-t.k + shift, t.k + 1.0 + shift, c);
    if hyp.reaches_lower_pole(DEFAULT_POLE_TOL) {
        return Err(Error::DegenerateC {
            c,
            reason: "non-positive integer lower parameter reached by the series",
        });
    }
    Ok(SolutionBranch {
        id,
        mu1,
        mu2,
        extra_power,
        hyp,
        map: CoordinateMap::new(MapKind::MapII, xi1, xi2),
    })
}

/// Builds F₁ = (r-ξ₁)^μ₁ (ξ₂-r)^μ₂ ₂F₁(-k+(n-m)/2, k+1+(n-m)/2; 1-m; w) and
/// F₂ = (r-ξ₁)^μ₁ (ξ₂-r)^{μ₂+m} ₂F₁(-k+(n+m)/2, k+1+(n+m)/2; 1+m; w),
/// w = (ξ₂-r)/(ξ₂-ξ₁). Each side fails on its own.
pub fn generalized_branches(t: &LegendreTriple, mu1: f64, mu2: f64, xi1: f64, xi2: f64) -> Result<GeneralizedBranches> {
    t.validate()?;
    if !(xi1 < xi2) {
        return Err(Error::InvalidParams(format!("need xi1 < xi2 (got {xi1}, {xi2})")));
    }
    let f1 = branch(BranchId::Breve1, t, mu1, mu2, xi1, xi2);
    let f2 = branch(BranchId::Breve2, t, mu1, mu2, xi1, xi2)
        .and_then(|b| SolutionCombination::new(vec![((xi2 - xi1).powf(t.m), b)]));
    Ok(GeneralizedBranches { f1, f2 })
}

/// (F₁(r), F₂(r)).
pub fn generalized_solutions(
    t: &LegendreTriple,
    mu1: f64,
    mu2: f64,
    p: &OdeParams,
    r: f64,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    p.validate()?;
    let g = generalized_branches(t, mu1, mu2, p.xi1, p.xi2)?;
    let f1 = g.f1?.jet(r, cfg)?.value;
    let f2 = g.f2?.jet(r, cfg)?.value;
    Ok((f1, f2))
}

/// The equation with μ₁ = n/2, μ₂ = -m/2,
///
/// (r-ξ₁)(ξ₂-r)F'' + (ξ₁+ξ₂-2r)F' + (k(k+1) + n²(ξ₁-ξ₂)/(4(r-ξ₁)) - m²(ξ₁-ξ₂)/(4(r-ξ₂)))F = 0,
///
/// written in the coefficient layout of [`OdeParams`].
pub fn kuipers_ode(t: &LegendreTriple, xi1: f64, xi2: f64) -> OdeParams {
    let d = xi2 - xi1;
    let (m2, n2) = (t.m * t.m, t.n * t.n);
    OdeParams {
        a1: -2.0,
        b1: xi1 + xi2,
        a2: 0.25 * d * (n2 - m2),
        b2: 0.25 * d * (m2 * xi1 - n2 * xi2),
        a3: 0.0,
        b3: 0.0,
        c3: 0.0,
        lambda: t.k * (t.k + 1.0),
        xi1,
        xi2,
    }
}

fn kuipers_operator(t: &LegendreTriple, xi1: f64, xi2: f64, r: f64, f: f64, df: f64, d2f: f64) -> f64 {
    let potential =
        t.k * (t.k + 1.0) + t.n * t.n * (xi1 - xi2) / (4.0 * (r - xi1)) - t.m * t.m * (xi1 - xi2) / (4.0 * (r - xi2));
    (r - xi1) * (xi2 - r) * d2f + (xi1 + xi2 - 2.0 * r) * df + potential * f
}

/// Largest normalized residual of F₁ and F₂ (μ₁ = n/2, μ₂ = -m/2) in the
/// equation above. The operator is coded on its own, then cross-checked
/// against the same functions pushed through [`kuipers_ode`].
pub fn kuipers_reduction_check(t: &LegendreTriple, xi1: f64, xi2: f64, r: f64, cfg: &EvalConfig) -> Result<f64> {
    let p = kuipers_ode(t, xi1, xi2);
    p.validate()?;
    if !p.contains(r) {
        return Err(Error::Domain(format!("r = {r} is outside ({xi1}, {xi2})")));
    }
    let g = generalized_branches(t, 0.5 * t.n, -0.5 * t.m, xi1, xi2)?;
    let f1 = g.f1?;
    let f2 = g.f2?;
    let mut worst = 0.0_f64;
    for jet in [f1.jet(r, cfg)?, f2.jet(r, cfg)?] {
        let lhs = kuipers_operator(t, xi1, xi2, r, jet.value, jet.d1, jet.d2);
        worst = worst.max(lhs.abs() / (1.0 + jet.value.abs() + jet.d1.abs() + jet.d2.abs()));
    }
    let embedded = residual(&f1, &p, r, cfg)?.max(residual(&f2, &p, r, cfg)?);
    Ok(worst.max(embedded))
}
