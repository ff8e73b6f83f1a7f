//! The Hat branches continued into the Breve branches through DLMF 15.8.4.
//!
//! With (a, b; c) the Hat1 parameters, c̆ the Breve1 lower parameter and
//! σ = c - a - b = 1 - c̆, the first relation reads
//!
//! ```text
//! sin(πσ)/π · f̂₁ = Γ(c) [ f̆₁ / (Γ(c-a)Γ(c-b)Γ(c̆)) - f̆₂ / (Γ(a)Γ(b)Γ(2-c̆)) ]
//! ```
//!
//! where the f's are the branches stripped of (r-ξ₁)^μ₁ (ξ₂-r)^μ₂. The second
//! relation does the same for f̂₂ and needs one Pfaff step on the inner
//! functions to land on the Breve parameters.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{gamma_tol, hyp2f1, integer_distance, rgamma, sin_pi, EvalConfig, Hyp2F1};

use super::{build_branch, BranchId, OdeParams, SolutionBranch};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionCheck {
    pub lhs: f64,
    pub rhs: f64,
}

/// `rhs_direct` uses the DLMF form about 1 - z; `rhs_pfaff` rewrites its inner
/// functions onto the Breve branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondConnectionCheck {
    pub lhs: f64,
    pub rhs_direct: f64,
    pub rhs_pfaff: f64,
}

fn degenerate(e: Error) -> Error {
    match e {
        Error::DegenerateC { c, reason } => Error::DegenerateCase(format!("c = {c}: {reason}")),
        Error::Pole { what, at } => Error::DegenerateCase(format!("gamma pole ({what}) at {at}")),
        other => other,
    }
}

struct Setup {
    hat1: SolutionBranch,
    breve1: SolutionBranch,
    sigma: f64,
}

fn setup(p: &OdeParams, mu1: f64, mu2: f64, r: f64, cfg: &EvalConfig) -> Result<Setup> {
    cfg.validate()?;
    if !p.contains(r) {
        return Err(Error::Domain(format!("r = {r} is outside ({}, {})", p.xi1, p.xi2)));
    }
    let hat1 = build_branch(p, mu1, mu2, BranchId::Hat1).map_err(degenerate)?;
    let breve1 = build_branch(p, mu1, mu2, BranchId::Breve1).map_err(degenerate)?;
    let sigma = hat1.hyp.excess();
    if integer_distance(sigma) <= cfg.pole_tol {
        return Err(Error::DegenerateCase(format!("sine argument {sigma} is an integer")));
    }
    Ok(Setup { hat1, breve1, sigma })
}

/// Breve2 reduced value, skipped (0) when its weight vanishes.
fn weighted_breve2(p: &OdeParams, mu1: f64, mu2: f64, weight: f64, r: f64, cfg: &EvalConfig) -> Result<f64> {
    if weight == 0.0 {
        return Ok(0.0);
    }
    let b = build_branch(p, mu1, mu2, BranchId::Breve2).map_err(degenerate)?;
    Ok(weight * b.reduced_value(r, cfg)?)
}

/// Both sides of the first connection relation at r.
pub fn connection_check(p: &OdeParams, mu1: f64, mu2: f64, r: f64, cfg: &EvalConfig) -> Result<ConnectionCheck> {
    let Setup { hat1, breve1, sigma } = setup(p, mu1, mu2, r, cfg)?;
    let tol = cfg.pole_tol;
    let (a, b, c) = (hat1.hyp.a(), hat1.hyp.b(), hat1.hyp.c());
    let cb = breve1.hyp.c();

    let lhs = sin_pi(sigma) / PI * hat1.reduced_value(r, cfg)?;

    let gc = gamma_tol(c, tol).map_err(degenerate)?;
    let w1 = rgamma(c - a, tol) * rgamma(c - b, tol) * rgamma(cb, tol);
    let t1 = if w1 == 0.0 {
        0.0
    } else {
        w1 * breve1.reduced_value(r, cfg)?
    };
    let w2 = rgamma(a, tol) * rgamma(b, tol) * rgamma(2.0 - cb, tol);
    let t2 = weighted_breve2(p, mu1, mu2, w2, r, cfg)?;
    Ok(ConnectionCheck {
        lhs,
        rhs: gc * (t1 - t2),
    })
}

/// Both sides of the second connection relation at r:
///
/// ```text
/// sin(πσ)/π · f̂₂ = Γ(2-c) [ f̆₁ / (Γ(1-a)Γ(1-b)Γ(c̆)) - f̆₂ / (Γ(a-c+1)Γ(b-c+1)Γ(2-c̆)) ]
/// ```
pub fn second_connection_check(
    p: &OdeParams,
    mu1: f64,
    mu2: f64,
    r: f64,
    cfg: &EvalConfig,
) -> Result<SecondConnectionCheck> {
    let Setup { hat1, breve1, sigma } = setup(p, mu1, mu2, r, cfg)?;
    let tol = cfg.pole_tol;
    let hat2 = build_branch(p, mu1, mu2, BranchId::Hat2).map_err(degenerate)?;
    let (a, b, c) = (hat1.hyp.a(), hat1.hyp.b(), hat1.hyp.c());
    let cb = breve1.hyp.c();

    let lhs = sin_pi(sigma) / PI * hat2.reduced_value(r, cfg)?;
    let g = gamma_tol(2.0 - c, tol).map_err(degenerate)?;
    let w1 = rgamma(1.0 - a, tol) * rgamma(1.0 - b, tol) * rgamma(cb, tol);
    let w2 = rgamma(a - c + 1.0, tol) * rgamma(b - c + 1.0, tol) * rgamma(2.0 - cb, tol);

    // DLMF 15.8.4 applied to F(a-c+1, b-c+1; 2-c; z), then multiplied by z^{1-c}
    let z = hat1.map.z(r);
    let w = breve1.map.z(r);
    let t1 = if w1 == 0.0 {
        0.0
    } else {
        w1 * hyp2f1(&Hyp2F1::with_pole_tol(a - c + 1.0, b - c + 1.0, cb, tol), w, cfg)?
    };
    let t2 = if w2 == 0.0 {
        0.0
    } else {
        w2 * w.powf(sigma) * hyp2f1(&Hyp2F1::with_pole_tol(1.0 - a, 1.0 - b, 2.0 - cb, tol), w, cfg)?
    };
    let rhs_direct = g * z.powf(1.0 - c) * (t1 - t2);

    // Pfaff with 1 - w = z turns both inner functions into the Breve ones
    let p1 = if w1 == 0.0 {
        0.0
    } else {
        w1 * breve1.reduced_value(r, cfg)?
    };
    let p2 = weighted_breve2(p, mu1, mu2, w2, r, cfg)?;
    let rhs_pfaff = g * (p1 - p2);

    Ok(SecondConnectionCheck {
        lhs,
        rhs_direct,
        rhs_pfaff,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::legendre;
    use super::super::indicial_exponents;
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn generic() -> OdeParams {
        OdeParams {
            a1: 0.4,
            b1: -0.3,
            a2: 0.2,
            b2: -0.6,
            a3: 0.1,
            b3: 0.25,
            c3: -0.4,
            lambda: 1.3,
            xi1: -0.5,
            xi2: 1.7,
        }
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * (1.0 + x.abs())
    }

    #[test]
    fn first_relation_holds_for_every_root_choice() {
        let p = generic();
        let e = indicial_exponents(&p);
        for mu1 in [e.mu1.lo(), e.mu1.hi()] {
            for mu2 in [e.mu2.lo(), e.mu2.hi()] {
                for r in [-0.3, 0.2, 0.6, 1.1, 1.6] {
                    let c = connection_check(&p, mu1, mu2, r, &cfg()).unwrap();
                    assert!(close(c.lhs, c.rhs, 1e-10), "mu=({mu1},{mu2}) r={r}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn second_relation_both_routes_agree() {
        let p = generic();
        let e = indicial_exponents(&p);
        for mu1 in [e.mu1.lo(), e.mu1.hi()] {
            for mu2 in [e.mu2.lo(), e.mu2.hi()] {
                for r in [-0.3, 0.2, 0.6, 1.1, 1.6] {
                    let c = second_connection_check(&p, mu1, mu2, r, &cfg()).unwrap();
                    assert!(close(c.lhs, c.rhs_direct, 1e-10), "mu=({mu1},{mu2}) r={r}: {c:?}");
                    assert!(close(c.lhs, c.rhs_pfaff, 1e-10), "mu=({mu1},{mu2}) r={r}: {c:?}");
                }
            }
        }
    }

    #[test]
    fn reciprocal_gamma_drops_a_term() {
        // a = -1 makes 1/Γ(a) vanish, so only the f̆₁ term survives
        let p = OdeParams {
            a1: 0.5,
            b1: 0.3,
            a2: 0.0,
            b2: 0.0,
            a3: 0.0,
            b3: 0.0,
            c3: 0.0,
            lambda: -0.5,
            xi1: 0.0,
            xi2: 1.0,
        };
        let hat1 = build_branch(&p, 0.0, 0.0, BranchId::Hat1).unwrap();
        assert!((hat1.hyp.a() + 1.0).abs() < 1e-15);
        assert!((hat1.hyp.excess() - 1.8).abs() < 1e-14);
        let c = connection_check(&p, 0.0, 0.0, 0.2, &cfg()).unwrap();
        assert!(close(c.lhs, c.rhs, 1e-12), "{c:?}");
    }

    #[test]
    fn integer_sine_argument_is_degenerate() {
        assert!(matches!(
            connection_check(&legendre(2.0), 0.0, 0.0, 0.2, &cfg()),
            Err(Error::DegenerateCase(_))
        ));
    }

    #[test]
    fn outside_interval() {
        assert!(matches!(
            connection_check(&generic(), 0.0, 0.0, 2.0, &cfg()),
            Err(Error::Domain(_))
        ));
    }
}
