//! Transformation identities for ₂F₁ (DLMF §15.8), each evaluated through the
//! side that does not involve the original series so callers can compare the
//! two routes.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::gamma::{gamma_tol, integer_distance, nonpositive_integer, pochhammer, rgamma, sin_pi};
use super::{hyp2f1, EvalConfig, Hyp2F1};

/// Euler–Pfaff map (a, b; c) → (c-a, c-b; c) with the power c-a-b, so that
/// F(a,b;c;z) = (1-z)^{c-a-b} F(c-a,c-b;c;z).
pub fn pfaff_transform(p: &Hyp2F1) -> (Hyp2F1, f64) {
    let (a, b, c) = (p.a(), p.b(), p.c());
    (Hyp2F1::new(c - a, c - b, c), c - a - b)
}

/// Right-hand side of DLMF 15.8.4 scaled by Γ(c), i.e. the value of
/// sin(π(c-a-b))/π · F(a,b;c;z) obtained from the two expansions at 1 - z:
///
/// Γ(c) [ F(a,b;a+b-c+1;1-z) / (Γ(c-a)Γ(c-b)Γ(a+b-c+1))
///      - (1-z)^{c-a-b} F(c-a,c-b;c-a-b+1;1-z) / (Γ(a)Γ(b)Γ(c-a-b+1)) ]
pub fn connection_15_8_4(p: &Hyp2F1, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let tol = cfg.pole_tol;
    let (a, b, c) = (p.a(), p.b(), p.c());
    let w = 1.0 - z;
    if !(w.abs() < 1.0) {
        return Err(Error::Domain(format!("connection needs |1 - z| < 1 (z = {z})")));
    }
    let s = c - a - b;
    if integer_distance(s) <= tol {
        return Err(Error::DegenerateCase(format!("c - a - b = {s} is an integer")));
    }
    let gc = gamma_tol(c, tol)?;
    let w1 = rgamma(c - a, tol) * rgamma(c - b, tol) * rgamma(1.0 - s, tol);
    let t1 = if w1 == 0.0 {
        0.0
    } else {
        w1 * hyp2f1(&Hyp2F1::with_pole_tol(a, b, 1.0 - s, tol), w, cfg)?
    };
    let w2 = rgamma(a, tol) * rgamma(b, tol) * rgamma(1.0 + s, tol);
    let t2 = if w2 == 0.0 {
        0.0
    } else {
        w.powf(s) * w2 * hyp2f1(&Hyp2F1::with_pole_tol(c - a, c - b, 1.0 + s, tol), w, cfg)?
    };
    Ok(gc * (t1 - t2))
}

/// Left-hand side partner of [`connection_15_8_4`]: sin(π(c-a-b))/π · F(a,b;c;z).
pub fn connection_lhs(p: &Hyp2F1, z: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(sin_pi(p.excess()) / PI * hyp2f1(p, z, cfg)?)
}

/// Right-hand side of DLMF 15.8.6, z^m F(-m, 1-c-m; 1-b-m; 1/z), which equals
/// (-1)^m (c)ₘ/(b)ₘ F(-m, b; c; z).
pub fn inversion_15_8_6(m: u32, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if z == 0.0 || !z.is_finite() {
        return Err(Error::Domain(format!(
            "inversion needs a finite nonzero argument (z = {z})"
        )));
    }
    if pochhammer(b, m) == 0.0 || nonpositive_integer(b, cfg.pole_tol).is_some_and(|k| k < u64::from(m)) {
        return Err(Error::Pole {
            what: "(b)_m vanishes in the inversion prefactor",
            at: b,
        });
    }
    let mf = f64::from(m);
    let inner = Hyp2F1::with_pole_tol(-mf, 1.0 - c - mf, 1.0 - b - mf, cfg.pole_tol);
    Ok(z.powi(m as i32) * hyp2f1(&inner, 1.0 / z, cfg)?)
}

/// Left-hand side of DLMF 15.8.6, (-1)^m (c)ₘ/(b)ₘ F(-m, b; c; z).
pub fn inversion_lhs(m: u32, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let poly = hyp2f1(&Hyp2F1::with_pole_tol(-f64::from(m), b, c, cfg.pole_tol), z, cfg)?;
    Ok(sign * pochhammer(c, m) / pochhammer(b, m) * poly)
}

/// Right-hand side of DLMF 15.8.20,
/// (1-z)^{c-1} F((c-a)/2, (a+c-1)/2; c; 4z(1-z)), equal to F(a, 1-a; c; z).
pub fn quadratic_15_8_20(a: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::Domain(format!("quadratic transformation needs z < 1 (z = {z})")));
    }
    let x = 4.0 * z * (1.0 - z);
    let inner = Hyp2F1::with_pole_tol(0.5 * (c - a), 0.5 * (a + c - 1.0), c, cfg.pole_tol);
    if inner.terminating_degree().is_none() && !(x.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "transformed argument 4z(1-z) = {x} is on or outside the unit circle"
        )));
    }
    Ok((1.0 - z).powf(c - 1.0) * hyp2f1(&inner, x, cfg)?)
}
