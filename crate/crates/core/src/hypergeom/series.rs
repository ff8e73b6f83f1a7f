use crate::error::{Error, Result};

use super::gamma::{gamma_tol, integer_distance, rgamma};
use super::{EvalConfig, Hyp2F1};

/// Past this |z| a non-terminating series is evaluated through the expansion about z = 1.
const DIRECT_REGION: f64 = 0.5;

/// Evaluates ₂F₁(a, b; c; z).
///
/// Terminating series are summed exactly (d+1 terms) for any finite z. Otherwise
/// z must satisfy |z| < 1, or z = 1 with c - a - b > 0. For z in (½, 1) with
/// non-integer c - a - b the value is assembled from the two expansions at 1 - z;
/// for z in (-1, -½) the Pfaff form in z/(z-1) is used.
pub fn hyp2f1(p: &Hyp2F1, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("hypergeometric argument {z} is not finite")));
    }
    // fixed parameter order makes F(a,b) and F(b,a) share one code path
    let (a, b) = if p.a <= p.b { (p.a, p.b) } else { (p.b, p.a) };
    let c = p.c;

    if let Some(d) = p.terminating_degree {
        if p.reaches_lower_pole(cfg.pole_tol) {
            return Err(Error::Pole {
                what: "lower parameter c reached by the series",
                at: c,
            });
        }
        return Ok(polynomial(a, b, c, d, z));
    }
    if p.reaches_lower_pole(cfg.pole_tol) {
        return Err(Error::Pole {
            what: "lower parameter c",
            at: c,
        });
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let excess = c - a - b;
    if z == 1.0 {
        if excess > 0.0 {
            return gauss_sum(a, b, c, cfg);
        }
        return Err(Error::Domain(format!(
            "z = 1 needs c - a - b > 0 (got {excess}) for a non-terminating series"
        )));
    }
    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!("|z| = {} is outside the unit disc", z.abs())));
    }
    if z < -DIRECT_REGION {
        // F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)), argument lands in (⅓, ½)
        let inner = Hyp2F1::with_pole_tol(a, c - b, c, cfg.pole_tol);
        return Ok((1.0 - z).powf(-a) * hyp2f1(&inner, z / (z - 1.0), cfg)?);
    }
    if z > DIRECT_REGION && integer_distance(excess) > cfg.pole_tol {
        return about_one(a, b, c, z, cfg);
    }
    // integer c - a - b near z = 1 falls back to the plain series, which may run out of terms
    direct(a, b, c, z, cfg)
}

/// d/dz ₂F₁(a,b;c;z) via the parameter-shift rule.
pub fn hyp2f1_derivative(p: &Hyp2F1, z: f64, cfg: &EvalConfig) -> Result<f64> {
    if p.terminating_degree == Some(0) {
        return Ok(0.0);
    }
    if p.reaches_lower_pole(cfg.pole_tol) {
        return Err(Error::Pole {
            what: "lower parameter c",
            at: p.c,
        });
    }
    let (factor, shifted) = p.shifted();
    Ok(factor * hyp2f1(&shifted, z, cfg)?)
}

fn polynomial(a: f64, b: f64, c: f64, degree: u64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..degree {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
    }
    sum
}

fn direct(a: f64, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    // beyond this index every Pochhammer factor has settled its sign and the
    // term ratio moves monotonically towards |z|
    let settled = a.abs().max(b.abs()).max(c.abs());
    let mut last_rel = 1.0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 && nf + 1.0 > settled {
            return Ok(sum);
        }
        let rho = ratio.abs().max(z.abs());
        last_rel = (term / sum).abs();
        if nf + 1.0 > settled && rho < 1.0 {
            let tail = term.abs() * rho / (1.0 - rho);
            if tail <= cfg.rel_tol * sum.abs() {
                return Ok(sum);
            }
        }
    }
    Err(Error::NoConvergence {
        max_terms: cfg.max_terms,
        last_rel,
    })
}

fn gauss_sum(a: f64, b: f64, c: f64, cfg: &EvalConfig) -> Result<f64> {
    let tol = cfg.pole_tol;
    Ok(gamma_tol(c, tol)? * gamma_tol(c - a - b, tol)? * rgamma(c - a, tol) * rgamma(c - b, tol))
}

/// Connection to the two expansions about z = 1 for non-integer s = c - a - b:
///
/// F(a,b;c;z) = Γ(c)Γ(s)/(Γ(c-a)Γ(c-b)) F(a,b;1-s;1-z)
///            + (1-z)^s Γ(c)Γ(-s)/(Γ(a)Γ(b)) F(c-a,c-b;1+s;1-z)
fn about_one(a: f64, b: f64, c: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    let tol = cfg.pole_tol;
    let s = c - a - b;
    let w = 1.0 - z;
    let gc = gamma_tol(c, tol)?;

    let w1 = gc * gamma_tol(s, tol)? * rgamma(c - a, tol) * rgamma(c - b, tol);
    let t1 = if w1 == 0.0 {
        0.0
    } else {
        w1 * hyp2f1(&Hyp2F1::with_pole_tol(a, b, 1.0 - s, tol), w, cfg)?
    };
    let w2 = gc * gamma_tol(-s, tol)? * rgamma(a, tol) * rgamma(b, tol);
    let t2 = if w2 == 0.0 {
        0.0
    } else {
        w.powf(s) * w2 * hyp2f1(&Hyp2F1::with_pole_tol(c - a, c - b, 1.0 + s, tol), w, cfg)?
    };
    Ok(t1 + t2)
}
