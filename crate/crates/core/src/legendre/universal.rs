use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeom::{gamma, hyp2f1, ln_gamma, pochhammer, quadratic_15_8_20, EvalConfig, Hyp2F1};
use crate::ode::{build_branch, evaluate, BranchId, Jet, OdeParams, Solution};

/// Relative slack allowed between the stored and the derived parameters.
const CONSISTENCY_TOL: f64 = 1e-9;

/// Below this magnitude the terminating polynomial is treated as sitting on a zero.
const ZERO_SAMPLE: f64 = 1e-8;

/// Parameters of P_{ℓ′}^{m′} and of the equation
/// (1-r²)F'' - 2rF' + (λ - (m² + a + br + cr²)/(1-r²))F = 0
/// with b = 0, m′ = √(a + c + m²), λ = ℓ′(ℓ′+1) - c and ℓ′ = m′ + n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniversalParams {
    pub ell: f64,
    pub mprime: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub m: f64,
    pub lambda: f64,
    pub n_index: u32,
}

impl UniversalParams {
    /// Derives m′, ℓ′ and λ from the potential coefficients and the index n.
    pub fn new(a: f64, c: f64, m: f64, n_index: u32) -> Result<Self> {
        let square = a + c + m * m;
        if !(square >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "a + c + m² = {square} must be non-negative"
            )));
        }
        let mprime = square.sqrt();
        let ell = mprime + f64::from(n_index);
        let u = Self {
            ell,
            mprime,
            a,
            b: 0.0,
            c,
            m,
            lambda: ell * (ell + 1.0) - c,
            n_index,
        };
        u.validate()?;
        Ok(u)
    }

    /// The potential-free member a = c = 0, m = m′.
    pub fn from_degree(ell: f64, mprime: f64) -> Result<Self> {
        let n = ell - mprime;
        let n_index = n.round();
        if !(n_index >= 0.0 && (n - n_index).abs() <= CONSISTENCY_TOL * (1.0 + ell.abs())) {
            return Err(Error::Domain(format!("ℓ′ - m′ = {n} is not a non-negative integer")));
        }
        if !(mprime >= 0.0) {
            return Err(Error::InvalidParams(format!("m′ = {mprime} must be non-negative")));
        }
        Self::new(0.0, 0.0, mprime, n_index as u32)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.ell, self.mprime, self.a, self.b, self.c, self.m, self.lambda];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite universal parameters {self:?}"
            )));
        }
        let close = |x: f64, y: f64| (x - y).abs() <= CONSISTENCY_TOL * (1.0 + x.abs().max(y.abs()));
        let checks = [
            ("b = 0", self.b == 0.0),
            ("m′ ≥ 0", self.mprime >= 0.0),
            (
                "m′ = √(a+c+m²)",
                close(self.mprime * self.mprime, self.a + self.c + self.m * self.m),
            ),
            ("ℓ′ = m′ + n", close(self.ell, self.mprime + f64::from(self.n_index))),
            (
                "λ = ℓ′(ℓ′+1) - c",
                close(self.lambda, self.ell * (self.ell + 1.0) - self.c),
            ),
        ];
        if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::InvalidParams(format!(
                "universal parameters violate {what}: {self:?}"
            )));
        }
        Ok(())
    }

    /// ℓ′ - m′ as the integer n.
    pub fn degree(&self) -> u32 {
        self.n_index
    }
}

fn check_unit(r: f64) -> Result<()> {
    if !(r.abs() <= 1.0) {
        return Err(Error::Domain(format!("|r| = {} exceeds 1", r.abs())));
    }
    Ok(())
}

fn ln_factorial(n: u32) -> f64 {
    ln_gamma(f64::from(n) + 1.0)
}

/// Coefficients of r^{ℓ′-m′-2ν}, ν = 0 … ⌊(ℓ′-m′)/2⌋, with the normalization folded in.
fn sum_coefficients(u: &UniversalParams) -> Vec<f64> {
    let (ell, n) = (u.ell, u.degree());
    let ln2 = std::f64::consts::LN_2;
    let norm = 0.5 * ((2.0 * ell + 1.0).ln() + ln_factorial(n) - ln2 - ln_gamma(ell + u.mprime + 1.0));
    (0..=n / 2)
        .map(|nu| {
            let nf = f64::from(nu);
            let ln_mag = norm + ln_gamma(2.0 * ell - 2.0 * nf + 1.0)
                - ell * ln2
                - ln_factorial(nu)
                - ln_factorial(n - 2 * nu)
                - ln_gamma(ell - nf + 1.0);
            let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
            sign * ln_mag.exp()
        })
        .collect()
}

/// P_{ℓ′}^{m′}(r) by direct summation:
///
/// √((2ℓ′+1)(ℓ′-m′)! / (2Γ(ℓ′+m′+1))) (1-r²)^{m′/2}
///   Σ_ν (-1)^ν Γ(2ℓ′-2ν+1) / (2^ℓ′ ν! (ℓ′-m′-2ν)! Γ(ℓ′-ν+1)) r^{ℓ′-m′-2ν}
pub fn universal_sum(u: &UniversalParams, r: f64) -> Result<f64> {
    u.validate()?;
    check_unit(r)?;
    let n = u.degree();
    let sum: f64 = sum_coefficients(u)
        .iter()
        .zip(0..)
        .map(|(c, nu)| c * r.powi((n - 2 * nu) as i32))
        .sum();
    Ok((1.0 - r * r).powf(0.5 * u.mprime) * sum)
}

/// The summed polynomial as a twice-differentiable solution, for residual checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniversalSolution(pub UniversalParams);

impl Solution for UniversalSolution {
    fn jet(&self, r: f64, _: &EvalConfig) -> Result<Jet> {
        let u = &self.0;
        u.validate()?;
        if !(r.abs() < 1.0) {
            return Err(Error::Domain(format!("r = {r} is outside (-1, 1)")));
        }
        let n = u.degree();
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for (c, nu) in sum_coefficients(u).iter().zip(0..) {
            let e = n - 2 * nu;
            let ef = f64::from(e);
            s0 += c * r.powi(e as i32);
            if e >= 1 {
                s1 += c * ef * r.powi(e as i32 - 1);
            }
            if e >= 2 {
                s2 += c * ef * (ef - 1.0) * r.powi(e as i32 - 2);
            }
        }
        // q = (1-r²)^{m′/2}, with q'/q = -m′r/(1-r²)
        let mp = u.mprime;
        let t = 1.0 - r * r;
        let q = t.powf(0.5 * mp);
        let l = -mp * r / t;
        let dl = -mp * (1.0 + r * r) / (t * t);
        Ok(Jet {
            value: q * s0,
            d1: q * (l * s0 + s1),
            d2: q * ((l * l + dl) * s0 + 2.0 * l * s1 + s2),
        })
    }
}

/// Closed form valid for even ℓ′ - m′ = 2M:
///
/// (-1)^M 2^{ℓ′-½} Γ(ℓ′+½) (½)_M / (√π ((1+ℓ′+m′)/2)_M) · √((2ℓ′+1)/((ℓ′-m′)! Γ(ℓ′+m′+1)))
///   · (1-r²)^{m′/2} ₂F₁(-M, (1+ℓ′+m′)/2; ½; r²)
pub fn universal_hypergeometric(u: &UniversalParams, r: f64, cfg: &EvalConfig) -> Result<f64> {
    u.validate()?;
    check_unit(r)?;
    let n = u.degree();
    if n % 2 == 1 {
        return Err(Error::Domain(format!(
            "ℓ′ - m′ = {n} is odd; the closed form covers even degrees only"
        )));
    }
    let half = n / 2;
    let (ell, mp) = (u.ell, u.mprime);
    let upper = 0.5 * (1.0 + ell + mp);
    let sign = if half.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lead =
        sign * (ell - 0.5).exp2() * gamma(ell + 0.5)? * pochhammer(0.5, half) / (PI.sqrt() * pochhammer(upper, half));
    let norm = (0.5 * ((2.0 * ell + 1.0).ln() - ln_factorial(n) - ln_gamma(ell + mp + 1.0))).exp();
    let poly = hyp2f1(&Hyp2F1::new(-f64::from(half), upper, 0.5), r * r, cfg)?;
    Ok(lead * norm * (1.0 - r * r).powf(0.5 * mp) * poly)
}

/// Writes the universal equation in the coefficient layout of [`OdeParams`]
/// on (-1, 1): a₁ = -2, b₁ = 0, b₂ = -m², a₃ = -c, b₃ = -b, c₃ = -a.
pub fn universal_ode_embedding(u: &UniversalParams) -> OdeParams {
    OdeParams {
        a1: -2.0,
        b1: 0.0,
        a2: 0.0,
        b2: -u.m * u.m,
        a3: -u.c,
        b3: -u.b,
        c3: -u.a,
        lambda: u.lambda,
        xi1: -1.0,
        xi2: 1.0,
    }
}

/// The four stages of rewriting the Hat1 solution with exponents
/// (μ₁, μ₂) = (m′/2, -m′/2) into the universal closed form.
///
/// `hat1` is the branch itself, `quadratic` its DLMF 15.8.20 rewrite in
/// 4z(1-z), `reduced` the form after DLMF 15.8.7 with argument
/// (ξ₁+ξ₂-2r)²/(ξ₂-ξ₁)², and `closed` the universal closed form. The first
/// three are equal; `reduced / closed` is a constant independent of r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticPath {
    pub hat1: f64,
    pub quadratic: f64,
    pub reduced: f64,
    pub closed: f64,
}

impl QuadraticPath {
    pub fn lhs(&self) -> f64 {
        self.reduced
    }

    pub fn rhs(&self) -> f64 {
        self.closed
    }

    pub fn ratio(&self) -> f64 {
        self.reduced / self.closed
    }
}

pub fn quadratic_path_check(u: &UniversalParams, p: &OdeParams, r: f64, cfg: &EvalConfig) -> Result<QuadraticPath> {
    u.validate()?;
    p.validate()?;
    if !(p.b1 == 0.0 && p.xi1 == -1.0 && p.xi2 == 1.0) {
        return Err(Error::InvalidParams(
            "the quadratic path needs b1 = 0 on (-1, 1)".into(),
        ));
    }
    let n = u.degree();
    if n % 2 == 1 {
        return Err(Error::Domain(format!("ℓ′ - m′ = {n} is odd")));
    }
    let (mu1, mu2) = (0.5 * u.mprime, -0.5 * u.mprime);
    if (p.a1 - 2.0 * (mu1 + mu2 - 1.0)).abs() > CONSISTENCY_TOL {
        return Err(Error::InvalidParams(format!(
            "a1 = {} must equal 2(μ₁+μ₂-1) = -2",
            p.a1
        )));
    }
    let s = p.sqrt_argument().max(0.0).sqrt();
    if (s - (u.ell + 0.5)).abs() > CONSISTENCY_TOL * (1.0 + s) {
        return Err(Error::InvalidParams(format!(
            "λ - a₃ must equal ℓ′(ℓ′+1) (square root {s}, expected {})",
            u.ell + 0.5
        )));
    }

    let hat1 = build_branch(p, mu1, mu2, BranchId::Hat1)?;
    let value = evaluate(&hat1, r, cfg)?;
    let prefactor = (r - p.xi1).powf(mu1) * (p.xi2 - r).powf(mu2);
    let z = hat1.map.z(r);
    let c = hat1.hyp.c();
    let alpha = 0.5 - s;

    let quadratic = prefactor * quadratic_15_8_20(alpha, c, z, cfg)?;

    let half = n / 2;
    let big_a = 0.5 * (c - alpha);
    let x = (p.xi1 + p.xi2 - 2.0 * r).powi(2) / p.width().powi(2);
    let poly = hyp2f1(&Hyp2F1::new(-f64::from(half), big_a, 0.5), x, cfg)?;
    if poly.abs() < ZERO_SAMPLE {
        return Err(Error::DegenerateCase(format!(
            "r = {r} sits on a zero of the polynomial factor"
        )));
    }
    let constant = pochhammer(0.5, half) / pochhammer(0.5 - big_a, half);
    let reduced = prefactor * (1.0 - z).powf(c - 1.0) * constant * poly;

    let closed = universal_hypergeometric(u, r, cfg)?;
    if closed.abs() < ZERO_SAMPLE * (1.0 - r * r).powf(0.5 * u.mprime) {
        return Err(Error::DegenerateCase(format!(
            "r = {r} sits on a zero of the closed form"
        )));
    }
    Ok(QuadraticPath {
        hat1: value,
        quadratic,
        reduced,
        closed,
    })
}
