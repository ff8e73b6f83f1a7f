use serde::Serialize;

use crate::error::{Error, Result};

use super::OdeParams;

/// Monic quadratic μ² + linear·μ + constant = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicialQuadratic {
    pub linear: f64,
    pub constant: f64,
}

impl IndicialQuadratic {
    pub fn residual(&self, mu: f64) -> f64 {
        (mu + self.linear) * mu + self.constant
    }

    pub fn discriminant(&self) -> f64 {
        self.linear * self.linear - 4.0 * self.constant
    }

    /// Scale used to judge whether a residual is small relative to the
    /// magnitudes that cancelled to produce it.
    fn residual_scale(&self, mu: f64) -> f64 {
        1.0_f64
            .max(mu * mu)
            .max((self.linear * mu).abs())
            .max(self.constant.abs())
    }

    pub fn roots(&self) -> RootPair {
        let disc = self.discriminant();
        if disc < 0.0 {
            return RootPair {
                roots: (-0.5 * self.linear, 0.5 * (-disc).sqrt()),
                complex: true,
            };
        }
        // cancellation-free pair: q and constant/q
        let q = -0.5 * (self.linear + self.linear.signum() * disc.sqrt());
        let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q, self.constant / q) };
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        RootPair {
            roots: (self.polish(lo), self.polish(hi)),
            complex: false,
        }
    }

    /// One Newton step, kept only when it lowers the residual.
    fn polish(&self, mu: f64) -> f64 {
        let slope = 2.0 * mu + self.linear;
        if slope == 0.0 {
            return mu;
        }
        let refined = mu - self.residual(mu) / slope;
        if self.residual(refined).abs() < self.residual(mu).abs() {
            refined
        } else {
            mu
        }
    }

    pub(crate) fn check_root(&self, mu: f64, at: &'static str) -> Result<()> {
        let residual = self.residual(mu);
        if !(residual.abs() <= 1e-8 * self.residual_scale(mu)) {
            return Err(Error::RootMismatch { at, mu, residual });
        }
        Ok(())
    }
}

/// Both roots of one indicial quadratic, ascending. When `complex` is set the
/// pair holds the real and imaginary parts of the conjugate roots instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootPair {
    pub roots: (f64, f64),
    pub complex: bool,
}

impl RootPair {
    pub fn lo(&self) -> f64 {
        self.roots.0
    }

    pub fn hi(&self) -> f64 {
        self.roots.1
    }

    pub fn real(&self) -> Option<(f64, f64)> {
        (!self.complex).then_some(self.roots)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicialExponents {
    pub mu1: RootPair,
    pub mu2: RootPair,
    pub mu_inf: RootPair,
}

impl IndicialExponents {
    pub fn all_real(&self) -> bool {
        !(self.mu1.complex || self.mu2.complex || self.mu_inf.complex)
    }
}

impl OdeParams {
    /// Indicial quadratic at r = ξ₁.
    pub fn indicial_xi1(&self) -> IndicialQuadratic {
        let d = self.width();
        IndicialQuadratic {
            linear: (self.a1 * self.xi1 + self.b1) / d - 1.0,
            constant: self.numerator(self.xi1) / (d * d),
        }
    }

    /// Indicial quadratic at r = ξ₂.
    pub fn indicial_xi2(&self) -> IndicialQuadratic {
        let d = self.width();
        IndicialQuadratic {
            linear: -((self.a1 * self.xi2 + self.b1) / d + 1.0),
            constant: self.numerator(self.xi2) / (d * d),
        }
    }

    /// Indicial quadratic at infinity.
    pub fn indicial_inf(&self) -> IndicialQuadratic {
        IndicialQuadratic {
            linear: 1.0 + self.a1,
            constant: self.a3 - self.lambda,
        }
    }
}

pub fn indicial_exponents(p: &OdeParams) -> IndicialExponents {
    IndicialExponents {
        mu1: p.indicial_xi1().roots(),
        mu2: p.indicial_xi2().roots(),
        mu_inf: p.indicial_inf().roots(),
    }
}

/// Coefficients of the equation satisfied by f after F = (r-ξ₁)^μ₁ (ξ₂-r)^μ₂ f:
///
/// (r-ξ₁)(ξ₂-r) f'' + (slope·r + intercept) f' + constant·f = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedCoefficients {
    pub slope: f64,
    pub intercept: f64,
    pub constant: f64,
}

pub fn reduced_equation_coefficients(p: &OdeParams, mu1: f64, mu2: f64) -> Result<ReducedCoefficients> {
    p.indicial_xi1().check_root(mu1, "xi1")?;
    p.indicial_xi2().check_root(mu2, "xi2")?;
    let sum = mu1 + mu2;
    Ok(ReducedCoefficients {
        slope: p.a1 - 2.0 * sum,
        intercept: p.b1 + 2.0 * mu2 * p.xi1 + 2.0 * mu1 * p.xi2,
        constant: p.lambda - p.a3 - sum * (sum - p.a1 - 1.0),
    })
}
