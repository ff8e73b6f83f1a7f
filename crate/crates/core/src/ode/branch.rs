use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeom::{hyp2f1, hyp2f1_derivative, EvalConfig, Hyp2F1, DEFAULT_POLE_TOL};

use super::OdeParams;

/// Which endpoint the hypergeometric variable is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    /// z = (r - ξ₁)/(ξ₂ - ξ₁): z(ξ₁) = 0, z(ξ₂) = 1.
    MapI,
    /// z = (ξ₂ - r)/(ξ₂ - ξ₁): z(ξ₂) = 0, z(ξ₁) = 1.
    MapII,
}

/// Affine change of variable sending the singular points to {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateMap {
    pub kind: MapKind,
    pub xi1: f64,
    pub xi2: f64,
}

impl CoordinateMap {
    pub fn new(kind: MapKind, xi1: f64, xi2: f64) -> Self {
        Self { kind, xi1, xi2 }
    }

    pub fn z(&self, r: f64) -> f64 {
        match self.kind {
            MapKind::MapI => (r - self.xi1) / (self.xi2 - self.xi1),
            MapKind::MapII => (self.xi2 - r) / (self.xi2 - self.xi1),
        }
    }

    pub fn dz_dr(&self) -> f64 {
        match self.kind {
            MapKind::MapI => 1.0 / (self.xi2 - self.xi1),
            MapKind::MapII => -1.0 / (self.xi2 - self.xi1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchId {
    Hat1,
    Hat2,
    Breve1,
    Breve2,
}

impl BranchId {
    pub const ALL: [BranchId; 4] = [BranchId::Hat1, BranchId::Hat2, BranchId::Breve1, BranchId::Breve2];

    pub fn map_kind(self) -> MapKind {
        match self {
            BranchId::Hat1 | BranchId::Hat2 => MapKind::MapI,
            BranchId::Breve1 | BranchId::Breve2 => MapKind::MapII,
        }
    }

    pub fn is_second_kind(self) -> bool {
        matches!(self, BranchId::Hat2 | BranchId::Breve2)
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchId::Hat1 => "hat1",
            BranchId::Hat2 => "hat2",
            BranchId::Breve1 => "breve1",
            BranchId::Breve2 => "breve2",
        }
    }
}

impl std::str::FromStr for BranchId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BranchId::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown branch {s:?}")))
    }
}

/// (r-ξ₁)^μ₁ (ξ₂-r)^μ₂ · z^extra_power · ₂F₁(a, b; c; z), z = map.z(r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionBranch {
    pub id: BranchId,
    pub mu1: f64,
    pub mu2: f64,
    pub extra_power: f64,
    pub hyp: Hyp2F1,
    pub map: CoordinateMap,
}

/// Builds one of the four closed-form solutions for the exponent pair (μ₁, μ₂).
///
/// With h = (a₁+1)/2, s = √(h² + λ - a₃), S = μ₁ + μ₂ and D = ξ₂ - ξ₁ the
/// first-kind parameters are a, b = S - h ∓ s with lower parameter
/// 2μ₁ + (a₁ξ₁+b₁)/D about ξ₁ (hat) or 2μ₂ - (a₁ξ₂+b₁)/D about ξ₂ (breve).
/// The second-kind branches carry z^{1-c} and the shifted triple.
pub fn build_branch(p: &OdeParams, mu1: f64, mu2: f64, id: BranchId) -> Result<SolutionBranch> {
    p.validate()?;
    p.indicial_xi1().check_root(mu1, "xi1")?;
    p.indicial_xi2().check_root(mu2, "xi2")?;
    let argument = p.sqrt_argument();
    if argument < 0.0 {
        return Err(Error::ComplexExponent { argument });
    }
    let s = argument.sqrt();
    let h = 0.5 * (p.a1 + 1.0);
    let sum = mu1 + mu2;
    let d = p.width();
    let tilt1 = (p.a1 * p.xi1 + p.b1) / d;
    let tilt2 = (p.a1 * p.xi2 + p.b1) / d;

    let c_hat = 2.0 * mu1 + tilt1;
    let c_breve = 2.0 * mu2 - tilt2;

    let (hyp, extra_power, first_c) = match id {
        BranchId::Hat1 => (Hyp2F1::new(sum - h - s, sum - h + s, c_hat), 0.0, c_hat),
        BranchId::Hat2 => {
            let base = 0.5 * (1.0 - p.a1) + mu2 - mu1 - tilt1;
            (Hyp2F1::new(base - s, base + s, 2.0 - c_hat), 1.0 - c_hat, c_hat)
        }
        BranchId::Breve1 => (Hyp2F1::new(sum - h - s, sum - h + s, c_breve), 0.0, c_breve),
        BranchId::Breve2 => {
            let base = h + mu1 - mu2 + tilt1;
            (Hyp2F1::new(base - s, base + s, 2.0 - c_breve), 1.0 - c_breve, c_breve)
        }
    };

    if id.is_second_kind() && (first_c - 1.0).abs() <= DEFAULT_POLE_TOL {
        return Err(Error::DegenerateC {
            c: hyp.c(),
            reason: "second solution coincides with the first (c = 1)",
        });
    }
    if hyp.reaches_lower_pole(DEFAULT_POLE_TOL) {
        return Err(Error::DegenerateC {
            c: hyp.c(),
            reason: "non-positive integer lower parameter reached by the series",
        });
    }
    Ok(SolutionBranch {
        id,
        mu1,
        mu2,
        extra_power,
        hyp,
        map: CoordinateMap::new(id.map_kind(), p.xi1, p.xi2),
    })
}

impl SolutionBranch {
    fn check_interior(&self, r: f64) -> Result<()> {
        if !(self.map.xi1 < r && r < self.map.xi2) {
            return Err(Error::Domain(format!(
                "r = {r} is outside the open interval ({}, {})",
                self.map.xi1, self.map.xi2
            )));
        }
        Ok(())
    }

    fn prefactor(&self, r: f64) -> f64 {
        (r - self.map.xi1).powf(self.mu1) * (self.map.xi2 - r).powf(self.mu2)
    }

    /// z^extra_power · ₂F₁(a,b;c;z), the part left after removing the endpoint powers.
    pub fn reduced_value(&self, r: f64, cfg: &EvalConfig) -> Result<f64> {
        self.check_interior(r)?;
        let z = self.map.z(r);
        Ok(power(z, self.extra_power) * hyp2f1(&self.hyp, z, cfg)?)
    }

    /// Value and first two r-derivatives at r.
    pub(crate) fn jet_at(&self, r: f64, cfg: &EvalConfig) -> Result<(f64, f64, f64)> {
        self.check_interior(r)?;
        let z = self.map.z(r);
        let k = self.map.dz_dr();

        let h0 = hyp2f1(&self.hyp, z, cfg)?;
        let h1 = hyp2f1_derivative(&self.hyp, z, cfg)?;
        let h2 = if self.hyp.terminating_degree() == Some(0) {
            0.0
        } else {
            let (factor, shifted) = self.hyp.shifted();
            factor * hyp2f1_derivative(&shifted, z, cfg)?
        };

        // g(z) = z^e H(z)
        let e = self.extra_power;
        let (q0, q1, q2) = if e == 0.0 {
            (1.0, 0.0, 0.0)
        } else {
            (power(z, e), e * power(z, e - 1.0), e * (e - 1.0) * power(z, e - 2.0))
        };
        let g0 = q0 * h0;
        let g1 = k * (q1 * h0 + q0 * h1);
        let g2 = k * k * (q2 * h0 + 2.0 * q1 * h1 + q0 * h2);

        // prefactor P with P'/P = L
        let (u, v) = (r - self.map.xi1, self.map.xi2 - r);
        let l = self.mu1 / u - self.mu2 / v;
        let dl = -self.mu1 / (u * u) - self.mu2 / (v * v);
        let pre = self.prefactor(r);

        Ok((
            pre * g0,
            pre * (l * g0 + g1),
            pre * ((l * l + dl) * g0 + 2.0 * l * g1 + g2),
        ))
    }
}

fn power(z: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        z.powf(e)
    }
}

/// (r-ξ₁)^μ₁ (ξ₂-r)^μ₂ z^extra_power ₂F₁(a,b;c;z) at an interior point.
pub fn evaluate(s: &SolutionBranch, r: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(s.prefactor(r) * s.reduced_value(r, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::legendre;
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn triple(s: &SolutionBranch) -> (f64, f64, f64) {
        (s.hyp.a(), s.hyp.b(), s.hyp.c())
    }

    #[test]
    fn legendre_first_kind_parameters() {
        let p = legendre(2.0);
        let hat1 = build_branch(&p, 0.0, 0.0, BranchId::Hat1).unwrap();
        assert_eq!(triple(&hat1), (-2.0, 3.0, 1.0));
        assert_eq!(hat1.map.kind, MapKind::MapI);
        let breve1 = build_branch(&p, 0.0, 0.0, BranchId::Breve1).unwrap();
        assert_eq!(triple(&breve1), (-2.0, 3.0, 1.0));
        assert_eq!(breve1.map.kind, MapKind::MapII);
    }

    #[test]
    fn legendre_second_kind_is_degenerate() {
        let p = legendre(2.0);
        for id in [BranchId::Hat2, BranchId::Breve2] {
            assert!(matches!(build_branch(&p, 0.0, 0.0, id), Err(Error::DegenerateC { .. })));
        }
    }

    #[test]
    fn legendre_values() {
        let hat1 = build_branch(&legendre(1.0), 0.0, 0.0, BranchId::Hat1).unwrap();
        // MapI for Legendre gives P_k(-r): odd k flips sign
        assert!((evaluate(&hat1, 0.3, &cfg()).unwrap() + 0.3).abs() < 1e-15);
        let breve1 = build_branch(&legendre(1.0), 0.0, 0.0, BranchId::Breve1).unwrap();
        assert!((evaluate(&breve1, 0.3, &cfg()).unwrap() - 0.3).abs() < 1e-15);
        let hat1 = build_branch(&legendre(2.0), 0.0, 0.0, BranchId::Hat1).unwrap();
        assert!((evaluate(&hat1, 0.5, &cfg()).unwrap() + 0.125).abs() < 1e-15);
    }

    #[test]
    fn complex_square_root_is_rejected() {
        let p = OdeParams {
            lambda: -1.0,
            ..legendre(0.0)
        };
        assert!(matches!(
            build_branch(&p, 0.0, 0.0, BranchId::Hat1),
            Err(Error::ComplexExponent { .. })
        ));
    }

    #[test]
    fn evaluate_outside_interval_is_domain_error() {
        let hat1 = build_branch(&legendre(2.0), 0.0, 0.0, BranchId::Hat1).unwrap();
        for r in [-1.0, 1.0, 1.3] {
            assert!(matches!(evaluate(&hat1, r, &cfg()), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn vanishes_at_left_endpoint_with_positive_exponent() {
        // exponents ±½ at both ends
        let p = OdeParams {
            b2: -1.0,
            lambda: 2.0,
            ..legendre(0.0)
        };
        let b = build_branch(&p, 0.5, 0.5, BranchId::Hat1).unwrap();
        let v = evaluate(&b, -1.0 + 1e-14, &cfg()).unwrap();
        assert!(v.abs() < 1e-6, "{v}");
    }

    #[test]
    fn map_endpoints_are_exact() {
        for (x1, x2) in [(-1.0, 1.0), (0.0, 1.0), (-2.75, 0.3), (1e-3, 7.5)] {
            let m1 = CoordinateMap::new(MapKind::MapI, x1, x2);
            let m2 = CoordinateMap::new(MapKind::MapII, x1, x2);
            assert_eq!((m1.z(x1), m1.z(x2)), (0.0, 1.0));
            assert_eq!((m2.z(x2), m2.z(x1)), (0.0, 1.0));
        }
    }

    #[test]
    fn second_kind_parameters_match_shifted_first_kind() {
        let p = OdeParams {
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
        };
        let e = super::super::indicial_exponents(&p);
        for (mu1, mu2) in [(e.mu1.lo(), e.mu2.lo()), (e.mu1.hi(), e.mu2.hi())] {
            let h1 = build_branch(&p, mu1, mu2, BranchId::Hat1).unwrap();
            let h2 = build_branch(&p, mu1, mu2, BranchId::Hat2).unwrap();
            let c = h1.hyp.c();
            assert!((h2.hyp.a() - (h1.hyp.a() - c + 1.0)).abs() < 1e-12);
            assert!((h2.hyp.b() - (h1.hyp.b() - c + 1.0)).abs() < 1e-12);
            assert!((h2.hyp.c() - (2.0 - c)).abs() < 1e-12);
            assert!((h2.extra_power - (1.0 - c)).abs() < 1e-12);

            let b1 = build_branch(&p, mu1, mu2, BranchId::Breve1).unwrap();
            let b2 = build_branch(&p, mu1, mu2, BranchId::Breve2).unwrap();
            let c = b1.hyp.c();
            assert!((b2.hyp.a() - (b1.hyp.a() - c + 1.0)).abs() < 1e-12);
            assert!((b2.hyp.b() - (b1.hyp.b() - c + 1.0)).abs() < 1e-12);
            assert!((b2.hyp.c() - (2.0 - c)).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_names_parse() {
        for id in BranchId::ALL {
            assert_eq!(id.name().parse::<BranchId>().unwrap(), id);
        }
        assert!("hat3".parse::<BranchId>().is_err());
    }
}
