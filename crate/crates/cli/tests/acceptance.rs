//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use hyperlegendre::hypergeom::{
    gamma, hyp2f1, inversion_15_8_6, inversion_lhs, pfaff_transform, quadratic_15_8_20, EvalConfig, Hyp2F1,
};
use hyperlegendre::legendre::{
    generalized_solutions, kuipers_ode, quadratic_path_check, universal_hypergeometric, universal_ode_embedding,
    universal_sum, LegendreTriple, UniversalParams, UniversalSolution,
};
use hyperlegendre::ode::{
    build_branch, chebyshev_points, connection_check, indicial_exponents, residual, second_connection_check, BranchId,
};
use hyperlegendre::sampling::Sampler;
use hyperlegendre::verify::{CONNECTION_MAX_LOWER, DRAW_MARGIN};
use hyperlegendre::Error;

const SEED: u64 = 20240611;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

/// Worst error seen and the bound it is held to.
struct Outcome {
    worst: f64,
    tol: f64,
    note: String,
}

impl Outcome {
    fn new(tol: f64) -> Self {
        Self {
            worst: 0.0,
            tol,
            note: String::new(),
        }
    }

    fn record(&mut self, err: f64) {
        // NaN must count as a failure
        if !(err <= self.worst) {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn fail(&mut self, why: String) {
        self.worst = f64::INFINITY;
        if self.note.is_empty() {
            self.note = why;
        }
    }

    fn passed(&self) -> bool {
        self.worst <= self.tol
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn indicial() -> Outcome {
    let mut out = Outcome::new(1e-10);
    let mut s = Sampler::new(SEED);
    for _ in 0..1000 {
        let p = s.ode_params();
        let e = indicial_exponents(&p);
        for (q, pair) in [
            (p.indicial_xi1(), e.mu1),
            (p.indicial_xi2(), e.mu2),
            (p.indicial_inf(), e.mu_inf),
        ] {
            if let Some((lo, hi)) = pair.real() {
                out.record(q.residual(lo).abs().max(q.residual(hi).abs()));
            }
        }
    }
    out
}

fn solution_residuals() -> Outcome {
    let mut out = Outcome::new(1e-8);
    let mut s = Sampler::new(SEED + 1);
    let mut branches = 0;
    for _ in 0..200 {
        let Some(p) = s.ode_params_real(DRAW_MARGIN) else {
            out.fail("sampler found no admissible draw".into());
            continue;
        };
        let e = indicial_exponents(&p);
        for mu1 in [e.mu1.lo(), e.mu1.hi()] {
            for mu2 in [e.mu2.lo(), e.mu2.hi()] {
                for id in BranchId::ALL {
                    let b = match build_branch(&p, mu1, mu2, id) {
                        Ok(b) => b,
                        Err(Error::DegenerateC { .. }) => continue,
                        Err(e) => {
                            out.fail(format!("{id:?}: {e}"));
                            continue;
                        }
                    };
                    branches += 1;
                    for r in chebyshev_points(p.xi1, p.xi2, 20) {
                        match residual(&b, &p, r, &cfg()) {
                            Ok(res) => out.record(res),
                            Err(e) => out.fail(format!("{id:?} at {r}: {e}")),
                        }
                    }
                }
            }
        }
    }
    out.note = format!("{branches} branches");
    out
}

fn connection() -> Outcome {
    let mut out = Outcome::new(1e-8);
    let mut s = Sampler::new(SEED + 2);
    let err = |lhs: f64, rhs: f64| (lhs - rhs).abs() / (1.0 + lhs.abs());
    for _ in 0..100 {
        let Some(p) = s.ode_params_bounded(DRAW_MARGIN, CONNECTION_MAX_LOWER) else {
            out.fail("sampler found no admissible draw".into());
            continue;
        };
        let e = indicial_exponents(&p);
        let (mu1, mu2) = (e.mu1.hi(), e.mu2.hi());
        for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let r = p.xi1 + t * p.width();
            match connection_check(&p, mu1, mu2, r, &cfg()) {
                Ok(c) => out.record(err(c.lhs, c.rhs)),
                Err(e) => out.fail(format!("first relation at {r}: {e}")),
            }
            match second_connection_check(&p, mu1, mu2, r, &cfg()) {
                Ok(c) => {
                    out.record(err(c.lhs, c.rhs_direct));
                    out.record(err(c.lhs, c.rhs_pfaff));
                }
                Err(e) => out.fail(format!("second relation at {r}: {e}")),
            }
        }
    }
    out
}

/// Bonnet recurrence, written out here so the check does not lean on the library.
fn bonnet(k: u32, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if k == 0 {
        return p0;
    }
    for j in 1..k {
        let j = f64::from(j);
        let p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn classical_reduction() -> Outcome {
    let mut out = Outcome::new(1e-11);
    let f1 = |k: u32, r: f64| {
        let t = LegendreTriple {
            k: f64::from(k),
            m: 0.0,
            n: 0.0,
        };
        let p = kuipers_ode(&t, -1.0, 1.0);
        generalized_solutions(&t, 0.0, 0.0, &p, r, &cfg()).map(|(f1, _)| f1)
    };
    for k in 0..=6 {
        for r in linspace(-0.95, 0.95, 21) {
            match f1(k, r) {
                Ok(v) => out.record((v - bonnet(k, r)).abs()),
                Err(e) => out.fail(format!("k = {k}, r = {r}: {e}")),
            }
        }
    }
    for (k, r, expected) in [(2, 0.5, -0.125), (1, 0.3, 0.3)] {
        match f1(k, r) {
            Ok(v) => out.record((v - expected).abs()),
            Err(e) => out.fail(format!("spot value P_{k}({r}): {e}")),
        }
    }
    out
}

fn universal_equivalence() -> Outcome {
    let mut out = Outcome::new(1e-10);
    let mut parity = 0.0_f64;
    let grid = linspace(-0.95, 0.95, 21);
    for mp in [0.5, 1.0, 1.5, 2.0] {
        for n in 0..=10u32 {
            let u = UniversalParams::from_degree(mp + f64::from(n), mp).expect("valid degree");
            let sums: Vec<f64> = grid
                .iter()
                .map(|&r| universal_sum(&u, r).expect("inside [-1, 1]"))
                .collect();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for (&r, &v) in grid.iter().zip(&sums) {
                parity = parity.max((universal_sum(&u, -r).expect("inside [-1, 1]") - sign * v).abs());
            }
            if n % 2 == 1 {
                continue;
            }
            let scale = sums.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            for (&r, &v) in grid.iter().zip(&sums) {
                match universal_hypergeometric(&u, r, &cfg()) {
                    Ok(h) => out.record((h - v).abs() / scale),
                    Err(e) => out.fail(format!("m′ = {mp}, n = {n}, r = {r}: {e}")),
                }
            }
        }
    }
    if parity > 1e-12 {
        out.fail(format!("parity defect {parity:e}"));
    }
    out.note = format!("parity defect {parity:e}");
    out
}

fn universal_membership() -> Outcome {
    let mut out = Outcome::new(1e-8);
    let potentials = [
        (0.0, 0.0, 0.5),
        (0.0, 0.0, 1.0),
        (0.0, 0.0, 2.0),
        (0.3, 0.45, 0.5),
        (-0.2, 0.6, 1.2),
    ];
    for (a, c, m) in potentials {
        for n in 0..=8 {
            let u = UniversalParams::new(a, c, m, n).expect("valid potential");
            let p = universal_ode_embedding(&u);
            for r in linspace(-0.95, 0.95, 21) {
                match residual(&UniversalSolution(u), &p, r, &cfg()) {
                    Ok(res) => out.record(res),
                    Err(e) => out.fail(format!("{u:?} at {r}: {e}")),
                }
            }
        }
    }
    out
}

fn quadratic_proportionality() -> Outcome {
    let mut out = Outcome::new(1e-8);
    for (mp, n) in [(0.5, 2u32), (1.0, 4), (1.5, 6)] {
        let u = UniversalParams::from_degree(mp + f64::from(n), mp).expect("valid degree");
        let p = universal_ode_embedding(&u);
        let mut ratios = Vec::new();
        for r in linspace(-0.9, 0.9, 19) {
            match quadratic_path_check(&u, &p, r, &cfg()) {
                Ok(q) => ratios.push(q.ratio()),
                Err(Error::DegenerateCase(_)) => {}
                Err(e) => out.fail(format!("m′ = {mp}, n = {n}, r = {r}: {e}")),
            }
        }
        if ratios.len() < 10 {
            out.fail(format!("m′ = {mp}, n = {n}: only {} usable points", ratios.len()));
            continue;
        }
        let reference = ratios[0];
        for q in &ratios {
            out.record((q / reference - 1.0).abs());
        }
    }
    out
}

fn identities() -> Outcome {
    let mut out = Outcome::new(1e-11);
    for a in -12..=12 {
        for b in -12..=12 {
            for c in [-2.75, -0.5, 0.375, 1.125, 3.0625] {
                let p = Hyp2F1::new(f64::from(a) / 4.0, f64::from(b) / 4.0, c);
                let (q, _) = pfaff_transform(&p);
                let (back, _) = pfaff_transform(&q);
                if (back.a(), back.b(), back.c()) != (p.a(), p.b(), p.c()) {
                    out.fail(format!("Pfaff map is not an involution at {p:?}"));
                }
            }
        }
    }
    for x in linspace(0.5, 10.0, 200) {
        let lhs = gamma(2.0 * x).expect("positive argument");
        let rhs = (2.0 * x - 1.0).exp2() * gamma(x).expect("positive") * gamma(x + 0.5).expect("positive") / PI.sqrt();
        out.record(((lhs - rhs) / lhs).abs());
    }
    // 30-digit reference values
    let inversions = [
        (3, 0.35, 1.4, 2.5, -2.5002955082742315613),
        (4, -0.6, 0.75, -1.7, 166.80214185267855473),
        (5, 1.25, 2.2, 0.3, -2.026316054154996033),
    ];
    for (m, b, c, z, oracle) in inversions {
        match (inversion_lhs(m, b, c, z, &cfg()), inversion_15_8_6(m, b, c, z, &cfg())) {
            (Ok(l), Ok(r)) => {
                out.record(((l - oracle) / oracle).abs());
                out.record(((r - oracle) / oracle).abs());
            }
            (l, r) => out.fail(format!("15.8.6 at m = {m}: {l:?} / {r:?}")),
        }
    }
    let quadratics = [
        (0.3, 1.2, 0.25, 1.0503328864782395878),
        (-0.4, 0.8, 0.1, 0.92700381102539049466),
        (1.7, 2.5, 0.45, 0.77231623898080814962),
    ];
    for (a, c, z, oracle) in quadratics {
        match (
            hyp2f1(&Hyp2F1::new(a, 1.0 - a, c), z, &cfg()),
            quadratic_15_8_20(a, c, z, &cfg()),
        ) {
            (Ok(l), Ok(r)) => {
                out.record(((l - oracle) / oracle).abs());
                out.record(((r - oracle) / oracle).abs());
            }
            (l, r) => out.fail(format!("15.8.20 at a = {a}: {l:?} / {r:?}")),
        }
    }
    out
}

fn cli_determinism() -> Outcome {
    let mut out = Outcome::new(0.0);
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hyperlegendre"))
            .args(["verify", "--seed", "42", "--cases", "100"])
            .output()
            .expect("binary runs")
    };
    let (first, second) = (run(), run());
    if !first.status.success() || !second.status.success() {
        out.fail(format!("exit statuses {} and {}", first.status, second.status));
    }
    if first.stdout != second.stdout || first.stdout.is_empty() {
        out.fail("outputs differ between runs".into());
    }
    out
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 9] = [
        ("1 indicial roots", indicial),
        ("2 solution residuals", solution_residuals),
        ("3 connection identities", connection),
        ("4 classical Legendre reduction", classical_reduction),
        ("5 universal sum vs closed form", universal_equivalence),
        ("6 universal equation membership", universal_membership),
        ("7 quadratic-path proportionality", quadratic_proportionality),
        ("8 identity micro-suite", identities),
        ("9 CLI determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let o = check();
        let status = if o.passed() { "PASS" } else { "FAIL" };
        failures += usize::from(!o.passed());
        let note = if o.note.is_empty() {
            String::new()
        } else {
            format!("  ({})", o.note)
        };
        println!("{status}  {name:<34} worst {:.3e}  tol {:.0e}{note}", o.worst, o.tol);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
