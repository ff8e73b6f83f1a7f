use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use hyperlegendre::hypergeom::EvalConfig;
use hyperlegendre::legendre::{
    generalized_branches, kuipers_reduction_check, quadratic_path_check, universal_hypergeometric,
    universal_ode_embedding, universal_sum, LegendreTriple, UniversalParams,
};
use hyperlegendre::ode::{
    build_branch, evaluate, indicial_exponents, residual, BranchId, IndicialQuadratic, OdeParams, RootPair, Solution,
};
use hyperlegendre::verify::{run_all, VerifyConfig};
use hyperlegendre::Error;

use crate::args::{BranchArg, Grid, RootArgs, RootChoice, TripleArgs, UniversalArgs, UniversalForm};
use crate::error::CliError;
use crate::output::{Cell, Table};

/// What a command produced: the table to print and whether its checks passed.
pub struct Report {
    pub table: Table,
    pub passed: bool,
}

impl Report {
    fn ok(table: Table) -> Self {
        Self { table, passed: true }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if field == "." || field == "?" {
            CliError::Parse(format!("{}: {inner}", path.display()))
        } else {
            CliError::Parse(format!("{}: field `{field}`: {inner}", path.display()))
        }
    })
}

fn read_ode(path: &Path) -> Result<OdeParams, CliError> {
    let p: OdeParams = read_json(path)?;
    p.validate()?;
    Ok(p)
}

fn pick(pair: &RootPair, choice: RootChoice, at: &str) -> Result<f64, CliError> {
    let (lo, hi) = pair
        .real()
        .ok_or_else(|| CliError::Numerical(format!("indicial roots at {at} are complex")))?;
    Ok(match choice {
        RootChoice::Lo => lo,
        RootChoice::Hi => hi,
    })
}

fn exponents_for(p: &OdeParams, roots: &RootArgs) -> Result<(f64, f64), CliError> {
    let e = indicial_exponents(p);
    Ok((
        pick(&e.mu1, roots.mu1_root, "xi1")?,
        pick(&e.mu2, roots.mu2_root, "xi2")?,
    ))
}

pub fn exponents(params: &Path) -> Result<Report, CliError> {
    let p = read_ode(params)?;
    let e = indicial_exponents(&p);
    let mut t = Table::new(["point", "kind", "root_lo", "root_hi", "residual_lo", "residual_hi"]);
    let rows: [(&str, IndicialQuadratic, RootPair); 3] = [
        ("xi1", p.indicial_xi1(), e.mu1),
        ("xi2", p.indicial_xi2(), e.mu2),
        ("inf", p.indicial_inf(), e.mu_inf),
    ];
    for (name, q, pair) in rows {
        match pair.real() {
            Some((lo, hi)) => t.push(vec![
                name.into(),
                "real".into(),
                lo.into(),
                hi.into(),
                q.residual(lo).abs().into(),
                q.residual(hi).abs().into(),
            ]),
            // conjugate pair re ± i·im: report re and im in the root columns
            None => t.push(vec![
                name.into(),
                "complex".into(),
                pair.roots.0.into(),
                pair.roots.1.into(),
                Cell::Num(f64::NAN),
                Cell::Num(f64::NAN),
            ]),
        }
    }
    Ok(Report::ok(t))
}

pub fn solve(params: &Path, roots: &RootArgs) -> Result<Report, CliError> {
    let p = read_ode(params)?;
    let (mu1, mu2) = exponents_for(&p, roots)?;
    let mut t = Table::new(["branch", "mu1", "mu2", "a", "b", "c", "extra_power", "map", "status"]);
    for id in BranchId::ALL {
        match build_branch(&p, mu1, mu2, id) {
            Ok(b) => t.push(vec![
                id.name().into(),
                mu1.into(),
                mu2.into(),
                b.hyp.a().into(),
                b.hyp.b().into(),
                b.hyp.c().into(),
                b.extra_power.into(),
                format!("{:?}", b.map.kind).into(),
                "ok".into(),
            ]),
            Err(e @ Error::DegenerateC { .. }) => {
                let nan = || Cell::Num(f64::NAN);
                t.push(vec![
                    id.name().into(),
                    mu1.into(),
                    mu2.into(),
                    nan(),
                    nan(),
                    nan(),
                    nan(),
                    format!("{:?}", id.map_kind()).into(),
                    e.to_string().into(),
                ])
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::ok(t))
}

pub fn eval(params: &Path, grid: &Grid, branch: Option<BranchArg>, roots: &RootArgs) -> Result<Report, CliError> {
    let p = read_ode(params)?;
    let points = grid.points()?;
    let (mu1, mu2) = exponents_for(&p, roots)?;
    let cfg = EvalConfig::default();

    let branches = match branch {
        Some(b) => vec![("value", build_branch(&p, mu1, mu2, b.into())?)],
        None => BranchId::ALL
            .into_iter()
            .filter_map(|id| build_branch(&p, mu1, mu2, id).ok().map(|b| (id.name(), b)))
            .collect(),
    };
    if branches.is_empty() {
        return Err(CliError::Numerical("no branch can be built for these exponents".into()));
    }
    let mut t = Table::new(std::iter::once("r").chain(branches.iter().map(|(n, _)| *n)));
    for r in points {
        let mut row = vec![Cell::Num(r)];
        for (_, b) in &branches {
            row.push(evaluate(b, r, &cfg)?.into());
        }
        t.push(row);
    }
    Ok(Report::ok(t))
}

pub fn residual_cmd(
    params: &Path,
    grid: &Grid,
    branch: BranchArg,
    roots: &RootArgs,
    tol: Option<f64>,
) -> Result<Report, CliError> {
    if let Some(tol) = tol {
        if !(tol > 0.0) {
            return Err(CliError::Invariant(format!("tol must be positive (got {tol})")));
        }
    }
    let p = read_ode(params)?;
    let points = grid.points()?;
    let (mu1, mu2) = exponents_for(&p, roots)?;
    let b = build_branch(&p, mu1, mu2, branch.into())?;
    let cfg = EvalConfig::default();
    let mut t = Table::new(["r", "residual"]);
    let mut worst = 0.0_f64;
    for r in points {
        let res = residual(&b, &p, r, &cfg)?;
        worst = worst.max(res);
        t.push(vec![r.into(), res.into()]);
    }
    t.push(vec!["max".into(), worst.into()]);
    Ok(Report {
        table: t,
        passed: tol.is_none_or(|tol| worst <= tol),
    })
}

fn universal_params(args: &UniversalArgs) -> Result<UniversalParams, CliError> {
    if let Some(path) = &args.params {
        let u: UniversalParams = read_json(path)?;
        u.validate()?;
        return Ok(u);
    }
    let (Some(ell), Some(mprime)) = (args.ell, args.mprime) else {
        return Err(CliError::Parse("give --params or both --ell and --mprime".into()));
    };
    let n = ell - mprime;
    let n_index = n.round();
    if !(n_index >= 0.0 && (n - n_index).abs() <= 1e-9) {
        return Err(CliError::Invariant(format!(
            "ℓ′ - m′ = {n} must be a non-negative integer"
        )));
    }
    let m = args
        .m
        .unwrap_or_else(|| (mprime * mprime - args.a - args.c).max(0.0).sqrt());
    let u = UniversalParams {
        ell,
        mprime,
        a: args.a,
        b: 0.0,
        c: args.c,
        m,
        lambda: ell * (ell + 1.0) - args.c,
        n_index: n_index as u32,
    };
    u.validate()?;
    Ok(u)
}

fn triple(args: &TripleArgs) -> Result<LegendreTriple, CliError> {
    let t = match &args.params {
        Some(path) => read_json(path)?,
        None => {
            let (Some(k), Some(m), Some(n)) = (args.k, args.m, args.n) else {
                return Err(CliError::Parse("give --params or all of --k, --m, --n".into()));
            };
            LegendreTriple { k, m, n }
        }
    };
    t.validate()?;
    Ok(t)
}

pub fn universal(args: &UniversalArgs, grid: &Grid, form: UniversalForm) -> Result<Report, CliError> {
    let u = universal_params(args)?;
    let cfg = EvalConfig::default();
    let mut t = Table::new(["r", "value"]);
    for r in grid.points()? {
        let v = match form {
            UniversalForm::Sum => universal_sum(&u, r)?,
            UniversalForm::Closed => universal_hypergeometric(&u, r, &cfg)?,
        };
        t.push(vec![r.into(), v.into()]);
    }
    Ok(Report::ok(t))
}

pub fn generalized(args: &TripleArgs, grid: &Grid, mu1: Option<f64>, mu2: Option<f64>) -> Result<Report, CliError> {
    let tr = triple(args)?;
    let points = grid.points()?;
    let (mu1, mu2) = (mu1.unwrap_or(0.5 * tr.n), mu2.unwrap_or(-0.5 * tr.m));
    let g = generalized_branches(&tr, mu1, mu2, args.xi1, args.xi2)?;
    let cfg = EvalConfig::default();
    let f1 = g.f1.ok();
    let f2 = g.f2.ok();
    if f1.is_none() && f2.is_none() {
        return Err(CliError::Numerical(
            "both F1 and F2 are degenerate for this triple".into(),
        ));
    }
    let mut columns = vec!["r"];
    columns.extend(f1.as_ref().map(|_| "f1"));
    columns.extend(f2.as_ref().map(|_| "f2"));
    let mut t = Table::new(columns);
    for r in points {
        let mut row = vec![Cell::Num(r)];
        if let Some(b) = &f1 {
            row.push(b.jet(r, &cfg)?.value.into());
        }
        if let Some(b) = &f2 {
            row.push(b.jet(r, &cfg)?.value.into());
        }
        t.push(row);
    }
    Ok(Report::ok(t))
}

pub fn kuipers(args: &TripleArgs, grid: &Grid) -> Result<Report, CliError> {
    let tr = triple(args)?;
    let cfg = EvalConfig::default();
    let mut t = Table::new(["r", "residual"]);
    for r in grid.points()? {
        t.push(vec![
            r.into(),
            kuipers_reduction_check(&tr, args.xi1, args.xi2, r, &cfg)?.into(),
        ]);
    }
    Ok(Report::ok(t))
}

/// Points where a stage vanishes are left out, since the ratio is undefined there.
pub fn quadratic(args: &UniversalArgs, grid: &Grid, verbose: bool) -> Result<Report, CliError> {
    let u = universal_params(args)?;
    let p = universal_ode_embedding(&u);
    let cfg = EvalConfig::default();
    let mut t = Table::new(["r", "hat1", "quadratic", "reduced", "closed", "ratio"]);
    for r in grid.points()? {
        match quadratic_path_check(&u, &p, r, &cfg) {
            Ok(q) => t.push(vec![
                r.into(),
                q.hat1.into(),
                q.quadratic.into(),
                q.reduced.into(),
                q.closed.into(),
                q.ratio().into(),
            ]),
            Err(Error::DegenerateCase(msg)) => {
                if verbose {
                    eprintln!("skipping r = {r}: {msg}");
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::ok(t))
}

pub fn verify(seed: u64, cases: usize, tol: f64, verbose: bool) -> Result<Report, CliError> {
    let cfg = VerifyConfig::new(seed, cases, tol);
    let reports = run_all(&cfg)?;
    let mut t = Table::new([
        "suite",
        "passed",
        "failed",
        "skipped",
        "total",
        "max_error",
        "tol",
        "status",
    ]);
    let mut all = true;
    for r in &reports {
        if verbose {
            eprintln!("{}: {}/{} within {:e}", r.name, r.passed, r.total(), r.tol);
        }
        all &= r.ok();
        t.push(vec![
            r.name.into(),
            r.passed.into(),
            r.failed.into(),
            r.skipped.into(),
            r.total().into(),
            r.max_error.into(),
            r.tol.into(),
            if r.ok() { "pass" } else { "fail" }.into(),
        ]);
    }
    Ok(Report { table: t, passed: all })
}
