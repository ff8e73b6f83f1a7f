#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod error;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, LegendreCommand};
use commands::Report;
use error::CliError;

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Exponents { params } => commands::exponents(params),
        Command::Solve { params, roots } => commands::solve(params, roots),
        Command::Eval {
            params,
            grid,
            branch,
            roots,
        } => commands::eval(params, grid, *branch, roots),
        Command::Residual {
            params,
            grid,
            branch,
            roots,
            tol,
        } => commands::residual_cmd(params, grid, *branch, roots, *tol),
        Command::Legendre { family } => match family {
            LegendreCommand::Universal { params, grid, form } => commands::universal(params, grid, *form),
            LegendreCommand::Generalized { triple, grid, mu1, mu2 } => commands::generalized(triple, grid, *mu1, *mu2),
            LegendreCommand::Kuipers { triple, grid } => commands::kuipers(triple, grid),
            LegendreCommand::Quadratic { params, grid } => commands::quadratic(params, grid, cli.verbose),
        },
        Command::Verify { seed, cases, tol } => commands::verify(*seed, *cases, *tol, cli.verbose),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(&cli).and_then(|report| {
        let mut out = io::stdout().lock();
        report.table.write(cli.format, &mut out)?;
        out.flush()?;
        Ok(report.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
