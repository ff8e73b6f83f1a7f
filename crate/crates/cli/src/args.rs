use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hyperlegendre",
    version,
    about = "Hypergeometric solutions of three-singular-point equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Progress notes on the error stream.
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indicial roots at ξ₁, ξ₂ and infinity.
    Exponents {
        #[arg(long)]
        params: PathBuf,
    },
    /// Parameters of the four solution branches.
    Solve {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Branch values on a grid.
    Eval {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        /// Single branch; all buildable branches when omitted.
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        #[command(flatten)]
        roots: RootArgs,
    },
    /// Normalized residual of one branch on a grid; a final row holds the maximum.
    Residual {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = BranchArg::Hat1)]
        branch: BranchArg,
        #[command(flatten)]
        roots: RootArgs,
        /// Exit with status 1 when the maximum exceeds this.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Generalized and universal associated Legendre families.
    Legendre {
        #[command(subcommand)]
        family: LegendreCommand,
    },
    /// Seeded property suites; exit status 1 when any case misses the tolerance.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum LegendreCommand {
    /// P_{ℓ′}^{m′}(r) from the finite sum or the hypergeometric closed form.
    Universal {
        #[command(flatten)]
        params: UniversalArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = UniversalForm::Sum)]
        form: UniversalForm,
    },
    /// F₁ and F₂ of the generalized family.
    Generalized {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
        /// Exponent at ξ₁; n/2 when omitted.
        #[arg(long, allow_hyphen_values = true)]
        mu1: Option<f64>,
        /// Exponent at ξ₂; -m/2 when omitted.
        #[arg(long, allow_hyphen_values = true)]
        mu2: Option<f64>,
    },
    /// Residual of F₁, F₂ in the Kuipers form of the equation.
    Kuipers {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
    },
    /// Each stage of the quadratic-transformation route to the closed form.
    Quadratic {
        #[command(flatten)]
        params: UniversalArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: Grid,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RootArgs {
    #[arg(long, value_enum, default_value_t = RootChoice::Hi)]
    pub mu1_root: RootChoice,
    #[arg(long, value_enum, default_value_t = RootChoice::Hi)]
    pub mu2_root: RootChoice,
}

#[derive(Debug, Clone, Args)]
pub struct UniversalArgs {
    /// JSON file with ell, mprime, a, b, c, m, lambda, n_index.
    #[arg(long, conflicts_with_all = ["ell", "mprime"])]
    pub params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mprime: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Defaults to √(m′² - a - c).
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TripleArgs {
    /// JSON file with k, m, n.
    #[arg(long, conflicts_with_all = ["k", "m", "n"])]
    pub params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<f64>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub xi1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub xi2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootChoice {
    Lo,
    Hi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Hat1,
    Hat2,
    Breve1,
    Breve2,
}

impl From<BranchArg> for hyperlegendre::ode::BranchId {
    fn from(b: BranchArg) -> Self {
        use hyperlegendre::ode::BranchId;
        match b {
            BranchArg::Hat1 => BranchId::Hat1,
            BranchArg::Hat2 => BranchId::Hat2,
            BranchArg::Breve1 => BranchId::Breve1,
            BranchArg::Breve2 => BranchId::Breve2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UniversalForm {
    Sum,
    Closed,
}

/// `start:stop:count`, endpoints included. Kept as text until the command
/// runs so that a bad grid maps to the parse/invariant exit codes rather
/// than to a usage error.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(String);

impl FromStr for Grid {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Grid(s.to_owned()))
    }
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let parts: Vec<&str> = self.0.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(CliError::Parse(format!(
                "grid {:?} is not of the form start:stop:count",
                self.0
            )));
        };
        let num = |s: &str, what: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Parse(format!("grid {what} {s:?} is not a number")))
        };
        let (start, stop) = (num(start, "start")?, num(stop, "stop")?);
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("grid count {count:?} is not a non-negative integer")))?;
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(CliError::Invariant(format!(
                "grid needs finite start < stop (got {start}, {stop})"
            )));
        }
        if count < 2 {
            return Err(CliError::Invariant(format!(
                "grid needs at least 2 points (got {count})"
            )));
        }
        let step = (stop - start) / (count - 1) as f64;
        Ok((0..count)
            .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
            .collect())
    }
}
