mod commands;
mod input;
mod output;
mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    /// Failure summary; the report itself has already been written.
    #[error("{0}")]
    Tolerance(String),
    #[error(transparent)]
    Core(#[from] ditrans::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// A closed downstream pipe (e.g. `| head`) is not a failure.
    fn is_broken_pipe(&self) -> bool {
        match self {
            CliError::Io(e) => e.kind() == std::io::ErrorKind::BrokenPipe,
            CliError::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(e) if e.kind() == std::io::ErrorKind::BrokenPipe),
            CliError::Json(e) => e.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe),
            _ => false,
        }
    }

    fn exit_code(&self) -> u8 {
        use ditrans::Error as E;
        match self {
            CliError::Validation(_) => 1,
            CliError::Core(E::Invalid(_) | E::DegenerateParameter(_) | E::Index { .. }) => 1,
            CliError::Csv(_) | CliError::Json(_) => 1,
            CliError::Tolerance(_) => 2,
            _ => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Kernel,
    Jost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    R,
    Xi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gamma,
    Hyp,
    Wronskian,
    Connection,
    Resolvent,
    Parseval,
    Roundtrip,
    GramR,
    GramXi,
    Romanovski,
    AddendumLaguerre,
    AddendumMeixner,
    AddendumJacobi,
    #[value(name = "addendum-2f2")]
    Addendum2f2,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Upper end of a fixed spectral grid; without it the grid is chosen adaptively.
    #[arg(long, global = true)]
    pub s_max: Option<f64>,
    /// Gauss-Legendre nodes per spectral panel (or table rows for `tabulate`).
    #[arg(long, global = true)]
    pub s_nodes: Option<usize>,
    /// Required accuracy of reported residuals.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance of the spectral tail.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Bundled function name or CSV file (x, re, im); transform JSON for `inverse`.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Parser)]
#[command(name = "ditrans", version, about = "Double index hypergeometric transform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral coefficients of a function: s, Re/Im phi_1, Re/Im phi_2.
    Transform {
        #[arg(long, value_enum, default_value_t = Basis::Kernel)]
        basis: Basis,
    },
    /// Reconstruct a function from `transform --format json` output.
    Inverse {
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 0.1)]
        x_step: f64,
    },
    /// Forward then inverse transform, reporting the reconstruction error.
    Roundtrip {
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 0.1)]
        x_step: f64,
    },
    /// Gram matrix of the r^(n) or Xi_n family.
    Gram {
        #[arg(long, value_enum, default_value_t = Family::R)]
        family: Family,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        n_max: i64,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Spectral density M(s) on a uniform s grid.
    Tabulate {
        #[arg(long, value_enum, default_value_t = Basis::Kernel)]
        basis: Basis,
    },
    /// Continuous kernels Q_1, Q_2 at fixed s, or a discrete eigenfunction R_k.
    Kernel {
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 5.0)]
        x_max: f64,
        #[arg(long, default_value_t = 0.1)]
        x_step: f64,
    },
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("DITRANS_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("DITRANS_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    let c = &cli.common;
    match cli.command {
        Command::Transform { basis } => commands::transform(c, basis),
        Command::Inverse { x_max, x_step } => commands::inverse(c, x_max, x_step),
        Command::Roundtrip { x_max, x_step } => commands::roundtrip(c, x_max, x_step),
        Command::Gram { family, n_min, n_max } => commands::gram(c, family, n_min, n_max),
        Command::Verify { suite, theta, t, rho } => suites::verify(c, suite, suites::Extra { theta, t, rho }),
        Command::Tabulate { basis } => commands::tabulate(c, basis),
        Command::Kernel { s, k, x_max, x_step } => commands::kernel(c, s, k, x_max, x_step),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ditrans: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
