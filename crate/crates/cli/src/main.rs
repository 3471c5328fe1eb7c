//! `bergman-spectra`: tables, verification suites and asymptotic sweeps
//! for the singular values of `T = C·P` and `R = P·C·P`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 a value did not
//! converge or a verification suite failed, 3 a file could not be written.

mod commands;
mod config;
mod output;
mod plot;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bergman_spectra::spectra::Method;
use clap::{Args, Parser, Subcommand};

use config::{parse_methods, Defaults, OperatorChoice, OutputFormat, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Write(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Write(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bergman-spectra", version, about = "Singular values of Cauchy-transform operators on weighted Bergman spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate s_n(T) and s_n(R) for each n and method
    Table(CommonArgs),
    /// Run the cross-check suites applicable to (alpha, beta)
    Verify(CommonArgs),
    /// Compare s_n with c / n^(alpha+1) on a geometric grid of n
    Asymptotics(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Exponent of (1 - |z|^2) in the weight [default: 0.5]
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Exponent of |z|^2 in the weight [default: -0.5]
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// T, R or both [default: both]
    #[arg(long)]
    operator: Option<OperatorChoice>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    /// Comma-separated subset of quadrature,hypergeometric,asymptotic
    #[arg(long)]
    methods: Option<String>,
    /// Relative accuracy a value must reach to count as converged [default: 1e-8]
    #[arg(long)]
    rel_tol: Option<f64>,
    /// csv or json [default: csv]
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Write an SVG log-log plot to this path
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Accept -1 < beta <= -1/2 (formulas only, no operator-theoretic checks)
    #[arg(long)]
    allow_exploratory: bool,
    /// key = value file; flags given on the command line take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(self, defaults: Defaults) -> Result<RunConfig, CliError> {
        let flags = Overrides {
            alpha: self.alpha,
            beta: self.beta,
            operator: self.operator,
            n_min: self.n_min,
            n_max: self.n_max,
            methods: self.methods.as_deref().map(parse_methods).transpose().map_err(CliError::Config)?,
            rel_tol: self.rel_tol,
            format: self.format,
            plot: self.plot,
            allow_exploratory: self.allow_exploratory.then_some(true),
        };
        let file = match &self.config {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let cfg = RunConfig::resolve(flags.over(file), defaults)?;
        if cfg.boundary_note {
            eprintln!(
                "note: beta = -0.5 is the boundary of -1/2 < beta <= 0; evaluating it as in the published tables"
            );
        }
        Ok(cfg)
    }
}

const TABLE_DEFAULTS: Defaults = Defaults {
    n_min: 1,
    n_max: 21,
    methods: &[Method::Quadrature, Method::Asymptotic],
};

const VERIFY_DEFAULTS: Defaults = TABLE_DEFAULTS;

const ASYMPTOTICS_DEFAULTS: Defaults = Defaults {
    n_min: 1,
    n_max: 8192,
    methods: &[Method::Quadrature],
};

fn run(cli: Cli) -> Result<bool, CliError> {
    let outcome = match cli.command {
        Command::Table(args) => commands::table(&args.resolve(TABLE_DEFAULTS)?)?,
        Command::Verify(args) => commands::verify(&args.resolve(VERIFY_DEFAULTS)?),
        Command::Asymptotics(args) => commands::asymptotics(&args.resolve(ASYMPTOTICS_DEFAULTS)?)?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Write(format!("cannot write to stdout: {e}")))?;
    Ok(outcome.all_converged)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
