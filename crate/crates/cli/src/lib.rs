//! Command-line front end: figure sweeps, identity verification and gnuplot
//! script emission.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use udiscord::families::{CustomState, Family};
use udiscord::optimize::OptConfig;

pub mod format;
pub mod quantity;
pub mod report;
pub mod sweep;
pub mod verify;

use quantity::Quantity;
use report::{plot_script, CsvTable};
use sweep::{run_sweep, SweepConfig};
use verify::{parse_dims, run_verify, PovmPolicy, VerifyConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "udiscord",
    version,
    about = "One-way unlocalizable discord and its polygamy deficits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate quantities over θ for a state family.
    Sweep(SweepArgs),
    /// Check the identity suite on Haar-random pure states.
    Verify(VerifyArgs),
    /// Validate a sweep CSV and optionally write a gnuplot script for it.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OptArgs {
    /// Optimizer restarts per quantity.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    /// POVM outcomes: default, d, d2, or a fixed count (verify also takes dual).
    #[arg(long = "povm-outcomes", default_value = "default")]
    pub povm_outcomes: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Nelder–Mead iterations per restart.
    #[arg(long, default_value_t = 500)]
    pub max_iterations: usize,
    /// Tolerance for measurement-free quantities.
    #[arg(long = "tol-exact", default_value_t = 1e-9)]
    pub tol_exact: f64,
    /// Tolerance for optimized quantities; also the optimizer's stopping spread is
    /// min(1e-10, tol-opt).
    #[arg(long = "tol-opt", default_value_t = 1e-3)]
    pub tol_opt: f64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

impl OptArgs {
    fn policy(&self) -> Result<PovmPolicy, CliError> {
        self.povm_outcomes.parse().map_err(CliError::Config)
    }

    fn opt_config(&self, policy: PovmPolicy) -> OptConfig {
        let mut cfg = OptConfig {
            restarts: self.restarts,
            seed: self.seed,
            max_iterations: self.max_iterations,
            tolerance: OptConfig::default().tolerance.min(self.tol_opt),
            ..OptConfig::default()
        };
        if let PovmPolicy::Single(p) = policy {
            cfg.outcomes = p;
        }
        cfg
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// ghz3, ghz4, bellmix or custom (defaults to the quantity's family).
    #[arg(long)]
    pub family: Option<String>,
    /// Custom state file (header of party dims, then `re im` per line).
    #[arg(long = "state-file")]
    pub state_file: Option<PathBuf>,
    /// Comma-separated quantity keys, e.g. fig1a or fig1a,ea_minus_ef_ac.
    #[arg(long, value_delimiter = ',', required = true)]
    pub quantity: Vec<String>,
    /// First θ in radians.
    #[arg(long = "theta-start", default_value_t = 0.0)]
    pub theta_start: f64,
    /// Last θ in radians (default π/2).
    #[arg(long = "theta-end", default_value_t = std::f64::consts::FRAC_PI_2)]
    pub theta_end: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Output CSV path (stdout when absent or `-`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub opt: OptArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub states: usize,
    /// Party dimensions, three or four of them.
    #[arg(long, default_value = "2,2,2")]
    pub dims: String,
    /// Report path (stdout when absent or `-`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub opt: OptArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Sweep CSV to read.
    pub input: PathBuf,
    /// Write a gnuplot script next to the CSV (or to --out).
    #[arg(long = "emit-plotscript")]
    pub emit_plotscript: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, text).map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display())))
        }
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    match threads {
        None => f(),
        Some(0) => Err(CliError::Config("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("cannot start thread pool: {e}")))?
            .install(f),
    }
}

pub fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, CliError> {
    let quantities = args
        .quantity
        .iter()
        .map(|q| q.parse::<Quantity>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Config)?;
    let family = match &args.family {
        Some(name) => name.parse::<Family>().map_err(|e| CliError::Config(e.to_string()))?,
        None if args.state_file.is_some() => Family::Custom,
        None => quantities.first().map_or(Family::Ghz3, |q| q.default_family()),
    };
    let custom = match &args.state_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            Some(
                text.parse::<CustomState>()
                    .map_err(|e| CliError::Config(e.to_string()))?,
            )
        }
        None => None,
    };
    let policy = args.opt.policy()?;
    if policy == PovmPolicy::Dual {
        return Err(CliError::Config("the dual POVM policy applies to verify only".into()));
    }
    Ok(SweepConfig {
        family,
        custom,
        quantities,
        theta_start: args.theta_start,
        theta_end: args.theta_end,
        steps: args.steps,
        opt: args.opt.opt_config(policy),
    })
}

pub fn verify_config(args: &VerifyArgs) -> Result<VerifyConfig, CliError> {
    let policy = args.opt.policy()?;
    Ok(VerifyConfig {
        states: args.states,
        dims: parse_dims(&args.dims).map_err(CliError::Config)?,
        seed: args.opt.seed,
        tol_exact: args.opt.tol_exact,
        tol_opt: args.opt.tol_opt,
        policy,
        opt: args.opt.opt_config(policy),
    })
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Report(args) => cmd_report(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("udiscord: {e}");
            e.exit_code()
        }
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, CliError> {
    let cfg = sweep_config(args)?;
    let table = with_threads(args.opt.threads, || run_sweep(&cfg))?;
    write_output(args.out.as_deref(), &table.to_csv())?;
    Ok(0)
}

/// Exit 0 when every residual is within tolerance, 1 otherwise. The report
/// is written either way.
pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let cfg = verify_config(args)?;
    let outcome = with_threads(args.opt.threads, || run_verify(&cfg))?;
    write_output(args.out.as_deref(), &outcome.report)?;
    if outcome.violations > 0 {
        eprintln!("udiscord: {} residuals exceed tolerance", outcome.violations);
        Ok(1)
    } else {
        Ok(0)
    }
}

pub fn cmd_report(args: &ReportArgs) -> Result<i32, CliError> {
    let table = CsvTable::read(&args.input)?;
    if args.emit_plotscript {
        let script_path = args.out.clone().unwrap_or_else(|| args.input.with_extension("gp"));
        let csv_name = args
            .input
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        // the script sits next to the CSV unless --out moves it elsewhere
        let csv_ref = if args.out.is_some() {
            args.input.display().to_string()
        } else {
            csv_name
        };
        write_output(Some(&script_path), &plot_script(&table, &csv_ref))?;
    } else {
        write_output(args.out.as_deref(), &table.summary())?;
    }
    Ok(0)
}
