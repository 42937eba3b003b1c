//! `qfog` — sweep, optimize and validate the gyroscope sensitivity engine.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qfog_cli::config::{validate_config, RawOptions};
use qfog_cli::optimize::find_best_phase;
use qfog_cli::sweep::{format_f64, run_sweep};
use qfog_cli::validate::run_validation;

#[derive(Parser)]
#[command(
    name = "qfog",
    about = "Rotation-sensitivity tables and probe comparisons for a lossy \
             Sagnac interferometer with quadrature readout",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one mode over a parameter grid and emit a CSV/JSON table.
    Sweep(SweepArgs),
    /// Locate the phase minimizing a probe-comparison ratio.
    Optimize(OptimizeArgs),
    /// Cross-check analytic moments and sensitivities against the
    /// truncated-basis route.
    Validate(ValidateArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// pacs-sensitivity | cs-sensitivity | ss-sensitivity | ratio-cs | ratio-ss
    #[arg(long)]
    mode: Option<String>,
    /// Range start (sweep grid or optimizer bracket).
    #[arg(long)]
    from: Option<f64>,
    /// Range end.
    #[arg(long)]
    to: Option<f64>,
    /// Photon-addition count of the non-Gaussian probe.
    #[arg(long)]
    m: Option<u32>,
    /// Probe amplitude (PACS alpha, or the coherent amplitude in the
    /// Gaussian-only modes).
    #[arg(long)]
    alpha: Option<f64>,
    /// Imaginary-axis displacement of the second input mode.
    #[arg(long)]
    y: Option<f64>,
    /// Transmissivity in (0, 1].
    #[arg(long)]
    gamma: Option<f64>,
    /// Fixed Sagnac phase (radians) when sweeping another variable.
    #[arg(long)]
    phi: Option<f64>,
    /// key=value file supplying any unset parameter; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Swept variable: phi | gamma | m | alpha | y.
    #[arg(long)]
    var: Option<String>,
    /// Number of grid points (>= 2).
    #[arg(long)]
    steps: Option<usize>,
    /// Output format: csv | json.
    #[arg(long)]
    format: Option<String>,
    /// Worker threads for grid evaluation (0 = library default); the output
    /// is identical for every setting.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Largest photon-addition count to cross-check.
    #[arg(long = "max-m", default_value_t = 12)]
    max_m: u32,
    /// Probe amplitudes, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 2.0])]
    alphas: Vec<f64>,
    /// Truncation dimension of the number basis.
    #[arg(long, default_value_t = qfog::DEFAULT_DIM)]
    dim: usize,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Sweep(args) => run_sweep_command(args),
        Command::Optimize(args) => run_optimize_command(args),
        Command::Validate(args) => run_validate_command(args),
    }
}

fn gather(
    common: &CommonArgs,
    var: Option<String>,
    steps: Option<usize>,
    format: Option<String>,
    threads: Option<usize>,
) -> Result<RawOptions, ExitCode> {
    let mut raw = RawOptions {
        mode: common.mode.clone(),
        var,
        from: common.from,
        to: common.to,
        steps,
        m: common.m,
        alpha: common.alpha,
        y: common.y,
        gamma: common.gamma,
        phi: common.phi,
        format,
        threads,
    };
    if let Some(path) = &common.config {
        if let Err(e) = raw.apply_file(path) {
            eprintln!("error: {e}");
            return Err(ExitCode::from(EXIT_CONFIG));
        }
    }
    Ok(raw)
}

fn run_sweep_command(args: SweepArgs) -> ExitCode {
    let raw = match gather(
        &args.common,
        args.var,
        args.steps,
        args.format,
        args.threads,
    ) {
        Ok(raw) => raw,
        Err(code) => return code,
    };
    let config = match raw.into_sweep() {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let rendered = run_sweep(&config).render();
    emit(&rendered, args.common.out.as_deref())
}

fn run_optimize_command(args: OptimizeArgs) -> ExitCode {
    let raw = match gather(&args.common, None, None, None, None) {
        Ok(raw) => raw,
        Err(code) => return code,
    };
    let config = match raw.into_optimize() {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match find_best_phase(&config) {
        Ok(result) => {
            let text = format!(
                "argmin_phi {}\nmin_value {}\nbracket_lo {}\nbracket_hi {}\n\
                 iterations {}\nevaluations {}\n",
                format_f64(result.argmin_phi),
                format_f64(result.min_value),
                format_f64(result.bracket.0),
                format_f64(result.bracket.1),
                result.iterations,
                result.evaluations,
            );
            emit(&text, args.common.out.as_deref())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn run_validate_command(args: ValidateArgs) -> ExitCode {
    let config = match validate_config(args.max_m, args.alphas, args.dim) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run_validation(&config) {
        Ok(report) => {
            let text = format!("{report}\n");
            let code = if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VALIDATION)
            };
            match emit(&text, args.out.as_deref()) {
                ExitCode::SUCCESS => code,
                other => other,
            }
        }
        Err(e) => {
            // the requested truncation cannot represent the requested states
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}
