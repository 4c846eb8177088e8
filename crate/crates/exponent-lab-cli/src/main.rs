//! `exponent-lab`: command-line front end for the exponent workbench.
//!
//! Exit codes: 0 success, 1 usage error, 2 golden/check mismatch,
//! 3 precision failure.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use exponent_lab_cli::commands;
use exponent_lab_cli::emit::Format;
use exponent_lab::{Error, PrecisionLimits};

#[derive(Parser)]
#[command(
    name = "exponent-lab",
    version,
    about = "Continued fractions, irrationality exponents, and harmonic kernels at certified precision"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the per-convergent exponent table for a constant
    MuTable(MuTableArgs),
    /// Run the lemma suite: parity, sine bounds, reciprocal-sine profile, kernels
    Verify(VerifyArgs),
    /// Evaluate a summation kernel against its closed form
    Kernel(KernelArgs),
    /// Expand a constant into certified partial quotients and convergents
    Expand(ExpandArgs),
}

#[derive(Args)]
struct CommonOut {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the table to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MuTableArgs {
    /// Constant: pi, pi^K, zeta3, champernowne[:B], liouville[:B], or p/q
    #[arg(long)]
    constant: String,
    /// Number of table rows (1-based, as printed in the source tables)
    #[arg(long)]
    n: usize,
    /// Working precision floor in decimal digits (>= 20)
    #[arg(long)]
    digits: Option<u64>,
    /// Diff the computed table against the embedded golden rows
    #[arg(long)]
    check_golden: bool,
    #[command(flatten)]
    common: CommonOut,
}

#[derive(Args)]
struct VerifyArgs {
    /// Power k of pi under test
    #[arg(long)]
    k: u32,
    /// Verify table rows 1..=n
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    common: CommonOut,
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel family: dirichlet or fejer
    #[arg(long = "type")]
    kernel_type: String,
    /// Kernel order x (integers get the summation oracle; reals the closed form)
    #[arg(long, default_value_t = 1.0)]
    x: f64,
    /// Single evaluation point z
    #[arg(long)]
    z: Option<f64>,
    /// Evaluate over an n-point grid in (0.1, 3.0)
    #[arg(long)]
    grid: Option<usize>,
    /// Also emit the half-scaled closed form (documented discrepancy)
    #[arg(long)]
    paper_half: bool,
    #[command(flatten)]
    common: CommonOut,
}

#[derive(Args)]
struct ExpandArgs {
    /// Constant to expand
    #[arg(long)]
    constant: String,
    /// Number of partial quotients requested
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    common: CommonOut,
}

fn limits_from_env() -> Result<PrecisionLimits, String> {
    match std::env::var("EXPONENT_LAB_MAX_DIGITS") {
        Ok(v) => {
            let max_digits: u64 = v
                .parse()
                .map_err(|_| format!("EXPONENT_LAB_MAX_DIGITS={v:?} is not a positive integer"))?;
            if max_digits == 0 {
                return Err("EXPONENT_LAB_MAX_DIGITS must be positive".into());
            }
            Ok(PrecisionLimits { max_digits })
        }
        Err(_) => Ok(PrecisionLimits::default()),
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let limits = limits_from_env().map_err(|m| (1, m))?;
    let usage = |m: String| (1u8, m);
    let outcome = match cli.command {
        Command::MuTable(a) => {
            if a.n == 0 {
                return Err(usage("--n must be at least 1".into()));
            }
            if let Some(d) = a.digits {
                if d < 20 {
                    return Err(usage("--digits must be at least 20".into()));
                }
            }
            let common = a.common;
            commands::cmd_mu_table(&a.constant, a.n, a.digits, common.format, a.check_golden, &limits)
                .map(|o| (o, common.out))
        }
        Command::Verify(a) => {
            if a.n == 0 {
                return Err(usage("--n must be at least 1".into()));
            }
            let common = a.common;
            commands::cmd_verify(a.k, a.n, common.format, &limits).map(|o| (o, common.out))
        }
        Command::Kernel(a) => {
            let common = a.common;
            commands::cmd_kernel(
                &a.kernel_type,
                a.x,
                a.z,
                a.grid,
                a.paper_half,
                common.format,
                &limits,
            )
            .map(|o| (o, common.out))
        }
        Command::Expand(a) => {
            if a.n == 0 {
                return Err(usage("--n must be at least 1".into()));
            }
            let common = a.common;
            commands::cmd_expand(&a.constant, a.n, common.format, &limits)
                .map(|o| (o, common.out))
        }
    }
    .map_err(|e| (exit_code_for(&e), e.to_string()))?;

    let (outcome, out_path) = outcome;
    if let Some(path) = out_path {
        std::fs::write(&path, &outcome.document)
            .map_err(|e| (1u8, format!("cannot write {}: {e}", path.display())))?;
    } else {
        print!("{}", outcome.document);
    }
    eprint!("{}", outcome.diagnostics);
    if outcome.golden_mismatch || outcome.check_failed {
        Ok(2)
    } else {
        Ok(0)
    }
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_precision_failure() {
        3
    } else {
        1
    }
}

fn main() -> ExitCode {
    // clap's default usage-error exit code is 2, which this tool reserves
    // for golden mismatches; remap to 1
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
