//! `kkw`: exact verifier for the boundary residue computation.
//!
//! Exit codes: 0 = all hard-pass checks match, 1 = operational error,
//! 2 = a hard cross-check mismatch was found and localized.

use clap::{Args, Parser, Subcommand};
use kkw::jets::JetProfile;
use kkw::verify::{run, write_report, Mode, ReportFormat, RunConfig, VerifyOutcome};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kkw", version, about = "Exact boundary-residue verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign (constants, pipeline, interior, or all).
    Verify(VerifyArgs),
    /// Recompute the named residue constants and check them against the
    /// quadrature oracle.
    Constants(ConstantsArgs),
    /// Evaluate the interior density for user-supplied curvature invariants.
    Interior(InteriorArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// constants | pipeline | interior | all
    #[arg(long, default_value = "all")]
    mode: Mode,
    /// Even dimensions, e.g. `6,8,10` or `6..16`.
    #[arg(long = "n", default_value = "6")]
    n_list: String,
    /// Random jets per dimension.
    #[arg(long, default_value_t = 3)]
    jets: usize,
    /// Seed for deterministic jet generation.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// diagonal | conjugated
    #[arg(long, default_value = "diagonal")]
    profile: JetProfile,
    /// Verify a single jet loaded from a JSON file instead of random jets.
    #[arg(long)]
    jet_file: Option<PathBuf>,
    /// Interior invariants JSON (used by the interior mode).
    #[arg(long)]
    invariants: Option<PathBuf>,
    /// Report output path (written atomically).
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | markdown
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Even dimensions, e.g. `6,8,10` or `6..16`.
    #[arg(long = "n", default_value = "6..16")]
    n_list: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | markdown
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

#[derive(Args)]
struct InteriorArgs {
    /// Interior invariants JSON file.
    #[arg(long)]
    invariants: PathBuf,
    /// Even dimensions, e.g. `6` or `6,8`.
    #[arg(long = "n", default_value = "6")]
    n_list: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | markdown
    #[arg(long, default_value = "json")]
    format: ReportFormat,
}

/// Parse `6,8,10` or the inclusive range `6..16` into even dimensions.
fn parse_n_list(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    let mut out = Vec::new();
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let hi: usize = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        for n in lo..=hi {
            if n % 2 == 0 {
                out.push(n);
            }
        }
    } else {
        for part in s.split(',') {
            let n: usize = part.trim().parse().map_err(|_| format!("bad dimension {part:?}"))?;
            out.push(n);
        }
    }
    if out.is_empty() {
        return Err(format!("no dimensions in {s:?}"));
    }
    Ok(out)
}

fn finish(outcome: VerifyOutcome, config: &RunConfig) -> ExitCode {
    if let Err(e) = write_report(&outcome, config) {
        eprintln!("kkw: failed to write report: {e}");
        return ExitCode::from(1);
    }
    if config.out.is_none() || config.format == ReportFormat::Json {
        eprint!("{}", outcome.markdown);
    }
    match outcome.exit_code {
        0 => ExitCode::SUCCESS,
        c => ExitCode::from(c as u8),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match &cli.command {
        Command::Verify(a) => parse_n_list(&a.n_list).map(|n_list| RunConfig {
            n_list,
            jets_per_n: a.jets,
            seed: a.seed,
            profile: a.profile,
            mode: a.mode,
            jet_file: a.jet_file.clone(),
            invariants_file: a.invariants.clone(),
            out: a.out.clone(),
            format: a.format,
        }),
        Command::Constants(a) => parse_n_list(&a.n_list).map(|n_list| RunConfig {
            n_list,
            jets_per_n: 1,
            seed: 0,
            profile: JetProfile::Diagonal,
            mode: Mode::Constants,
            jet_file: None,
            invariants_file: None,
            out: a.out.clone(),
            format: a.format,
        }),
        Command::Interior(a) => parse_n_list(&a.n_list).map(|n_list| RunConfig {
            n_list,
            jets_per_n: 1,
            seed: 0,
            profile: JetProfile::Diagonal,
            mode: Mode::Interior,
            jet_file: None,
            invariants_file: Some(a.invariants.clone()),
            out: a.out.clone(),
            format: a.format,
        }),
    };
    let config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("kkw: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&config) {
        Ok(outcome) => finish(outcome, &config),
        Err(e) => {
            eprintln!("kkw: {e}");
            ExitCode::from(1)
        }
    }
}
