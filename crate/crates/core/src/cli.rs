//! Command-line front end: figure data (CSV), identity verification and
//! single-configuration swap reports (JSON).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::experiment::{self, RunConfig};
use crate::measures::{self, MeasureReport};
use crate::states::{self, schmidt_pair, SchmidtParam};
use crate::swap::{self, BbmOutcome};
use crate::sweep::{self, Figure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Residual bound for `verify`.
pub const VERIFY_THRESHOLD: f64 = 1e-9;

pub const DEFAULT_SEED: u64 = 20_200_901;

#[derive(Debug, Parser)]
#[command(
    name = "entswap",
    version,
    about = "Entanglement swapping from partially entangled pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the sweep behind one figure as CSV.
    Figures(FiguresArgs),
    /// Check both complementarity identities on random pure states.
    Verify(VerifyArgs),
    /// Outcome table of the Bell-basis measurement for one (p, q).
    Swap(SwapArgs),
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// 1a, 1b, 2a or 2b
    #[arg(long, value_parser = parse_figure)]
    pub which: Figure,
    /// Number of grid points on [0, 1].
    #[arg(long, default_value_t = sweep::DEFAULT_GRID)]
    pub grid: usize,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random states
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Bipartite dimensions as DA,DB.
    #[arg(long, value_parser = parse_dims, default_value = "2,2")]
    pub dims: (usize, usize),
    /// Generator seed
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    /// Schmidt weight of the (A, C) pair, in [0, 1]
    #[arg(long, value_parser = parse_weight)]
    pub p: SchmidtParam,
    /// Schmidt weight of the (C', B) pair, in [0, 1]
    #[arg(long, value_parser = parse_weight)]
    pub q: SchmidtParam,
    /// Also simulate this many protocol runs.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Generator seed
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_weight(s: &str) -> Result<SchmidtParam, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    SchmidtParam::new(x).map_err(|e| e.to_string())
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected DA,DB, got {s:?}"))?;
    let parse = |t: &str| -> Result<usize, String> {
        match t.trim().parse::<usize>() {
            Ok(d) if d >= 1 => Ok(d),
            _ => Err(format!("{t:?} is not a positive dimension")),
        }
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Io { .. } => EXIT_IO,
        }
    }
}

/// Runs a parsed command, writing to `--out` or to `stdout`. Returns the exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Figures(args) => {
            if args.grid < 2 {
                return Err(CliError::Usage(format!(
                    "--grid must be at least 2, got {}",
                    args.grid
                )));
            }
            let rows = sweep::figure_rows(args.which, args.grid)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&sweep::to_csv(&rows), args.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            if args.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let report = verify_report(args.trials, args.dims, args.seed);
            let pass = report["pass"].as_bool().unwrap_or(false);
            emit(&pretty(&report), args.out.as_deref(), stdout)?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAIL })
        }
        Command::Swap(args) => {
            if args.shots == Some(0) {
                return Err(CliError::Usage("--shots must be at least 1".into()));
            }
            let report = swap_report(args.p, args.q, args.shots, args.seed);
            emit(&pretty(&report), args.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` and runs, mapping every failure onto an exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Writes to a sibling temporary file, then renames it over `path`.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let file_name = path.file_name().ok_or_else(|| {
        io_err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "not a file path",
        ))
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// Largest CCR residuals over `trials` Haar-random states of dimensions `(da, db)`.
pub fn verify_report(trials: u64, (da, db): (usize, usize), seed: u64) -> Value {
    let mut rng = experiment::rng_from_seed(seed);
    let mut max_vn: f64 = 0.0;
    let mut max_lin: f64 = 0.0;
    for _ in 0..trials {
        let psi = states::random_pure_state(&[da, db], &mut rng);
        let rho_a = psi.reduced(&[0]).expect("bipartite state");
        let r = measures::report(&rho_a);
        max_vn = max_vn.max(r.vn_residual());
        max_lin = max_lin.max(r.linear_residual());
    }
    let d = da as f64;
    json!({
        "trials": trials,
        "dims": [da, db],
        "seed": seed,
        "vn_target": d.log2(),
        "linear_target": (d - 1.0) / d,
        "max_vn_residual": max_vn,
        "max_linear_residual": max_lin,
        "threshold": VERIFY_THRESHOLD,
        "pass": max_vn < VERIFY_THRESHOLD && max_lin < VERIFY_THRESHOLD,
    })
}

fn report_json(r: &MeasureReport) -> Value {
    json!({
        "full": r,
        "display": {
            "c_re": round4(r.c_re),
            "p_vn": round4(r.p_vn),
            "s_vn": round4(r.s_vn),
            "c_hs": round4(r.c_hs),
            "p_l": round4(r.p_l),
            "s_l": round4(r.s_l),
        }
    })
}

fn outcome_json(o: &BbmOutcome) -> Value {
    let amplitudes = o.post_state.state().map(|s| {
        s.amplitudes()
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect::<Vec<_>>()
    });
    json!({
        "label": o.label,
        "probability": o.probability,
        "probability_display": round4(o.probability),
        "defined": o.post_state.is_defined(),
        "amplitudes": amplitudes,
        "reduced_a": o.report_a().as_ref().map(report_json),
    })
}

/// Analytic outcome table for `(p, q)`, plus a seeded ensemble when `shots` is given.
pub fn swap_report(p: SchmidtParam, q: SchmidtParam, shots: Option<u64>, seed: u64) -> Value {
    let outcomes = swap::bbm_outcomes(p, q);
    let total: f64 = outcomes.iter().map(|o| o.probability).sum();
    let xi_a = measures::report(&schmidt_pair(p).reduced(&[0]).expect("pair"));
    let eta_b = measures::report(&schmidt_pair(q).reduced(&[1]).expect("pair"));
    let mut v = json!({
        "p": p,
        "q": q,
        "initial": { "xi_a": report_json(&xi_a), "eta_b": report_json(&eta_b) },
        "outcomes": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
        "probability_total": total,
    });
    if let Some(shots) = shots {
        let cfg = RunConfig::new(p, q, shots, seed).expect("shots checked by caller");
        let ens = experiment::run_ensemble(&cfg);
        v["empirical"] = json!({
            "shots": shots,
            "seed": seed,
            "counts": ens.counts,
            "frequency": ens.empirical_freq,
            "discrepancy": ens.discrepancy,
            "sigma": ens.sigma,
            "within_3_sigma": ens.within_sigma(3.0),
            "mean_post_svn": ens.mean_post_svn,
        });
    }
    v
}
