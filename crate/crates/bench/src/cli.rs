//! Command-line interface.
//!
//! Exit codes: 0 on success, 2 for usage and configuration errors, 3 for
//! numerical failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sscosamp::analysis::theorem1_constants;

use crate::config::{KeyValues, SweepConfig};
use crate::error::{BenchError, BenchResult, EXIT_CONFIG, EXIT_OK};
use crate::format::{csv, fmt_f64, json_f64};
use crate::recover::{run_recover, RecoverConfig};
use crate::study::{drip_csv, drip_json, run_drip, run_projection_study, DripConfig, ProjectionStudyConfig};
use crate::sweep::{run_sweep, SweepOptions};

#[derive(Debug, Parser)]
#[command(name = "sscosamp-bench", version, about = "Benchmarks for Signal Space CoSaMP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Key-value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Master seed; overrides `master_seed` from the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo sweep over the number of measurements.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Record wall-clock times (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Measure (eps1, eps2) of projection backends against the exhaustive optimum.
    ProjectEval {
        #[command(flatten)]
        common: Common,
    },
    /// Sampled lower bound on the D-RIP constant of Gaussian matrices.
    Drip {
        #[command(flatten)]
        common: Common,
    },
    /// Recover one instance and print the iteration trace.
    Recover {
        #[command(flatten)]
        common: Common,
    },
    /// Error-bound constants C1 and C2.
    Constants {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps1: f64,
        #[arg(long)]
        eps2: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Option<PathBuf>) -> BenchResult<KeyValues> {
    Ok(match path {
        Some(p) => KeyValues::load(p)?,
        None => KeyValues::default(),
    })
}

/// `dir/name.ext` becomes `dir/name.summary.ext`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.summary.{}", ext.to_string_lossy()),
        None => format!("{stem}.summary"),
    };
    out.with_file_name(name)
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> BenchResult<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Writes the main table, plus the summary next to `--out` for CSV.
fn emit_tables(
    common: &Common,
    main_csv: String,
    summary_csv: String,
    json: Value,
    stdout: &mut dyn Write,
) -> BenchResult<()> {
    match common.format {
        Format::Json => emit(&common.out, &pretty(&json), stdout),
        Format::Csv => {
            emit(&common.out, &main_csv, stdout)?;
            if let Some(p) = &common.out {
                std::fs::write(summary_path(p), summary_csv)?;
            }
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn execute(command: Command, stdout: &mut dyn Write) -> BenchResult<()> {
    match command {
        Command::Sweep { common, timing } => {
            let path = common
                .config
                .as_ref()
                .ok_or_else(|| crate::ConfigError("sweep requires --config".into()))?;
            let mut cfg = SweepConfig::load(path)?;
            if let Some(s) = common.seed {
                cfg.master_seed = s;
            }
            let res = run_sweep(&cfg, SweepOptions { timing })?;
            emit_tables(&common, res.trials_csv(), res.summary_csv(), res.to_json(), stdout)
        }
        Command::ProjectEval { common } => {
            let mut cfg = ProjectionStudyConfig::from_key_values(&load(&common.config)?)?;
            if let Some(s) = common.seed {
                cfg.master_seed = s;
            }
            let study = run_projection_study(&cfg)?;
            emit_tables(&common, study.csv(), study.summary_csv(), study.to_json(), stdout)
        }
        Command::Drip { common } => {
            let mut cfg = DripConfig::from_key_values(&load(&common.config)?)?;
            if let Some(s) = common.seed {
                cfg.master_seed = s;
            }
            let rows = run_drip(&cfg)?;
            let text = match common.format {
                Format::Csv => drip_csv(&rows),
                Format::Json => pretty(&drip_json(&rows)),
            };
            emit(&common.out, &text, stdout)
        }
        Command::Recover { common } => {
            let mut cfg = RecoverConfig::from_key_values(&load(&common.config)?)?;
            if let Some(s) = common.seed {
                cfg.master_seed = s;
            }
            let outcome = run_recover(&cfg)?;
            let text = match common.format {
                Format::Csv => outcome.csv(),
                Format::Json => pretty(&outcome.to_json()),
            };
            emit(&common.out, &text, stdout)?;
            if common.out.is_some() {
                writeln!(stdout, "{}", outcome.summary_line())?;
            }
            Ok(())
        }
        Command::Constants {
            delta,
            eps1,
            eps2,
            out,
            format,
        } => {
            let c = theorem1_constants(delta, eps1, eps2).map_err(|e| match e {
                sscosamp::Error::InvalidInput(msg) => BenchError::Config(crate::ConfigError(msg)),
                other => other.into(),
            })?;
            let text = match format {
                Format::Csv => csv(
                    &["delta4k", "eps1", "eps2", "c1", "c2", "contracts"],
                    [vec![
                        fmt_f64(c.delta4k),
                        fmt_f64(c.eps1),
                        fmt_f64(c.eps2),
                        fmt_f64(c.c1),
                        fmt_f64(c.c2),
                        c.contracts().to_string(),
                    ]],
                ),
                Format::Json => pretty(&json!({
                    "delta4k": json_f64(c.delta4k),
                    "eps1": json_f64(c.eps1),
                    "eps2": json_f64(c.eps2),
                    "c1": json_f64(c.c1),
                    "c2": json_f64(c.c2),
                    "contracts": c.contracts(),
                })),
            };
            emit(&out, &text, stdout)
        }
    }
}
