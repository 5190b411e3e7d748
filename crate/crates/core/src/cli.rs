// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 when the question asked is answered positively
//! (feasible, controllable, all residuals pass), 1 when it is answered
//! negatively, 2 for invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::closure::{controllability_verdict, ClosureOptions, Verdict};
use crate::config::ModelConfig;
use crate::decoupling::run_decoupling;
use crate::error::{Error, Result};
use crate::model::{check_size_condition, coupling_rank_check, RankReport, SizeCondition};
use crate::oracle::agreement_check;
use crate::random::{random_config, DECIMAL_GRID};
use crate::report::{canonical_json, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "accessor-control", version, about = "Controllability of a quantum system driven through an accessor qubit chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Model configuration (JSON).
    config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size condition and coupling-rank check.
    Conditions {
        #[command(flatten)]
        common: Common,
    },
    /// Dynamical Lie algebra dimension and controllability verdict.
    Closure {
        #[command(flatten)]
        common: Common,
        /// Stop once the basis reaches this size.
        #[arg(long)]
        cap: Option<usize>,
        /// Relative independence threshold for new basis elements.
        #[arg(long)]
        tol: Option<f64>,
        /// Also compute the dimension in exact rational arithmetic.
        #[arg(long)]
        oracle: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Decoupling certificates, derived operator families and the audit.
    Decouple {
        #[command(flatten)]
        common: Common,
        /// Residual threshold for every verification step.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write a seeded random model configuration.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Outcome {
    code: i32,
    text: String,
    out: Option<PathBuf>,
}

fn load(path: &Path) -> Result<(ModelConfig, crate::model::ControlModel, crate::linalg::ToleranceConfig)> {
    let cfg = ModelConfig::from_path(path)?.resolved()?;
    let (model, tol) = cfg.build()?;
    Ok((cfg, model, tol))
}

#[derive(Serialize)]
struct ConditionsResult {
    feasible: bool,
    reason: String,
    size: SizeCondition,
    rank: RankReport,
    warnings: Vec<String>,
}

fn conditions(common: Common) -> Result<Outcome> {
    let start = Instant::now();
    let (cfg, model, _) = load(&common.config)?;
    let size = check_size_condition(model.n(), model.m());
    let rank = coupling_rank_check(model.coupling());
    let feasible = size.holds && rank.feasible;
    let reason = if size.holds && !rank.feasible {
        format!("coupling rank {} < {}", rank.rank, rank.required)
    } else {
        size.reason()
    };
    let result = ConditionsResult {
        feasible,
        reason,
        size,
        rank,
        warnings: model.warnings().to_vec(),
    };
    let report = RunReport::new("conditions", &cfg, &result, start.elapsed().as_secs_f64());
    Ok(Outcome {
        code: if feasible { EXIT_OK } else { EXIT_NEGATIVE },
        text: report.render(),
        out: common.out,
    })
}

fn closure(common: Common, cap: Option<usize>, tol: Option<f64>, oracle: bool, workers: Option<usize>) -> Result<Outcome> {
    let start = Instant::now();
    let (cfg, model, mut tolerances) = load(&common.config)?;
    if let Some(t) = tol {
        tolerances.independence = t;
        tolerances.validate()?;
    }
    let options = ClosureOptions { cap, workers };
    let (_, report) = controllability_verdict(&model, &tolerances, &options)?;
    let mut result = serde_json::to_value(&report).expect("closure report serializes");
    let mut code = match report.verdict {
        Verdict::Controllable => EXIT_OK,
        Verdict::NotControllable => EXIT_NEGATIVE,
    };
    if oracle {
        let agreement = agreement_check(&cfg, &tolerances, &options)?;
        if !agreement.agree {
            code = EXIT_NEGATIVE;
        }
        result["oracle"] = serde_json::to_value(agreement).expect("agreement serializes");
    }
    let flags = json!({ "cap": cap, "tol": tol, "oracle": oracle, "workers": workers });
    let echo = json!({ "model": cfg, "flags": flags });
    let run = RunReport::new("closure", echo, result, start.elapsed().as_secs_f64());
    Ok(Outcome {
        code,
        text: run.render(),
        out: common.out,
    })
}

fn decouple(common: Common, tol: Option<f64>, workers: Option<usize>) -> Result<Outcome> {
    let start = Instant::now();
    let (cfg, model, mut tolerances) = load(&common.config)?;
    if let Some(t) = tol {
        tolerances.verify = t;
        tolerances.validate()?;
    }
    let (basis, closure) = controllability_verdict(&model, &tolerances, &ClosureOptions { cap: None, workers })?;
    let run = run_decoupling(&model, &tolerances, Some(&basis), workers)?;
    let result = json!({
        "closure_dimension": closure.dimension,
        "decoupling": run.report,
    });
    let flags = json!({ "tol": tol, "workers": workers });
    let echo = json!({ "model": cfg, "flags": flags });
    let report = RunReport::new("decouple", echo, result, start.elapsed().as_secs_f64());
    Ok(Outcome {
        code: if run.report.passed { EXIT_OK } else { EXIT_NEGATIVE },
        text: report.render(),
        out: common.out,
    })
}

fn random(n: usize, m: usize, seed: u64, out: Option<PathBuf>) -> Result<Outcome> {
    if n < 2 {
        return Err(Error::SystemTooSmall(n));
    }
    if m == 0 {
        return Err(Error::EmptyAccessor);
    }
    let cfg = random_config(n, m, seed, DECIMAL_GRID);
    cfg.build()?;
    Ok(Outcome {
        code: EXIT_OK,
        text: canonical_json(&cfg),
        out,
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Conditions { common } => conditions(common),
        Command::Closure {
            common,
            cap,
            tol,
            oracle,
            workers,
        } => closure(common, cap, tol, oracle, workers),
        Command::Decouple { common, tol, workers } => decouple(common, tol, workers),
        Command::Random { n, m, seed, out } => random(n, m, seed, out),
    };
    match outcome {
        Ok(o) => {
            let written = match &o.out {
                Some(path) => std::fs::write(path, &o.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(o.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => o.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}
