//! Argument handling and subcommand dispatch.
//!
//! Exit codes: 0 success or property holds, 1 property violated, 2 usage or
//! input-format error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use skewbisub::rational;
use skewbisub::{
    check_alpha_bisubmodular, decompose, extension_value, generate_instance, minimize, Alpha,
    MinimizeConfig, StartPoint, StepRule,
};

use crate::format::{
    decomposition_to_json, instance_to_json, parse_instance, parse_point, report_to_json,
    witness_to_json, FormatError, Instance,
};
use crate::verify::{verify_all, verify_closure};

#[derive(Debug, Parser)]
#[command(name = "skewbisub", version, about = "Lovász extension and minimization of skew bisubmodular functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the alpha-bisubmodular inequality on every pair of labelings.
    Check { file: PathBuf },
    /// Print the chain decomposition of a point.
    Decompose {
        file: PathBuf,
        /// Comma-separated rationals, e.g. "3/5,-1/5".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Evaluate the Lovász extension at a point.
    Eval {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Minimize by projected subgradient descent on the extension.
    Minimize {
        file: PathBuf,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "fixed:GAMMA" or "diminishing:GAMMA0".
        #[arg(long)]
        step: Option<String>,
        /// Stop once the best value is within this rational of the lower bound.
        #[arg(long)]
        tolerance: Option<String>,
        /// "origin", "random", or a comma-separated rational point.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// Compare the extension with the LP convex closure at random points.
    VerifyClosure {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every verification that fits the instance size.
    VerifyAll {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a random alpha-bisubmodular sum-form instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_scope: usize,
    },
}

/// Result of one invocation: exit code, standard output, standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] skewbisub::Error),
}

fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn parse_step(text: &str) -> Result<StepRule, Failure> {
    let bad = || Failure::Usage(format!("--step: expected fixed:GAMMA or diminishing:GAMMA0, got {text:?}"));
    let (kind, value) = text.split_once(':').ok_or_else(bad)?;
    let gamma: f64 = value.parse().map_err(|_| bad())?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(bad());
    }
    match kind {
        "fixed" => Ok(StepRule::Fixed(gamma)),
        "diminishing" => Ok(StepRule::Diminishing(gamma)),
        _ => Err(bad()),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure::Core(e)) => Outcome::usage(e),
        Err(e) => Outcome::usage(e),
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { file } => {
            let inst = load(&file)?;
            Ok(match check_alpha_bisubmodular(inst.oracle())? {
                None => Outcome::ok("alpha-bisubmodular\n".into()),
                Some(w) => Outcome::with_code(1, emit(&witness_to_json(&w))),
            })
        }
        Command::Decompose { file, point } => {
            let inst = load(&file)?;
            let x = parse_point(&point, inst.alpha(), inst.arity())?;
            Ok(Outcome::ok(emit(&decomposition_to_json(&decompose(&x)))))
        }
        Command::Eval { file, point } => {
            let inst = load(&file)?;
            let x = parse_point(&point, inst.alpha(), inst.arity())?;
            let value = extension_value(inst.oracle(), &x)?;
            Ok(Outcome::ok(emit(&json!({ "f_L": rational::format(&value) }))))
        }
        Command::Minimize { file, iters, seed, step, tolerance, start } => {
            let inst = load(&file)?;
            let step_rule = step.as_deref().map(parse_step).transpose()?;
            let tolerance = tolerance
                .as_deref()
                .map(|t| rational::parse(t).map_err(|e| Failure::Usage(format!("--tolerance: {e}"))))
                .transpose()?;
            let start = match start.as_deref() {
                None | Some("origin") => StartPoint::Origin,
                Some("random") => StartPoint::Random,
                Some(p) => StartPoint::Point(parse_point(p, inst.alpha(), inst.arity())?),
            };
            if iters == Some(0) {
                return Err(Failure::Usage("--iters must be at least 1".into()));
            }
            let cfg = MinimizeConfig { max_iters: iters, step_rule, tolerance, seed, start, ..Default::default() };
            let report = minimize(inst.oracle(), &cfg)?;
            Ok(Outcome::ok(emit(&report_to_json(&report))))
        }
        Command::VerifyClosure { file, trials, seed } => {
            let inst = load(&file)?;
            let summary = verify_closure(inst.oracle(), trials, seed)?;
            let code = if summary.passed() { 0 } else { 1 };
            Ok(Outcome::with_code(code, emit(&summary.to_json())))
        }
        Command::VerifyAll { file, seed } => {
            let inst = load(&file)?;
            let summary = verify_all(inst.oracle(), seed)?;
            let code = if summary.passed() { 0 } else { 1 };
            Ok(Outcome::with_code(code, emit(&summary.to_json())))
        }
        Command::Generate { n, alpha, terms, seed, max_scope } => {
            let alpha: Alpha = alpha.parse().map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
            let f = generate_instance(n, &alpha, terms, max_scope, seed)?;
            Ok(Outcome::ok(emit(&instance_to_json(&Instance::Sum(f)))))
        }
    }
}
