//! Command-line front end: presets and algebra files in, deterministic
//! reports out. Exit codes: 0 success, 1 verification failure, 2 input error.

mod commands;
pub mod file;
mod reproduce;

pub use file::AlgebraFile;
pub use reproduce::{reproduce_paper_example, PaperCheck, PaperExample};

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::construct::ConstructError;
use crate::field::ParseError;
use crate::invariants::{Sampling, DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::liealg::LieError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid algebra file: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("cannot parse expression: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Construct(ConstructError::Input(_)) => 2,
            CliError::Construct(_) => 1,
            CliError::Lie(LieError::Verification(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lieshift", version, about = "Commutative subalgebras of maximal transcendence degree in U(q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Built-in algebra, e.g. sl2, gl4, heisenberg(2).
    #[arg(long, global = true, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Algebra file in the lieshift/1 JSON format.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Sample coordinates are drawn from [-bound, bound].
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
    /// Highest degree searched for invariants.
    #[arg(long = "max-deg", global = true, default_value_t = 4)]
    pub max_deg: u32,
    /// Maximal fraction-field tower depth.
    #[arg(long, global = true, default_value_t = crate::field::MAX_TOWER_DEPTH)]
    pub depth: u8,
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalOpts {
    pub fn sampling(&self) -> Sampling {
        Sampling {
            seed: self.seed,
            samples: self.samples,
            bound: self.bound,
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check antisymmetry, Jacobi and annotations.
    Validate,
    /// Structure summary: center, radicals, case classification.
    Info,
    /// Index of the algebra.
    Index,
    /// b(q) = (dim q + ind q)/2.
    B,
    /// b(q) − b(l) + ind l for a subalgebra l given by basis labels.
    BRel {
        #[arg(long)]
        sub: String,
    },
    /// Symmetric invariants up to --max-deg.
    Invariants,
    /// Mishchenko–Fomenko generators of a reductive algebra.
    Mf {
        /// Form as `label=value,...`; sampled when omitted.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Symmetrised MF generators and their commutators.
    QuantumMf {
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Verify the hat-map lemmas on the Heisenberg split.
    HatCheck,
    /// Reduced algebra over the fraction field of an abelian ideal.
    ReduceAbelian {
        /// Ideal as comma-separated basis labels; found automatically if omitted.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Full recursive construction with certificate.
    Construct {
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Transcendence degree of given elements (separated by `;`).
    Trdeg {
        #[arg(long)]
        gens: String,
        /// Read the elements in S(q) instead of U(q).
        #[arg(long)]
        symmetric: bool,
    },
    /// Degree-bounded maximality probe for commuting elements.
    Maximality {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Run the sl2 ⋉ h3 worked example and compare with the expected generators.
    ReproducePaperExample,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Info => "info",
            Command::Index => "index",
            Command::B => "b",
            Command::BRel { .. } => "b-rel",
            Command::Invariants => "invariants",
            Command::Mf { .. } => "mf",
            Command::QuantumMf { .. } => "quantum-mf",
            Command::HatCheck => "hat-check",
            Command::ReduceAbelian { .. } => "reduce-abelian",
            Command::Construct { .. } => "construct",
            Command::Trdeg { .. } => "trdeg",
            Command::Maximality { .. } => "maximality",
            Command::ReproducePaperExample => "reproduce-paper-example",
        }
    }
}

/// Machine-readable report; identical for identical inputs unless
/// `--timing` is given.
#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub status: String,
    pub results: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// What a command produced, before formatting.
pub(crate) struct CommandResult {
    pub algebra_json: String,
    pub results: serde_json::Value,
    pub text: Vec<String>,
    pub ok: bool,
}

/// Text written by a run and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn digest(command: &Command, algebra_json: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("{command:?}").as_bytes());
    h.update([0u8]);
    h.update(algebra_json.as_bytes());
    hex::encode(h.finalize())
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    match commands::dispatch(&cli.command, &cli.opts) {
        Ok(r) => {
            let elapsed = start.elapsed().as_millis() as u64;
            let status = if r.ok { "ok" } else { "verification-failed" };
            let code = if r.ok { 0 } else { 1 };
            let stdout = if cli.opts.json {
                let report = Report {
                    command: cli.command.name().to_string(),
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    inputs_digest: digest(&cli.command, &r.algebra_json),
                    seed: cli.opts.seed,
                    samples: cli.opts.samples,
                    bound: cli.opts.bound,
                    status: status.to_string(),
                    results: r.results,
                    timing_ms: cli.opts.timing.then_some(elapsed),
                };
                serde_json::to_string_pretty(&report).expect("serialisable") + "\n"
            } else {
                let mut lines = r.text;
                lines.push(format!("status: {status}"));
                if cli.opts.timing {
                    lines.push(format!("time: {elapsed} ms"));
                }
                lines.join("\n") + "\n"
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lieshift(args: &[&str]) -> Outcome {
        run(std::iter::once("lieshift").chain(args.iter().copied()))
    }

    #[test]
    fn index_and_b_examples() {
        let o = lieshift(&["index", "--preset", "borel-sl3"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.starts_with("ind(borel-sl3) = 1\n"), "{}", o.stdout);
        let o = lieshift(&["b", "--preset", "gl4"]);
        assert!(o.stdout.starts_with("b(gl4) = 10\n"), "{}", o.stdout);
    }

    #[test]
    fn json_reports_are_reproducible() {
        let a = lieshift(&["index", "--preset", "sl3", "--json"]);
        let b = lieshift(&["index", "--preset", "sl3", "--json"]);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["results"]["index"], 2);
        assert_eq!(v["seed"], 2020);
        assert!(v.get("timing_ms").is_none());
        let c = lieshift(&["index", "--preset", "sl3", "--json", "--seed", "7"]);
        assert_ne!(a.stdout, c.stdout);
    }

    #[test]
    fn input_errors_exit_with_two() {
        assert_eq!(lieshift(&["index", "--preset", "nope"]).code, 2);
        assert_eq!(lieshift(&["index"]).code, 2);
        assert_eq!(lieshift(&["frobnicate"]).code, 2);
        assert_eq!(lieshift(&["index", "--file", "/nonexistent.json"]).code, 2);
        assert_eq!(lieshift(&["mf", "--preset", "aff1"]).code, 2);
        assert_eq!(lieshift(&["--help"]).code, 0);
    }

    #[test]
    fn construct_reports_a_certificate() {
        let o = lieshift(&["construct", "--preset", "aff1", "--json"]);
        assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["results"]["generators"][0], "y");
        assert_eq!(v["results"]["trdeg"]["value"], 1);
    }

    #[test]
    fn trdeg_and_maximality_commands() {
        let o = lieshift(&["trdeg", "--preset", "sl2", "--gens", "h^2 + 4*e*f - 2*h; h"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("trdeg = 2"), "{}", o.stdout);
        let o = lieshift(&["maximality", "--preset", "sl2", "--gens", "h", "--degree", "2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("not maximal"), "{}", o.stdout);
        let o = lieshift(&["maximality", "--preset", "sl2", "--gens", "e; f"]);
        assert_eq!(o.code, 1);
    }
}
