//! Command-line surface for extraction computations.
//!
//! Every command reads one input file (see [`input`]) and prints either a
//! plain-text report or, with `--json`, one JSON object of the form
//! `{command, inputs, result, diagnostics, timing_ms}`.
//!
//! Exit codes: 0 success, 1 refusal on mathematical grounds (for example a
//! non-control order or a missing decomposition), 2 parse or usage error,
//! 3 a verification that ran and failed.

pub mod commands;
pub mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub use input::{parse_input, Input};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUSED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "extracta",
    version,
    about = "Extraction of polynomial ideals by control ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the declarations come from: a file, or inline text with `-e`.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Input file (`-` reads standard input).
    pub file: Option<PathBuf>,
    /// Inline input text instead of a file.
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    pub expr: Option<String>,
    /// Emit one JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub source: Source,
    /// The ideal being extracted.
    #[arg(long, default_value = "I")]
    pub ideal: String,
    /// The control ideal.
    #[arg(long, default_value = "J")]
    pub control: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Homogenized,
    Mora,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic vector, class and control property of an order.
    ClassifyOrder {
        #[command(flatten)]
        source: Source,
        /// Order name; optional when exactly one order is declared.
        #[arg(long)]
        order: Option<String>,
    },
    /// Standard basis of an ideal in the localization at an order.
    Sb {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "I")]
        ideal: String,
        /// Order name; degrevlex when omitted.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value = "homogenized")]
        method: Method,
    },
    /// Membership in the extension of an ideal to the localization.
    Member {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "I")]
        ideal: String,
        #[arg(long)]
        order: Option<String>,
        /// Polynomial names or literals; every declared `poly` when omitted.
        #[arg(long = "poly")]
        polys: Vec<String>,
    },
    /// Membership in the extraction of I by J, decided on the lift.
    ExtractMember {
        #[command(flatten)]
        args: ExtractArgs,
        #[arg(long = "poly")]
        polys: Vec<String>,
        /// Also decide membership in the radical.
        #[arg(long)]
        radical: bool,
    },
    /// Generators of the extraction from a primary decomposition of I.
    Extract {
        #[command(flatten)]
        args: ExtractArgs,
        /// Decomposition name; monomial ideals are split automatically.
        #[arg(long)]
        decomp: Option<String>,
        /// Heuristically test each component for primariness.
        #[arg(long)]
        verify_primary: bool,
    },
    /// Krull dimension of the extraction.
    ExtractDim {
        #[command(flatten)]
        args: ExtractArgs,
    },
    /// Krull dimension of an ideal, or of its localization at a control order.
    Dim {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "I")]
        ideal: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Contraction of a point ideal localized at an arbitrary order.
    ContractPoints {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "P")]
        points: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// The identity suite on declared decompositions or a corpus entry.
    CheckIdentities {
        #[command(flatten)]
        source: Source,
        /// Decomposition of I.
        #[arg(long = "i", default_value = "DI")]
        di: String,
        /// Decomposition of the control ideal J.
        #[arg(long = "j", default_value = "DJ")]
        dj: String,
        /// Decomposition of the partner ideal H.
        #[arg(long = "h", default_value = "DH")]
        dh: String,
        /// Second control ideal L.
        #[arg(long = "l", default_value = "L")]
        l: String,
        /// Use this entry of the generated corpus instead of an input file.
        #[arg(long, conflicts_with_all = ["file", "expr"])]
        entry: Option<usize>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        verify_primary: bool,
    },
    /// Generate the seeded corpus and run every cross-check on it.
    CorpusRun {
        #[arg(long)]
        json: bool,
        /// Seed; falls back to EXTRACTA_SEED, then a fixed default.
        #[arg(long)]
        seed: Option<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 100)]
        monomial: usize,
        #[arg(long, default_value_t = 60)]
        points: usize,
        #[arg(long, default_value_t = 50)]
        principal: usize,
        #[arg(long, default_value_t = 20)]
        probes: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ClassifyOrder { .. } => "classify-order",
            Command::Sb { .. } => "sb",
            Command::Member { .. } => "member",
            Command::ExtractMember { .. } => "extract-member",
            Command::Extract { .. } => "extract",
            Command::ExtractDim { .. } => "extract-dim",
            Command::Dim { .. } => "dim",
            Command::ContractPoints { .. } => "contract-points",
            Command::CheckIdentities { .. } => "check-identities",
            Command::CorpusRun { .. } => "corpus-run",
        }
    }

    fn source(&self) -> Option<&Source> {
        match self {
            Command::ClassifyOrder { source, .. }
            | Command::Sb { source, .. }
            | Command::Member { source, .. }
            | Command::Dim { source, .. }
            | Command::ContractPoints { source, .. }
            | Command::CheckIdentities { source, .. } => Some(source),
            Command::ExtractMember { args, .. } | Command::Extract { args, .. } | Command::ExtractDim { args } => {
                Some(&args.source)
            }
            Command::CorpusRun { .. } => None,
        }
    }

    pub fn json(&self) -> bool {
        match self {
            Command::CorpusRun { json, .. } => *json,
            other => other.source().is_some_and(|s| s.json),
        }
    }
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn refused(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_REFUSED,
            message: message.into(),
        }
    }

    fn from_core(e: extracta::Error, file: Option<&Path>) -> Self {
        let code = if e.is_domain_refusal() {
            EXIT_REFUSED
        } else {
            EXIT_PARSE
        };
        let message = match (&e, file) {
            (extracta::Error::Parse { .. }, Some(f)) => format!("{}: {e}", f.display()),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<extracta::Error> for Failure {
    fn from(e: extracta::Error) -> Self {
        Failure::from_core(e, None)
    }
}

/// What a command produced, before rendering.
#[derive(Debug, Default)]
pub struct Report {
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub diagnostics: Vec<String>,
    pub text: String,
    /// Set when a verification ran and failed.
    pub check_failed: bool,
}

/// Rendered output and exit code of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Reads the declarations named by `source`.
pub fn load(source: &Source) -> Result<(Input, Option<PathBuf>), Failure> {
    let (text, path) = match (&source.expr, &source.file) {
        (Some(e), _) => (e.clone(), None),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
            (s, None)
        }
        (None, Some(p)) => {
            let s = fs::read_to_string(p).map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
            (s, Some(p.clone()))
        }
        (None, None) => return Err(Failure::usage("no input: pass a file or -e TEXT")),
    };
    let base = path.as_deref().and_then(Path::parent);
    let input = parse_input(&text, base).map_err(|e| Failure::from_core(e, path.as_deref()))?;
    Ok((input, path))
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let command = &cli.command;
    let result = commands::dispatch(command);
    let timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    let json_mode = command.json();
    match result {
        Ok(report) => {
            let code = if report.check_failed {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            };
            let stdout = if json_mode {
                render_json(
                    command.name(),
                    report.inputs,
                    report.result,
                    &report.diagnostics,
                    timing_ms,
                )
            } else {
                let mut s = report.text;
                for d in &report.diagnostics {
                    s.push_str(&format!("note: {d}\n"));
                }
                s
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(f) => {
            if json_mode {
                Outcome {
                    stdout: render_json(command.name(), Map::new(), Value::Null, std::slice::from_ref(&f.message), timing_ms),
                    stderr: String::new(),
                    code: f.code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: format!("error: {}\n", f.message),
                    code: f.code,
                }
            }
        }
    }
}

fn render_json(
    command: &str,
    inputs: Map<String, Value>,
    result: Value,
    diagnostics: &[String],
    timing_ms: f64,
) -> String {
    let v = json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": diagnostics,
        "timing_ms": timing_ms,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
