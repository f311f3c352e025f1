//! The `genprob` command line.
//!
//! Exit codes: 0 on success, 1 when a model or query violates a law or
//! contract of the library, 2 on usage and parse errors.

pub mod model;
pub mod query;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{check_laws, Structure, DEFAULT_LAW_SAMPLES};
use crate::error::Error;
use crate::instances::{InstanceId, InstanceVisitor};
use model::{Model, ModelFile};
use query::{Evaluator, Query};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    /// Bad arguments, unreadable or malformed model, unknown names, grammar.
    Usage(String),
    /// A library error raised while validating or evaluating.
    Domain(Error),
    /// The structure fails one of its claimed laws.
    Law {
        structure: String,
        axiom: &'static str,
        witness: String,
    },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(_) | Failure::Law { .. } => EXIT_DOMAIN,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Domain(e) => format!("error[{}]: {e}", e.module()),
            Failure::Law {
                structure,
                axiom,
                witness,
            } => format!("error[algebra]: `{structure}` violates {axiom}: {witness}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Lines for stdout and the failure, if any, that ended the command.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub failure: Option<Failure>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.failure.as_ref().map_or(EXIT_OK, Failure::exit_code)
    }

    fn fail(mut self, f: Failure) -> Self {
        self.failure = Some(f);
        self
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "genprob",
    version,
    about = "Probability over ordered algebraic structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Model file (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Structure instance, overriding the model's.
    #[arg(long)]
    instance: Option<String>,
    /// Comparison tolerance; float instances only.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structure's laws and validate the model.
    Check {
        #[command(flatten)]
        common: Common,
        /// Seed for law-check sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled triples per law.
        #[arg(long, default_value_t = DEFAULT_LAW_SAMPLES)]
        samples: usize,
    },
    /// Answer one or more queries against a model.
    Query {
        #[command(flatten)]
        common: Common,
        #[arg(required = true)]
        queries: Vec<String>,
    },
}

/// Law checks followed by model and measure validation.
pub fn check_model<S: Structure>(s: &S, file: &ModelFile, samples: usize, seed: u64) -> Outcome {
    let mut out = Outcome::default();
    out.lines.push(format!("structure: {}", s.name()));
    out.lines
        .push(format!("capabilities: {}", s.capabilities()));
    out.lines
        .push(format!("laws: {samples} samples, seed {seed}"));
    let report = check_laws(s, s.capabilities(), samples, seed);
    let mut law_failure = None;
    for entry in &report.entries {
        match &entry.counterexample {
            None => out.lines.push(format!("  {} pass", entry.axiom.id())),
            Some(ce) => {
                let witness = ce
                    .values
                    .iter()
                    .map(|v| s.render(v))
                    .collect::<Vec<_>>()
                    .join(", ");
                out.lines.push(format!(
                    "  {} FAIL ({}) witness [{witness}]",
                    entry.axiom.id(),
                    entry.axiom.description()
                ));
                law_failure.get_or_insert(Failure::Law {
                    structure: s.name().to_string(),
                    axiom: entry.axiom.id(),
                    witness: format!("[{witness}]"),
                });
            }
        }
    }

    let model_failure = validate_model(s, file, &mut out.lines);
    // Usage problems come first, then the structure's own laws.
    let failure = match (model_failure, law_failure) {
        (Some(f @ Failure::Usage(_)), _) => Some(f),
        (_, Some(law)) => Some(law),
        (other, None) => other,
    };
    out.lines.push(format!(
        "result: {}",
        if failure.is_some() { "fail" } else { "pass" }
    ));
    out.failure = failure;
    out
}

fn validate_model<S: Structure>(
    s: &S,
    file: &ModelFile,
    lines: &mut Vec<String>,
) -> Option<Failure> {
    let model = match Model::build(s.clone(), file) {
        Ok(m) => m,
        Err(f) => return Some(f),
    };
    let m = &model.measure;
    lines.push(format!(
        "measure: {} outcomes, {} atoms",
        m.space().len(),
        m.algebra().atom_count()
    ));
    lines.push("  ACMA1 pass".into());
    if let Err(f) = model.probability() {
        lines.push(format!("  ACPA2 FAIL total {}", s.render(&m.total())));
        return Some(f);
    }
    lines.push("  ACPA2 pass".into());
    let names = |v: Vec<&String>| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.into_iter().cloned().collect::<Vec<_>>().join(", ")
        }
    };
    lines.push(format!("events: {}", names(model.events.keys().collect())));
    lines.push(format!(
        "variables: {}",
        names(model.variables.keys().collect())
    ));
    None
}

/// Evaluates queries in order, stopping at the first failure.
pub fn query_model<S: Structure>(s: &S, file: &ModelFile, queries: &[String]) -> Outcome {
    let mut out = Outcome::default();
    let model = match Model::build(s.clone(), file) {
        Ok(m) => m,
        Err(f) => return out.fail(f),
    };
    let p = match model.probability() {
        Ok(p) => p,
        Err(f) => return out.fail(f),
    };
    out.lines.push(format!("structure: {}", s.name()));
    let eval = Evaluator::new(&model, &p);
    for q in queries {
        out.lines.push(String::new());
        out.lines.push(format!("query: {}", q.trim()));
        match Query::parse(q).and_then(|parsed| eval.eval(&parsed)) {
            Ok(lines) => out.lines.extend(lines),
            Err(f) => return out.fail(f),
        }
    }
    out
}

enum Task<'a> {
    Check { samples: usize, seed: u64 },
    Query(&'a [String]),
}

struct Dispatch<'a> {
    file: &'a ModelFile,
    task: Task<'a>,
}

impl InstanceVisitor for Dispatch<'_> {
    type Output = Outcome;

    fn visit<S: Structure + 'static>(self, s: S) -> Outcome {
        match self.task {
            Task::Check { samples, seed } => check_model(&s, self.file, samples, seed),
            Task::Query(qs) => query_model(&s, self.file, qs),
        }
    }
}

fn execute(common: &Common, task: Task<'_>) -> Outcome {
    let file = match ModelFile::load(&common.model) {
        Ok(f) => f,
        Err(f) => return Outcome::default().fail(f),
    };
    let id_text = common.instance.as_deref().unwrap_or(&file.structure);
    let id: InstanceId = match id_text.parse() {
        Ok(id) => id,
        Err(e) => return Outcome::default().fail(Failure::Usage(e.to_string())),
    };
    if let Some(t) = common.tolerance {
        if !id.is_float() {
            return Outcome::default().fail(Failure::Usage(format!(
                "--tolerance applies only to float instances, not `{id}`"
            )));
        }
        if !t.is_finite() || t < 0.0 {
            return Outcome::default().fail(Failure::Usage(format!(
                "--tolerance must be a finite non-negative number, got {t}"
            )));
        }
    }
    id.visit(common.tolerance, Dispatch { file: &file, task })
}

/// Runs the command line, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Check {
            common,
            seed,
            samples,
        } => execute(
            common,
            Task::Check {
                samples: *samples,
                seed: *seed,
            },
        ),
        Command::Query { common, queries } => execute(common, Task::Query(queries)),
    };
    for line in &outcome.lines {
        let _ = writeln!(out, "{line}");
    }
    if let Some(f) = &outcome.failure {
        let _ = writeln!(err, "{}", f.message());
    }
    outcome.exit_code()
}
