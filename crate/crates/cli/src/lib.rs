//! The `spaceform` command line. [`run`] does all the work and returns the
//! exit code and output streams so tests can drive it in-process.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use spaceform_core::chartab::{builtin_cyclic, builtin_quaternion8, validate_table, CharacterTable};
use spaceform_core::expr::{parse_rep_expression, ExprError};
use spaceform_core::ktheory::{counterexample_report, k_theory_of_space_form, quaternion_family, KError};
use spaceform_core::report::{
    CounterexampleReport, FreenessReport, ReportDocument, RingEvalReport, SpaceFormReport, TableReport,
    ValidationDocument,
};
use spaceform_core::repring::{RepError, VirtualCharacter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "spaceform", version, about = "K-theory of spherical space forms from character tables")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Character table file (JSON); overrides --group.
    #[arg(long, global = true)]
    table: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect or validate character tables.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Representation-ring arithmetic.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Does G act freely on the unit sphere of the representation?
    Free {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        rep: String,
    },
    /// K-theory of S(V)/G.
    Kform {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        rep: String,
    },
    /// K-theory of S^{4n+3}/Q8, with Q8 acting by (n+1) copies of y.
    KformFamily {
        #[arg(long, default_value = "q8")]
        group: String,
        #[arg(long)]
        n: u64,
    },
    /// Parity arithmetic for the identity map of S^7/Q8.
    Counterexample,
}

#[derive(Debug, Subcommand)]
enum TableAction {
    /// Check orthogonality, degrees, class sizes and power maps.
    Validate {
        #[arg(long)]
        group: Option<String>,
    },
    /// Print a character table.
    Show {
        #[arg(long)]
        group: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum RingAction {
    /// Evaluate an expression, optionally applying an operation.
    Eval {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        expr: String,
        /// mul | adams:<k> | lambda:<q> | lambda-minus-one
        #[arg(long)]
        op: Option<String>,
        /// Right operand for `mul`.
        #[arg(long)]
        rhs: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse { .. } => Failure::usage(e.to_string()),
            _ => Failure::domain(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<KError> for Failure {
    fn from(e: KError) -> Self {
        Failure::domain(e.to_string())
    }
}

enum Op {
    Identity,
    Mul,
    Adams(u64),
    Lambda(u64),
    LambdaMinusOne,
}

fn parse_op(s: Option<&str>) -> Result<Op, Failure> {
    let Some(s) = s else { return Ok(Op::Identity) };
    let index = |rest: &str, what: &str| {
        rest.parse::<u64>().map_err(|_| Failure::usage(format!("bad {what} index in --op {s:?}")))
    };
    match s {
        "mul" => Ok(Op::Mul),
        "lambda-minus-one" => Ok(Op::LambdaMinusOne),
        _ => {
            if let Some(rest) = s.strip_prefix("adams:") {
                Ok(Op::Adams(index(rest, "Adams")?))
            } else if let Some(rest) = s.strip_prefix("lambda:") {
                Ok(Op::Lambda(index(rest, "exterior power")?))
            } else {
                Err(Failure::usage(format!(
                    "unknown --op {s:?}; expected mul, adams:<k>, lambda:<q> or lambda-minus-one"
                )))
            }
        }
    }
}

/// Resolves `--table` or `--group` into a table and the name used in reports.
fn load_table(table: Option<&Path>, group: Option<&str>) -> Result<(String, Arc<CharacterTable>), Failure> {
    if let Some(path) = table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let t = CharacterTable::from_json_str(&text).map_err(|e| Failure::usage(e.to_string()))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok((name, Arc::new(t)));
    }
    let spec = group.ok_or_else(|| Failure::usage("either --group or --table is required"))?;
    Ok((spec.to_string(), Arc::new(builtin_group(spec)?)))
}

fn builtin_group(spec: &str) -> Result<CharacterTable, Failure> {
    if spec == "q8" {
        return Ok(builtin_quaternion8());
    }
    if let Some(m) = spec.strip_prefix("cyclic:") {
        return match m.parse::<u64>() {
            Ok(m) if m >= 1 => Ok(builtin_cyclic(m)),
            _ => Err(Failure::usage(format!("bad cyclic order in group spec {spec:?}"))),
        };
    }
    Err(Failure::usage(format!("unknown group {spec:?}; expected q8 or cyclic:<m>")))
}

fn evaluate(s: &str, table: &Arc<CharacterTable>) -> Result<VirtualCharacter, Failure> {
    Ok(parse_rep_expression(s, table)?.evaluate(table)?)
}

fn evaluate_genuine(s: &str, table: &Arc<CharacterTable>) -> Result<VirtualCharacter, Failure> {
    Ok(parse_rep_expression(s, table)?.evaluate_genuine(table)?)
}

/// A report plus the exit code and diagnostic that go with it.
struct Produced {
    doc: ReportDocument,
    code: i32,
    diagnostic: Option<String>,
}

impl From<ReportDocument> for Produced {
    fn from(doc: ReportDocument) -> Self {
        Produced { doc, code: EXIT_OK, diagnostic: None }
    }
}

fn execute(cli: &Cli) -> Result<Produced, Failure> {
    let table_path = cli.table.as_deref();
    match &cli.command {
        Command::Table { action: TableAction::Validate { group } } => {
            let (name, t) = load_table(table_path, group.as_deref())?;
            let doc = ValidationDocument::new(&name, &validate_table(&t));
            let failed = !doc.passed;
            let count = doc.violations.len();
            Ok(Produced {
                doc: ReportDocument::Validation(doc),
                code: if failed { EXIT_DOMAIN } else { EXIT_OK },
                diagnostic: failed.then(|| format!("table {name} has {count} violation(s)")),
            })
        }
        Command::Table { action: TableAction::Show { group } } => {
            let (name, t) = load_table(table_path, group.as_deref())?;
            Ok(ReportDocument::Table(TableReport::new(&name, &t)).into())
        }
        Command::Ring { action: RingAction::Eval { group, expr, op, rhs } } => {
            let (name, t) = load_table(table_path, group.as_deref())?;
            let op = parse_op(op.as_deref())?;
            if rhs.is_some() && !matches!(op, Op::Mul) {
                return Err(Failure::usage("--rhs is only meaningful with --op mul"));
            }
            let lhs = evaluate(expr, &t)?;
            let (label, result) = match op {
                Op::Identity => ("identity".to_string(), lhs),
                Op::Mul => {
                    let rhs = rhs.as_deref().ok_or_else(|| Failure::usage("--op mul needs --rhs"))?;
                    let r = evaluate(rhs, &t)?;
                    (format!("mul({rhs})"), lhs.multiply(&r)?)
                }
                Op::Adams(k) => (format!("adams:{k}"), lhs.adams(k)?),
                Op::Lambda(q) => (format!("lambda:{q}"), lhs.exterior_power(q)?),
                Op::LambdaMinusOne => ("lambda-minus-one".to_string(), lhs.lambda_minus_one()?),
            };
            Ok(ReportDocument::RingEval(RingEvalReport::new(&name, expr, &label, &result)?).into())
        }
        Command::Free { group, rep } => {
            let (name, t) = load_table(table_path, group.as_deref())?;
            let v = evaluate_genuine(rep, &t)?;
            let report = FreenessReport::new(&name, &v)?;
            let diagnostic = report.witness_class.as_ref().map(|w| format!("not free: class {w} has a fixed vector"));
            Ok(Produced {
                code: if report.free { EXIT_OK } else { EXIT_DOMAIN },
                doc: ReportDocument::Freeness(report),
                diagnostic,
            })
        }
        Command::Kform { group, rep } => {
            let (name, t) = load_table(table_path, group.as_deref())?;
            let v = evaluate_genuine(rep, &t)?;
            let res = k_theory_of_space_form(&v)?;
            Ok(ReportDocument::SpaceForm(SpaceFormReport::new(&name, &res, None)).into())
        }
        Command::KformFamily { group, n } => {
            if group != "q8" || table_path.is_some() {
                return Err(Failure::usage("kform-family is defined for --group q8 only"));
            }
            let res = quaternion_family(*n)?;
            Ok(ReportDocument::SpaceForm(SpaceFormReport::new("q8", &res, Some(*n))).into())
        }
        Command::Counterexample => {
            let c = counterexample_report()?;
            Ok(ReportDocument::Counterexample(CounterexampleReport::new(&c)).into())
        }
    }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(p) => Outcome {
            code: p.code,
            stdout: match cli.format {
                Format::Text => p.doc.to_text(),
                Format::Json => p.doc.to_json(),
            },
            stderr: p.diagnostic.map(|d| format!("spaceform: {d}\n")).unwrap_or_default(),
        },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("spaceform: error: {}\n", f.message) },
    }
}
