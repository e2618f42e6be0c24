//! Command-line surface.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfine::registry::{self, FormKind, Identity, Mode, Outcome, Sweep, VerificationReport, VerifyOptions};
use qfine::series::{verify_limit, LimitId, TruncatedQSeries};
use qfine::{Rational, RationalFunction, Var, Vars};
use thiserror::Error;

use crate::eval::{eval, eval_expr};
use crate::latex::{expr_latex, ratfunc_latex};
use crate::parse::{parse, SyntaxError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{error}")]
    Syntax { error: SyntaxError, input: String },
    #[error("{0}")]
    Usage(String),
    #[error("evaluation error: {0}")]
    Eval(#[from] qfine::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(_) | CliError::Io(_) => EXIT_EVAL,
        }
    }

    fn diagnostic(&self) -> String {
        match self {
            CliError::Syntax { error, input } => {
                let col = input[..error.offset.min(input.len())].chars().count();
                format!("error: {error}\n  {input}\n  {}^", " ".repeat(col))
            }
            e => format!("error: {e}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qfine", version, about = "Exact verification of finite Fine function identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the catalog ids, their forms and source anchors, and the limit ids.
    List,
    /// Check catalog identities.
    Verify(VerifyArgs),
    /// Expand an expression to a canonical rational function.
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand in powers of q, or check a limit identity coefficientwise.
    Series {
        #[arg(long, required_unless_present = "expr", conflicts_with = "expr")]
        limit_id: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Evaluate an expression, optionally at a point such as q=1/2,a=1/3.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id; may be repeated.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    id: Vec<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Worker threads for the sweep.
    #[arg(long)]
    threads: Option<usize>,
    /// Sample points per instance in sampled mode.
    #[arg(long, default_value_t = 5)]
    points: usize,
    /// Write measured times instead of 0.
    #[arg(long)]
    timings: bool,
    /// Multiply every right side by 1 + q.
    #[arg(long)]
    perturb: bool,
    /// Skip the non-gating forms (printed errata and variants).
    #[arg(long)]
    gating_only: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Records,
}

/// The exit code a set of reports calls for: a failing gating form wins, then a
/// sampler that ran out of pole-free points.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(VerificationReport::is_gating_failure) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.exhausted) {
        EXIT_EVAL
    } else {
        EXIT_PASS
    }
}

/// Parses and runs one command line, writing results to `out` and diagnostics
/// to `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.diagnostic());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::List => list(out),
        Command::Verify(args) => verify(&args, out),
        Command::Expand { expr, format } => {
            let e = parse_expr(&expr)?;
            let value = eval_expr(&e)?;
            match format {
                Format::Text => writeln!(out, "{value}")?,
                Format::Latex => writeln!(out, "{} = {}", expr_latex(&e), ratfunc_latex(&value))?,
            }
            Ok(EXIT_PASS)
        }
        Command::Series { limit_id, expr, order, format } => match (limit_id, expr) {
            (Some(id), _) => {
                let id = LimitId::from_name(&id).ok_or_else(|| {
                    let known: Vec<&str> = LimitId::ALL.iter().map(|l| l.name()).collect();
                    CliError::Usage(format!("unknown limit id `{id}`; known ids: {}", known.join(", ")))
                })?;
                let report = verify_limit(id, order)?;
                match format {
                    ReportFormat::Records => writeln!(out, "{}", report.record(false))?,
                    ReportFormat::Text => writeln!(out, "{id}  D={order}  {}  {}", report.outcome.name(), id.statement())?,
                }
                Ok(exit_code(&[report]))
            }
            (None, Some(text)) => {
                let e = parse_expr(&text)?;
                writeln!(out, "{}", eval(&e, &TruncatedQSeries::vars(order))?)?;
                Ok(EXIT_PASS)
            }
            (None, None) => Err(CliError::Usage("series needs --limit-id or --expr".into())),
        },
        Command::Eval { expr, at } => {
            let e = parse_expr(&expr)?;
            let assigned = match at {
                Some(text) => parse_point(&text)?,
                None => [None, None, None, None],
            };
            if let [Some(q), Some(a), Some(b), Some(t)] = &assigned {
                let point = [q.clone(), a.clone(), b.clone(), t.clone()];
                writeln!(out, "{}", eval(&e, &Vars::at(&point))?)?;
            } else {
                let mut v = Vars::symbolic();
                for (var, value) in Var::ALL.into_iter().zip(&assigned) {
                    if let Some(r) = value {
                        let slot = match var {
                            Var::Q => &mut v.q,
                            Var::A => &mut v.a,
                            Var::B => &mut v.b,
                            Var::T => &mut v.t,
                        };
                        *slot = RationalFunction::from_rational(r);
                    }
                }
                writeln!(out, "{}", eval(&e, &v)?)?;
            }
            Ok(EXIT_PASS)
        }
    }
}

fn parse_expr(text: &str) -> Result<crate::Expr, CliError> {
    parse(text).map_err(|error| CliError::Syntax { error, input: text.to_string() })
}

/// `q=1/2,a=-3,...`; unassigned variables stay symbolic.
fn parse_point(text: &str) -> Result<[Option<Rational>; 4], CliError> {
    let mut point: [Option<Rational>; 4] = Default::default();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("`{item}` is not of the form var=value")))?;
        let var = match name.trim() {
            n if n.chars().count() == 1 => Var::from_name(n.chars().next().expect("one char")),
            _ => None,
        }
        .ok_or_else(|| CliError::Usage(format!("unknown variable `{}`; use q, a, b or t", name.trim())))?;
        let value: Rational = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("`{}` is not a rational number", value.trim())))?;
        let slot = &mut point[var.index()];
        if slot.is_some() {
            return Err(CliError::Usage(format!("variable `{var}` assigned twice")));
        }
        *slot = Some(value);
    }
    Ok(point)
}

fn kind_name(kind: FormKind) -> &'static str {
    match kind {
        FormKind::Printed => "printed",
        FormKind::PrintedErratum => "erratum",
        FormKind::Corrected => "corrected",
        FormKind::Variant => "variant",
        FormKind::Alternate => "alternate",
    }
}

fn list(out: &mut dyn Write) -> Result<i32, CliError> {
    for identity in registry::catalog() {
        let forms: Vec<String> = identity.forms.iter().map(|f| format!("{}:{}", f.name, kind_name(f.kind))).collect();
        writeln!(out, "{:<7} {}  [{}]  anchor: \"{}\"", identity.id, identity.title, forms.join(" "), identity.anchor)?;
    }
    for id in LimitId::ALL {
        writeln!(out, "{:<7} {}", id.name(), id.statement())?;
    }
    Ok(EXIT_PASS)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let catalog = registry::catalog();
    for id in &args.id {
        if !catalog.iter().any(|i| i.id.eq_ignore_ascii_case(id)) {
            return Err(CliError::Usage(format!("unknown identity id `{id}`; run `qfine list`")));
        }
    }
    let mode = match args.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::Sampled,
    };
    let mut sweep = Sweep::new(args.n_max, mode, args.seed);
    sweep.ids = args.id.clone();
    sweep.points = args.points;
    sweep.threads = args.threads;
    sweep.all_forms = !args.gating_only;
    sweep.options = VerifyOptions { perturb: args.perturb };
    let reports = registry::verify_catalog(&catalog, &sweep);
    write_reports(&reports, &catalog, args.format, args.timings, out)?;
    Ok(exit_code(&reports))
}

fn write_reports(reports: &[VerificationReport], catalog: &[Identity], format: ReportFormat, timings: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if format == ReportFormat::Records {
        for r in reports {
            writeln!(out, "{}", r.record(timings))?;
        }
        return Ok(());
    }
    let count = |o: Outcome| reports.iter().filter(|r| r.outcome == o).count();
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let form = r.form.as_deref().unwrap_or("-");
        let kind = catalog
            .iter()
            .find(|i| i.id == r.id)
            .and_then(|i| i.form(form))
            .map_or("", |f| kind_name(f.kind));
        let mut line = format!("{:<7} {:<12} {:<10} {:<14} {}", r.id, form, kind, params.join(","), r.outcome.name());
        if r.outcome == Outcome::Fail && !r.gating {
            line.push_str(" (non-gating)");
        }
        if timings {
            line.push_str(&format!(" {} ms", r.millis));
        }
        if r.outcome == Outcome::Skipped {
            if let Some(note) = &r.note {
                line.push_str(&format!(" ({note})"));
            }
        }
        writeln!(out, "{line}")?;
    }
    let gating = reports.iter().filter(|r| r.is_gating_failure()).count();
    writeln!(
        out,
        "{} checks: {} pass, {} fail ({gating} gating), {} skipped",
        reports.len(),
        count(Outcome::Pass),
        count(Outcome::Fail),
        count(Outcome::Skipped)
    )?;
    Ok(())
}
