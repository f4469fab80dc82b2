//! Command-line front end. [`run`] parses arguments, dispatches to the
//! engine and writes one document to `out`; diagnostics go to `err`.
//!
//! Exit codes: 0 success, 1 a `check` case failed, 2 bad input,
//! 3 budget refusal.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tracelog::poly::{rational_to_string, MPoly, Rational, Symbol};
use tracelog::resultant::{
    coefficient_matrix, determinant_special, leibniz_determinant, minor_expansion_determinant, resultant_with,
    GradingMode, ResultantOptions,
};
use tracelog::schur::{multi_schur, symbolic_args, SchurMethod};
use tracelog::system::{force_common_root, from_json, random_dense, to_json_value, PolySystem};
use tracelog::trace::{candidate_estimate, TraceEngine, DEFAULT_BUDGET};
use tracelog::Error;

mod check;

pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "tracelog", version, about = "Exact resultants of homogeneous polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the resultant of a system.
    Resultant(ResultantArgs),
    /// Multigraded or aggregated traces of a system.
    Traces(TracesArgs),
    /// Schur or multi-Schur polynomial in symbolic arguments.
    Schur(SchurArgs),
    /// Determinant of a matrix through power traces.
    Det(DetArgs),
    /// Exact resultant value of a numeric system.
    Probe(ProbeArgs),
    /// Run the oracle cross-checks.
    Check(CheckArgs),
    /// Degree data and trace-stage cost estimates, without computing.
    Stats(StatsArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Degrees r_1,..,r_n.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    /// Generic system: every coefficient is a symbol.
    #[arg(long, requires = "degrees")]
    symbolic: bool,
    /// Seeded random numeric system (see --seed and --root).
    #[arg(long, requires = "degrees", conflicts_with = "symbolic")]
    random: bool,
    /// With --random: force a common root at these rational coordinates.
    #[arg(long, value_delimiter = ',', requires = "random", allow_hyphen_values = true)]
    root: Option<Vec<String>>,
    /// System document file, or `-` for standard input.
    #[arg(long, conflicts_with_all = ["degrees", "system"])]
    input: Option<PathBuf>,
    /// Inline system document.
    #[arg(long, conflicts_with = "degrees")]
    system: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EngineArgs {
    /// Refuse trace plans with more candidate exponent matrices than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: u128,
    /// Worker threads for the trace stage.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Single,
    Multi,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Enumerate,
    Recurrence,
}

impl From<ModeArg> for GradingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => GradingMode::Single,
            ModeArg::Multi => GradingMode::Multi,
        }
    }
}

impl From<MethodArg> for SchurMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Enumerate => SchurMethod::Enumerate,
            MethodArg::Recurrence => SchurMethod::Recurrence,
        }
    }
}

#[derive(Args)]
struct ResultantArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Multi)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
    method: MethodArg,
    /// Report sizes only; defaults to JSON output.
    #[arg(long)]
    stats_only: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct TracesArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// One multigraded trace T_{k_1..k_n}.
    #[arg(long, value_delimiter = ',', conflicts_with = "k")]
    grading: Option<Vec<u32>>,
    /// Aggregated traces T_1..T_k.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SchurArgs {
    /// Scalar P_k.
    #[arg(long, conflicts_with = "target")]
    k: Option<u32>,
    /// Multi-Schur P_{k_1..k_n}.
    #[arg(long, value_delimiter = ',')]
    target: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetMethod {
    Traces,
    Leibniz,
    Minors,
}

#[derive(Args)]
struct DetArgs {
    /// Symbolic n x n matrix with entries f{i}_{j}.
    #[arg(long, conflicts_with = "matrix", value_parser = clap::value_parser!(u32).range(1..=12))]
    n: Option<u32>,
    /// JSON array of rows; entries are numbers or polynomial strings.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, value_enum, default_value_t = DetMethod::Traces)]
    method: DetMethod,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// Systems per probe suite.
    #[arg(long, default_value_t = 10)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Multi)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_budget(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

/// A failed command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(Error),
    CheckFailed(usize),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Engine(e) if e.is_budget() => 3,
            CliError::Input(_) | CliError::Engine(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Input(msg) => json!({"kind": "input", "message": msg}),
            CliError::CheckFailed(n) => json!({"kind": "check", "message": format!("{n} check(s) failed")}),
            CliError::Engine(e) => match e {
                Error::BudgetExceeded { what, estimate, cap, grading } => json!({
                    "kind": "budget",
                    "message": e.to_string(),
                    "what": what,
                    "estimate": estimate.to_string(),
                    "cap": cap.to_string(),
                    "grading": grading,
                }),
                other => json!({"kind": "input", "message": other.to_string()}),
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::CheckFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Output of a successful command: text, or a JSON document.
enum Doc {
    Text(String),
    Json(Value),
}

fn document(command: &str, fields: Value) -> Value {
    let mut doc = json!({"schema": SCHEMA, "command": command});
    if let (Value::Object(d), Value::Object(f)) = (&mut doc, fields) {
        d.extend(f);
    }
    doc
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(rendered.as_bytes());
                0
            } else {
                let _ = err.write_all(rendered.as_bytes());
                2
            };
        }
    };
    let json_errors = wants_json(&cli.command);
    let (doc, failure) = match dispatch(cli.command) {
        Ok((doc, 0)) => (Some(doc), None),
        // a failed check still emits its full report
        Ok((doc, failed)) => (Some(doc), Some(CliError::CheckFailed(failed))),
        Err(e) => (None, Some(e)),
    };
    if let Some(doc) = doc {
        let text = match doc {
            Doc::Text(s) => s,
            Doc::Json(v) => serde_json::to_string_pretty(&v).expect("documents serialize"),
        };
        let _ = writeln!(out, "{text}");
    }
    match failure {
        None => 0,
        Some(e) => {
            if json_errors {
                let doc = json!({"schema": SCHEMA, "error": e.to_json()});
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.code()
        }
    }
}

fn wants_json(c: &Command) -> bool {
    match c {
        Command::Resultant(a) => a.format.unwrap_or(if a.stats_only { Format::Json } else { Format::Text }) == Format::Json,
        Command::Traces(a) => a.format == Format::Json,
        Command::Schur(a) => a.format == Format::Json,
        Command::Det(a) => a.format == Format::Json,
        Command::Probe(a) => a.format == Format::Json,
        Command::Check(a) => a.format == Format::Json,
        Command::Stats(a) => a.format == Format::Json,
    }
}

/// The document and the number of failed check cases.
fn dispatch(c: Command) -> CliResult<(Doc, usize)> {
    if let Command::Check(a) = c {
        return Ok(check::run(a.samples, a.seed, a.format == Format::Json));
    }
    let doc = match c {
        Command::Resultant(a) => cmd_resultant(a),
        Command::Traces(a) => cmd_traces(a),
        Command::Schur(a) => cmd_schur(a),
        Command::Det(a) => cmd_det(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Check(_) => unreachable!("handled above"),
    }?;
    Ok((doc, 0))
}

fn load_system(a: &SystemArgs) -> CliResult<PolySystem> {
    let text = if let Some(path) = &a.input {
        let mut s = String::new();
        if path.as_os_str() == "-" {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
        } else {
            s = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?;
        }
        Some(s)
    } else {
        a.system.clone()
    };
    if let Some(text) = text {
        return Ok(from_json(&text)?);
    }
    let degrees = a
        .degrees
        .as_ref()
        .ok_or_else(|| CliError::Input("give a system with --input, --system or --degrees".into()))?;
    if a.symbolic {
        Ok(PolySystem::symbolic(degrees)?)
    } else if a.random {
        match &a.root {
            Some(root) => {
                let root = root
                    .iter()
                    .map(|c| tracelog::poly::parse_rational(c))
                    .collect::<Result<Vec<Rational>, _>>()?;
                Ok(force_common_root(degrees, &root, a.seed)?)
            }
            None => Ok(random_dense(degrees, a.seed)?),
        }
    } else {
        Err(CliError::Input("--degrees needs --symbolic or --random".into()))
    }
}

fn cmd_resultant(a: ResultantArgs) -> CliResult<Doc> {
    let system = load_system(&a.system)?;
    let opts = ResultantOptions {
        mode: a.mode.into(),
        budget: a.engine.budget,
        jobs: a.engine.jobs as usize,
        schur_method: a.method.into(),
    };
    let r = resultant_with(&system, &opts)?;
    let format = a.format.unwrap_or(if a.stats_only { Format::Json } else { Format::Text });
    Ok(match format {
        Format::Text if a.stats_only => Doc::Text(format!(
            "degrees: {:?}\nd_vec: {:?}\nd_total: {}\nmode: {}\nterm_count: {}\ntraces: {}\ntrace_terms: {}",
            system.degrees(),
            r.degree_data.d_vec,
            r.degree_data.d_total,
            mode_name(r.grading_mode),
            r.term_count,
            r.trace_report.traces,
            r.trace_report.trace_terms,
        )),
        Format::Text => Doc::Text(r.value.to_string()),
        Format::Json => {
            let mut fields = json!({
                "degrees": system.degrees(),
                "degree_data": r.degree_data,
                "mode": r.grading_mode,
                "term_count": r.term_count,
                "trace_report": {
                    "traces": r.trace_report.traces,
                    "trace_terms": r.trace_report.trace_terms,
                    "budget": r.trace_report.budget.to_string(),
                    "max_candidates": r.trace_report.max_candidates.to_string(),
                    "max_candidates_grading": r.trace_report.max_candidates_grading,
                },
            });
            if !a.stats_only {
                fields["value"] = Value::String(r.value.to_string());
            }
            Doc::Json(document("resultant", fields))
        }
    })
}

fn mode_name(m: GradingMode) -> &'static str {
    match m {
        GradingMode::Single => "single",
        GradingMode::Multi => "multi",
    }
}

fn grading_label(g: &[u32]) -> String {
    g.iter().map(u32::to_string).collect::<Vec<_>>().join("_")
}

fn cmd_traces(a: TracesArgs) -> CliResult<Doc> {
    let system = load_system(&a.system)?;
    let n = system.n();
    let engine = TraceEngine::new(system.degrees(), a.engine.budget)?;
    let mut rows: Vec<(String, Value, MPoly)> = Vec::new();
    if let Some(k) = a.k {
        if k == 0 {
            return Err(CliError::Input("--k must be at least 1".into()));
        }
        let gradings: Vec<Vec<u32>> = (1..=k).flat_map(|j| tracelog::trace::gradings_of_total(n, j)).collect();
        let mut table = engine.table(&system, &gradings, a.engine.jobs as usize)?;
        table.aggregate(n, k);
        for (j, t) in table.aggregated_all() {
            rows.push((format!("T{j}"), json!(j), t.clone()));
        }
    } else {
        let gradings = match a.grading {
            Some(g) => {
                if g.len() != n || g.iter().all(|&x| x == 0) {
                    return Err(CliError::Input(format!("grading must have {n} entries, not all zero")));
                }
                vec![g]
            }
            None => tracelog::resultant::required_gradings(system.degrees(), GradingMode::Multi)?,
        };
        let table = engine.table(&system, &gradings, a.engine.jobs as usize)?;
        for (g, t) in table.multigraded() {
            rows.push((format!("T{}", grading_label(g)), json!(g), t.clone()));
        }
    }
    Ok(match a.format {
        Format::Text => Doc::Text(
            rows.iter().map(|(label, _, t)| format!("{label} = {t}")).collect::<Vec<_>>().join("\n"),
        ),
        Format::Json => {
            let key = if a.k.is_some() { "k" } else { "grading" };
            let traces: Vec<Value> = rows
                .iter()
                .map(|(_, g, t)| json!({key: g, "terms": t.len(), "value": t.to_string()}))
                .collect();
            Doc::Json(document("traces", json!({"degrees": system.degrees(), "traces": traces})))
        }
    })
}

fn cmd_schur(a: SchurArgs) -> CliResult<Doc> {
    let target = match (a.k, a.target) {
        (Some(k), None) => vec![k],
        (None, Some(t)) if !t.is_empty() => t,
        _ => return Err(CliError::Input("give --k or --target".into())),
    };
    let args = if target.len() == 1 {
        (1..=target[0]).map(|i| (vec![i], MPoly::var(&Symbol::t(&[i])))).collect()
    } else {
        symbolic_args(&target)
    };
    let p = multi_schur(&target, &args, a.method.into())?;
    Ok(match a.format {
        Format::Text => Doc::Text(p.to_string()),
        Format::Json => Doc::Json(document(
            "schur",
            json!({"target": target, "terms": p.len(), "value": p.to_string()}),
        )),
    })
}

fn parse_matrix(text: &str) -> CliResult<Vec<Vec<MPoly>>> {
    let rows: Vec<Vec<Value>> =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("matrix must be a JSON array of rows: {e}")))?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input("matrix must be square and non-empty".into()));
    }
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.parse::<MPoly>()?),
                    Value::Number(x) if x.is_i64() => Ok(MPoly::from_int(x.as_i64().expect("checked"))),
                    other => Err(CliError::Input(format!("matrix entry {other} is not an integer or string"))),
                })
                .collect()
        })
        .collect()
}

fn cmd_det(a: DetArgs) -> CliResult<Doc> {
    let m = match (a.n, &a.matrix) {
        (Some(n), None) => coefficient_matrix(&PolySystem::symbolic(&vec![1; n as usize])?)?,
        (None, Some(text)) => parse_matrix(text)?,
        _ => return Err(CliError::Input("give --n or --matrix".into())),
    };
    let d = match a.method {
        DetMethod::Traces => determinant_special(&m)?,
        DetMethod::Leibniz => leibniz_determinant(&m)?,
        DetMethod::Minors => minor_expansion_determinant(&m)?,
    };
    Ok(match a.format {
        Format::Text => Doc::Text(d.to_string()),
        Format::Json => Doc::Json(document("det", json!({"n": m.len(), "terms": d.len(), "value": d.to_string()}))),
    })
}

fn cmd_probe(a: ProbeArgs) -> CliResult<Doc> {
    let system = load_system(&a.system)?;
    if !system.is_numeric() {
        return Err(CliError::Input("probe needs a numeric system".into()));
    }
    let engine = TraceEngine::new(system.degrees(), a.engine.budget)?;
    let opts = ResultantOptions { budget: a.engine.budget, jobs: a.engine.jobs as usize, ..Default::default() };
    let r = tracelog::resultant::resultant_using(&engine, &system, &opts)?;
    let value = r.value.as_constant().ok_or_else(|| Error::SymbolicCoefficient(r.value.to_string()))?;
    let text = rational_to_string(&value);
    Ok(match a.format {
        Format::Text => Doc::Text(text),
        Format::Json => {
            let zero = num_traits::Zero::is_zero(&value);
            Doc::Json(document(
                "probe",
                json!({"system": to_json_value(&system), "value": text, "vanishes": zero}),
            ))
        }
    })
}

fn cmd_stats(a: StatsArgs) -> CliResult<Doc> {
    let dd = tracelog::system::degree_data(&a.degrees)?;
    let mode: GradingMode = a.mode.into();
    let gradings = tracelog::resultant::required_gradings(&a.degrees, mode)?;
    let estimates: BTreeMap<Vec<u32>, u128> =
        gradings.iter().map(|g| (g.clone(), candidate_estimate(&a.degrees, g))).collect();
    let total: u128 = estimates.values().fold(0u128, |acc, &e| acc.saturating_add(e));
    let (worst, worst_g) = estimates
        .iter()
        .map(|(g, &e)| (e, g.clone()))
        .max_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)))
        .unwrap_or_default();
    let within = worst <= a.engine.budget;
    Ok(match a.format {
        Format::Text => Doc::Text(format!(
            "degrees: {:?}\nd_vec: {:?}\nd_total: {}\nmode: {}\ngradings: {}\ncandidates_total: {total}\nmax_candidates: {worst} at {:?}\nwithin_budget: {within}",
            a.degrees,
            dd.d_vec,
            dd.d_total,
            mode_name(mode),
            gradings.len(),
            worst_g,
        )),
        Format::Json => Doc::Json(document(
            "stats",
            json!({
                "degrees": a.degrees,
                "degree_data": dd,
                "mode": mode,
                "gradings": gradings.len(),
                "candidates_total": total.to_string(),
                "max_candidates": worst.to_string(),
                "max_candidates_grading": worst_g,
                "budget": a.engine.budget.to_string(),
                "within_budget": within,
            }),
        )),
    })
}
