//! `lebesgue`: node sets, Lebesgue constant sweeps, growth fits, collocation
//! residuals and the invariant suite.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 numeric failure.

mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use jacobi_lebesgue::checks::{run_checks, CheckOptions};
use jacobi_lebesgue::{
    build_point_set, collocation_residual, erdos_lower_bound, fit_model, sweep_constants,
    CollocationProblem, FitModel, PointSetFamily,
};
use output::{csv_document, json_document, svg_chart, Cell, Series, Table};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "lebesgue", version, about = "Lebesgue constants of Gauss and Radau point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a point set (index, tau, theta).
    Nodes {
        #[arg(long, value_parser = parse_family)]
        family: PointSetFamily,
        /// Number of quadrature points.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lebesgue constants over a range of N, optionally with a growth fit.
    Sweep {
        #[arg(long, value_parser = parse_family)]
        family: PointSetFamily,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum)]
        fit: Option<FitArg>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Collocation residual of a built-in problem for each N.
    Residual {
        #[arg(long)]
        problem: String,
        #[arg(long, value_parser = parse_family)]
        family: PointSetFamily,
        /// Comma-separated list of N.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the invariant suite for 2 <= N <= max-n.
    Check {
        #[arg(long)]
        max_n: usize,
        /// Shift the smallest Radau zero (fault injection for testing).
        #[arg(long, hide = true, allow_hyphen_values = true)]
        tamper: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; `-` writes to standard output.
    #[arg(long, default_value = "-")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FitArg {
    Sqrt,
    Log,
}

impl From<FitArg> for FitModel {
    fn from(f: FitArg) -> Self {
        match f {
            FitArg::Sqrt => FitModel::SqrtAffine,
            FitArg::Log => FitModel::LogAffine,
        }
    }
}

fn parse_family(s: &str) -> Result<PointSetFamily, String> {
    match s.parse::<PointSetFamily>() {
        Ok(PointSetFamily::Explicit) | Err(_) => Err(format!(
            "expected one of: {}",
            PointSetFamily::BUILDABLE.map(|f| f.name()).join(", ")
        )),
        Ok(f) => Ok(f),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numeric(String),
    CheckFailed,
}

impl From<jacobi_lebesgue::Error> for CliError {
    fn from(e: jacobi_lebesgue::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Nodes { family, n, out } => cmd_nodes(family, n, &out),
        Command::Sweep { family, from, to, fit, out } => cmd_sweep(family, from, to, fit, &out),
        Command::Residual { problem, family, n, out } => cmd_residual(&problem, family, &n, &out),
        Command::Check { max_n, tamper, out } => cmd_check(max_n, tamper, &out),
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("cannot write {}: {e}", out.output.display()));
    if out.output.as_os_str() == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes()).map_err(io)?;
        stdout.flush().map_err(io)
    } else {
        fs::write(&out.output, text).map_err(io)
    }
}

fn no_svg(out: &OutputArgs, command: &str) -> Result<(), CliError> {
    if out.format == Format::Svg {
        return Err(CliError::Usage(format!("svg output is only available for sweep, not {command}")));
    }
    Ok(())
}

fn cmd_nodes(family: PointSetFamily, n: usize, out: &OutputArgs) -> Result<(), CliError> {
    no_svg(out, "nodes")?;
    let set = build_point_set(family, n)?;
    let mut table = Table::new(&["index", "tau", "theta"]);
    for (i, (&t, &th)) in set.nodes().iter().zip(set.thetas()).enumerate() {
        table.push(vec![Cell::Int(i + 1), Cell::Float(t), Cell::Float(th)]);
    }
    let text = match out.format {
        Format::Csv => csv_document(&table, &[]),
        _ => json_document(
            json!({ "command": "nodes", "family": family.name(), "n": n, "tool_version": VERSION }),
            &table,
            vec![],
        ),
    };
    emit(out, &text)
}

fn cmd_sweep(
    family: PointSetFamily,
    from: usize,
    to: usize,
    fit: Option<FitArg>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    if from < 2 || from > to || to > 200 {
        return Err(CliError::Usage(format!("need 2 <= from <= to <= 200, got {from}..{to}")));
    }
    let sweep = sweep_constants(family, from, to)?;
    let fit = fit.map(|m| fit_model(&sweep, m.into())).transpose()?;

    let mut table =
        Table::new(&["N", "num_points", "lambda", "argmax_tau", "erdos_bound", "gap"]);
    for r in &sweep.rows {
        let floor = erdos_lower_bound(r.num_points);
        table.push(vec![
            Cell::Int(r.n),
            Cell::Int(r.num_points),
            Cell::Float(r.lambda),
            Cell::Float(r.argmax_tau),
            Cell::Float(floor),
            Cell::Float(r.lambda - floor),
        ]);
    }
    let mut fit_table = Table::new(&["model", "a", "b", "rms_residual", "max_rel_deviation"]);
    if let Some(f) = &fit {
        fit_table.push(vec![
            Cell::Text(f.model.to_string()),
            Cell::Float(f.a),
            Cell::Float(f.b),
            Cell::Float(f.rms_residual),
            Cell::Float(f.max_rel_deviation),
        ]);
    }

    let text = match out.format {
        Format::Csv if fit.is_some() => csv_document(&table, &[&fit_table]),
        Format::Csv => csv_document(&table, &[]),
        Format::Json => {
            let meta = json!({
                "command": "sweep",
                "family": family.name(),
                "from": from,
                "to": to,
                "tool_version": VERSION,
            });
            let extra = match &fit_table.to_json_rows() {
                serde_json::Value::Array(v) if !v.is_empty() => vec![("fit", v[0].clone())],
                _ => vec![],
            };
            json_document(meta, &table, extra)
        }
        Format::Svg => {
            let lambda: Vec<(f64, f64)> = sweep.rows.iter().map(|r| (r.n as f64, r.lambda)).collect();
            let floor: Vec<(f64, f64)> =
                sweep.rows.iter().map(|r| (r.n as f64, erdos_lower_bound(r.num_points))).collect();
            let mut series = vec![Series { label: "Lebesgue constant", color: "black", points: lambda }];
            let fit_label;
            if let Some(f) = &fit {
                fit_label = format!("{} fit: a = {:.4}, b = {:.4}", f.model, f.a, f.b);
                let points = sweep.rows.iter().map(|r| (r.n as f64, f.predict(r.n as f64))).collect();
                series.push(Series { label: &fit_label, color: "#d62728", points });
            }
            series.push(Series { label: "Erdos lower bound", color: "#1f77b4", points: floor });
            svg_chart(&format!("Lebesgue constants: {}", family.name()), "N", "Lambda", &series)
        }
    };
    emit(out, &text)
}

fn cmd_residual(
    problem: &str,
    family: PointSetFamily,
    ns: &[usize],
    out: &OutputArgs,
) -> Result<(), CliError> {
    no_svg(out, "residual")?;
    let problem = CollocationProblem::by_name(problem)?;
    let mut table = Table::new(&["N", "r0", "sup_norm"]);
    for &n in ns {
        let r = collocation_residual(&problem, family, n).map_err(|e| match e.is_numeric() {
            true => CliError::Numeric(format!("N = {n}: {e}")),
            false => CliError::Usage(format!("N = {n}: {e}")),
        })?;
        table.push(vec![Cell::Int(n), Cell::Float(r.r0), Cell::Float(r.sup_norm)]);
    }
    let text = match out.format {
        Format::Csv => csv_document(&table, &[]),
        _ => json_document(
            json!({
                "command": "residual",
                "problem": problem.name(),
                "family": family.name(),
                "tool_version": VERSION,
            }),
            &table,
            vec![],
        ),
    };
    emit(out, &text)
}

fn cmd_check(max_n: usize, tamper: Option<f64>, out: &OutputArgs) -> Result<(), CliError> {
    no_svg(out, "check")?;
    let opts = CheckOptions { tamper, ..CheckOptions::new(max_n) };
    let report = run_checks(&opts)?;
    let mut table = Table::new(&["check", "passed", "worst_margin", "detail"]);
    for o in &report.outcomes {
        table.push(vec![
            Cell::Text(o.name.to_string()),
            Cell::Bool(o.passed),
            Cell::Float(o.worst_margin),
            Cell::Text(o.detail.clone()),
        ]);
    }
    let text = match out.format {
        Format::Csv => csv_document(&table, &[]),
        _ => json_document(
            json!({ "command": "check", "max_n": max_n, "tool_version": VERSION }),
            &table,
            vec![("passed", json!(report.passed()))],
        ),
    };
    emit(out, &text)?;
    for o in report.outcomes.iter().filter(|o| !o.passed) {
        eprintln!("check failed: {} (margin {:e} at {})", o.name, o.worst_margin, o.detail);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}
