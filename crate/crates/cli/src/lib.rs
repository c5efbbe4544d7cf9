//! Command-line front end: benchmark registry, expression-backed problem
//! files, table/CSV/JSON emission.

pub mod bench;
pub mod expr;
pub mod problem;

use clap::{Parser, ValueEnum};
use fide_core::{convergence_sweep, ide_residual, solve, Problem, SolveOptions, SolveResult};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fide",
    about = "Spectral collocation solver for fractional Fredholm integro-differential equations",
    disable_help_subcommand = true
)]
pub struct Args {
    /// Built-in benchmark problem id (1..=5)
    #[arg(long, value_name = "ID", conflicts_with = "problem")]
    pub example: Option<usize>,

    /// Problem-definition file (key = expression lines)
    #[arg(long, value_name = "PATH")]
    pub problem: Option<PathBuf>,

    /// Highest basis index; the discretization carries N+1 unknowns
    #[arg(long = "N", value_name = "INT")]
    pub n: Option<usize>,

    /// Basis exponent nu in (0, 1]; defaults to alpha
    #[arg(long)]
    pub nu: Option<f64>,

    /// Override the fractional order (order studies on a fixed g)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Newton tolerance on the residual max-norm
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,

    /// Newton iteration cap
    #[arg(long = "max-iter", default_value_t = 50)]
    pub max_iter: usize,

    /// Fredholm quadrature order; defaults to (N+1) * oversample
    #[arg(long = "quad-order", value_name = "INT")]
    pub quad_order: Option<usize>,

    /// Multiplier on the default Fredholm quadrature order
    #[arg(long, value_name = "INT")]
    pub oversample: Option<usize>,

    /// Comma-separated evaluation points in [0, 1]
    #[arg(long, value_name = "LIST")]
    pub points: Option<String>,

    /// Degree sweep start:end:step (uses --nu for the exponent)
    #[arg(long, value_name = "START:END:STEP")]
    pub sweep: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Write x,exact,approx triples at 201 uniform points
    #[arg(long = "emit-plot-data", value_name = "PATH")]
    pub emit_plot_data: Option<PathBuf>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;

type ExactFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

struct Job {
    problem: Problem,
    exact: Option<ExactFn>,
    n: usize,
    nu: f64,
    oversample: usize,
    label: String,
}

/// Entry point shared by the binary and the tests. Returns the process exit
/// code and writes output to `stdout`.
pub fn run<W: Write>(args: Args, stdout: &mut W) -> i32 {
    match run_inner(args, stdout) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn run_inner<W: Write>(args: Args, stdout: &mut W) -> Result<i32, String> {
    let job = prepare_job(&args)?;
    let mut emit = |text: String| -> Result<(), String> {
        match &args.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
        }
    };

    if let Some(spec) = &args.sweep {
        let (ns, nu) = parse_sweep(spec, job.nu)?;
        let mut base = SolveOptions::new(ns[0]);
        base.tol = args.tol;
        base.max_iter = args.max_iter;
        base.oversample = args.oversample.unwrap_or(job.oversample);
        if let Some(q) = args.quad_order {
            base.quad_order = Some(q);
        }
        let exact = job.exact.clone().ok_or_else(|| {
            "a sweep needs a reference solution (built-in benchmark or 'exact = ...')".to_string()
        })?;
        let cells = convergence_sweep(&job.problem, move |x| exact(x), &ns, &[nu], &base);
        let all_converged = cells
            .iter()
            .all(|c| c.outcome.as_ref().map(|e| e.converged).unwrap_or(false));
        emit(render_sweep(&cells, args.format, &job.label))?;
        return Ok(if all_converged { EXIT_OK } else { EXIT_NO_CONVERGENCE });
    }

    let mut opts = SolveOptions::new(job.n).with_nu(job.nu);
    opts.tol = args.tol;
    opts.max_iter = args.max_iter;
    opts.oversample = args.oversample.unwrap_or(job.oversample);
    if let Some(q) = args.quad_order {
        opts.quad_order = Some(q);
    }
    let result = solve(&job.problem, &opts).map_err(|e| e.to_string())?;
    if result.solvability == Some(false) {
        eprintln!(
            "warning: L_f * M_k >= Gamma(alpha + 1); uniqueness is not guaranteed, proceeding anyway"
        );
    }

    let points = match &args.points {
        Some(list) => parse_points(list)?,
        None => vec![0.1, 0.3, 0.5, 0.7, 0.9],
    };
    let report = build_report(&job, &result, &points);

    if let Some(path) = &args.emit_plot_data {
        let mut text = String::from("x,exact,approx\n");
        for i in 0..201 {
            let x = i as f64 / 200.0;
            let approx = result.solution.eval(x);
            match &job.exact {
                Some(e) => text.push_str(&format!("{x},{:.17e},{approx:.17e}\n", e(x))),
                None => text.push_str(&format!("{x},,{approx:.17e}\n")),
            }
        }
        std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    let rendered = match args.format {
        Format::Table => render_table(&job, &report),
        Format::Csv => render_point_csv(&report),
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n",
    };
    emit(rendered)?;
    Ok(if result.converged { EXIT_OK } else { EXIT_NO_CONVERGENCE })
}

fn prepare_job(args: &Args) -> Result<Job, String> {
    match (&args.example, &args.problem) {
        (Some(id), None) => {
            let bench = bench::benchmark(*id)
                .ok_or_else(|| format!("no built-in problem {id}; valid ids are 1..=5"))?;
            let problem = bench.problem(args.alpha);
            let nu = args
                .nu
                .or(args.alpha)
                .unwrap_or(bench.default_nu);
            Ok(Job {
                problem,
                exact: Some(bench.exact()),
                n: args.n.unwrap_or(bench.default_n),
                nu,
                oversample: bench.default_oversample,
                label: format!("benchmark {id}: {}", bench.title),
            })
        }
        (None, Some(path)) => {
            let mut loaded = problem::load_problem(path).map_err(|e| e.to_string())?;
            if let Some(alpha) = args.alpha {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    return Err(format!("alpha must lie in (0, 1], got {alpha}"));
                }
                loaded.problem.alpha = alpha;
            }
            let nu = args.nu.or(loaded.nu).unwrap_or(loaded.problem.alpha);
            Ok(Job {
                problem: loaded.problem,
                exact: loaded.exact,
                n: args.n.unwrap_or(8),
                nu,
                oversample: 1,
                label: path.display().to_string(),
            })
        }
        _ => Err("exactly one of --example or --problem is required".into()),
    }
}

fn parse_points(list: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| format!("bad point '{part}' in --points"))?;
        if !(0.0..=1.0).contains(&v) {
            return Err(format!("point {v} outside [0, 1]"));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("--points needs at least one value".into());
    }
    Ok(out)
}

fn parse_sweep(spec: &str, nu: f64) -> Result<(Vec<usize>, f64), String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err("--sweep expects start:end:step".into());
    }
    let parse = |s: &str| -> Result<usize, String> {
        s.trim().parse().map_err(|_| format!("bad sweep component '{s}'"))
    };
    let (start, end, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step == 0 || end < start {
        return Err("--sweep needs step >= 1 and end >= start".into());
    }
    let ns: Vec<usize> = (start..=end).step_by(step).collect();
    Ok((ns, nu))
}

#[derive(Serialize)]
struct PointRow {
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<f64>,
    approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_error: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    label: String,
    n: usize,
    nu: f64,
    alpha: f64,
    converged: bool,
    iterations: usize,
    residual_norm: f64,
    residual_history: Vec<f64>,
    w: Vec<f64>,
    solution_coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l2_error_uniform_101: Option<f64>,
    points: Vec<PointRow>,
}

fn build_report(job: &Job, result: &SolveResult, points: &[f64]) -> Report {
    let rows: Vec<PointRow> = points
        .iter()
        .map(|&x| {
            let approx = result.solution.eval(x);
            let exact = job.exact.as_ref().map(|e| e(x));
            PointRow { x, exact, approx, abs_error: exact.map(|e| (approx - e).abs()) }
        })
        .collect();
    let l2 = job
        .exact
        .as_ref()
        .map(|e| fide_core::l2_error(&result.solution, |x| e(x), &fide_core::default_sample()));
    Report {
        label: job.label.clone(),
        n: job.n,
        nu: job.nu,
        alpha: job.problem.alpha,
        converged: result.converged,
        iterations: result.iterations,
        residual_norm: result.residual_norm,
        residual_history: result.residual_history.clone(),
        w: result.w.clone(),
        solution_coeffs: result.solution.coeffs.clone(),
        l2_error_uniform_101: l2,
        points: rows,
    }
}

fn render_table(job: &Job, report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", report.label));
    out.push_str(&format!("N = {}, nu = {}, alpha = {}\n", report.n, report.nu, report.alpha));
    out.push_str(&format!(
        "Newton: {} iterations, residual max-norm {:.3e}, {}\n",
        report.iterations,
        report.residual_norm,
        if report.converged { "converged" } else { "NOT converged" }
    ));
    out.push_str("residual history:");
    for (i, r) in report.residual_history.iter().enumerate() {
        out.push_str(&format!("  [{i}] {r:.6e}"));
    }
    out.push('\n');
    out.push_str("W coefficients:\n");
    for (i, w) in report.w.iter().enumerate() {
        out.push_str(&format!("  w[{i}] = {w:.16e}\n"));
    }
    if let Some(l2) = report.l2_error_uniform_101 {
        out.push_str(&format!("L2 error (101 uniform points): {l2:.6e}\n"));
    }
    if !report.points.is_empty() {
        match job.exact {
            Some(_) => {
                out.push_str(&format!(
                    "{:>8}  {:>24}  {:>24}  {:>12}\n",
                    "x", "exact", "approx", "abs_error"
                ));
                for row in &report.points {
                    out.push_str(&format!(
                        "{:>8}  {:>24.16e}  {:>24.16e}  {:>12.3e}\n",
                        row.x,
                        row.exact.unwrap(),
                        row.approx,
                        row.abs_error.unwrap()
                    ));
                }
            }
            None => {
                out.push_str(&format!("{:>8}  {:>24}\n", "x", "approx"));
                for row in &report.points {
                    out.push_str(&format!("{:>8}  {:>24.16e}\n", row.x, row.approx));
                }
            }
        }
    }
    out
}

fn render_point_csv(report: &Report) -> String {
    let mut out = String::from("x,exact,approx,abs_error\n");
    for row in &report.points {
        match (row.exact, row.abs_error) {
            (Some(e), Some(a)) => {
                out.push_str(&format!("{},{e:.17e},{:.17e},{a:.17e}\n", row.x, row.approx))
            }
            _ => out.push_str(&format!("{},,{:.17e},\n", row.x, row.approx)),
        }
    }
    out
}

fn render_sweep(cells: &[fide_core::SweepCell], format: Format, label: &str) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("N,nu,l2_error,iterations,seconds\n");
            for cell in cells {
                match &cell.outcome {
                    Ok(e) => out.push_str(&format!(
                        "{},{},{:.17e},{},{:.3}\n",
                        cell.n, cell.nu, e.l2_error, e.iterations, e.seconds
                    )),
                    Err(msg) => out.push_str(&format!("{},{},error: {msg},,\n", cell.n, cell.nu)),
                }
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Cell<'a> {
                n: usize,
                nu: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                l2_error: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                iterations: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                seconds: Option<f64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                error: Option<&'a str>,
            }
            let rows: Vec<Cell> = cells
                .iter()
                .map(|c| match &c.outcome {
                    Ok(e) => Cell {
                        n: c.n,
                        nu: c.nu,
                        l2_error: Some(e.l2_error),
                        iterations: Some(e.iterations),
                        seconds: Some(e.seconds),
                        error: None,
                    },
                    Err(msg) => Cell {
                        n: c.n,
                        nu: c.nu,
                        l2_error: None,
                        iterations: None,
                        seconds: None,
                        error: Some(msg),
                    },
                })
                .collect();
            serde_json::to_string_pretty(&rows).unwrap() + "\n"
        }
        Format::Table => {
            let mut out = format!("degree sweep: {label}\n");
            out.push_str(&format!(
                "{:>4}  {:>6}  {:>14}  {:>10}  {:>8}\n",
                "N", "nu", "l2_error", "iters", "seconds"
            ));
            for cell in cells {
                match &cell.outcome {
                    Ok(e) => out.push_str(&format!(
                        "{:>4}  {:>6}  {:>14.6e}  {:>10}  {:>8.3}\n",
                        cell.n, cell.nu, e.l2_error, e.iterations, e.seconds
                    )),
                    Err(msg) => {
                        out.push_str(&format!("{:>4}  {:>6}  failed: {msg}\n", cell.n, cell.nu))
                    }
                }
            }
            out
        }
    }
}

/// Pointwise defect of the solved equation; exposed for diagnostics.
pub fn equation_defect(
    result: &SolveResult,
    problem: &Problem,
    x: f64,
    quad_order: usize,
) -> Result<f64, String> {
    ide_residual(&result.solution, problem, x, quad_order).map_err(|e| e.to_string())
}
