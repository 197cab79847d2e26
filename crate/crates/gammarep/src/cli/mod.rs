//! Command-line front end.
//!
//! Work is fanned out over a rayon pool and collected by input index, so the
//! rendered output depends only on the configuration.

pub mod args;
pub mod output;
pub mod registry;

use std::io::Write;
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::report::IdentityReport;
use crate::suites::{suite_tasks, Suite, SuiteOpts};
use args::{axis_flag, Axis, Cli, Command, Params, RunConfig};
use output::{render, summarize, Cell, Record};
use registry::{base_ctrl, evaluate, knob, Knob};

/// Exit status: every requested check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status: at least one identity or tolerance check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status: usage or domain error.
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv`, runs the command and writes its output; returns the exit status.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let cfg = match args::validate(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match run(&cfg) {
        Ok((text, status)) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            status
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Executes a validated configuration; returns the rendered output and the
/// exit status.
pub fn run(cfg: &RunConfig) -> Result<(String, i32)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| domain(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| match cfg.command {
        Command::Identities => identity_rows(cfg),
        Command::Bench => bench_rows(cfg),
        _ => eval_rows(cfg),
    })?;
    let summary = summarize(&rows);
    let status = if summary.fail_count > 0 { EXIT_FAIL } else { EXIT_PASS };
    Ok((render(cfg, &rows), status))
}

fn fixed_params(cfg: &RunConfig) -> String {
    let p = &cfg.params;
    let mut parts = Vec::new();
    if let Some(c) = &cfg.case {
        parts.push(format!("case={c}"));
    }
    let named = [
        ("a", p.a, Axis::A),
        ("alpha", p.alpha, Axis::Alpha),
        ("beta", p.beta, Axis::Beta),
        ("k", p.k, Axis::K),
        ("q", p.q, Axis::None),
        ("p", p.p, Axis::P),
        ("z", p.z, Axis::None),
        ("n", p.n, Axis::N),
        ("r", p.r, Axis::None),
    ];
    for (name, v, axis) in named {
        if let Some(v) = v {
            if axis != cfg.axis || axis == Axis::None {
                parts.push(format!("{name}={v}"));
            }
        }
    }
    parts.join(" ")
}

fn point(cfg: &RunConfig, x: f64) -> Params {
    let mut p = cfg.params;
    cfg.axis.set(&mut p, x);
    p
}

fn x_cell(cfg: &RunConfig, x: f64) -> Cell {
    if cfg.axis == Axis::None {
        Cell::Empty
    } else {
        Cell::Real(x)
    }
}

fn eval_rows(cfg: &RunConfig) -> Result<Vec<Record>> {
    let f = cfg.function.ok_or_else(|| domain("missing --fn"))?;
    let jobs: Vec<(f64, &str)> = cfg.grid.iter().flat_map(|&x| cfg.reps.iter().map(move |r| (x, r.as_str()))).collect();
    let fixed = fixed_params(cfg);
    let rows: Vec<Result<Record>> = jobs
        .par_iter()
        .map(|&(x, rep)| {
            let ctrl = cfg.ctrl(base_ctrl(f, rep));
            let started = Instant::now();
            let e = evaluate(f, rep, cfg.case.as_deref(), &point(cfg, x), &ctrl)?;
            let elapsed = started.elapsed().as_secs_f64();
            let tol = cfg.tol.or(e.tol);
            let residual = e.reference.map(|r| (e.result.value - r).abs());
            let pass = match (residual, tol) {
                (Some(r), Some(t)) => Some(r <= t),
                _ => None,
            };
            let mut row: Record = vec![
                ("fn", f.name().into()),
                ("rep", rep.into()),
                ("arg", axis_flag(cfg.axis).into()),
                ("x", x_cell(cfg, x)),
                ("params", fixed.clone().into()),
                ("value", e.result.value.into()),
                ("reference", e.reference.into()),
                ("residual", residual.into()),
                ("tol", tol.into()),
                ("pass", pass.into()),
            ];
            if cfg.command != Command::Table {
                row.extend([
                    ("err_est", e.result.err_est.into()),
                    ("terms_used", e.result.terms_used.into()),
                    ("nodes_used", e.result.nodes_used.into()),
                    ("converged", e.result.converged.into()),
                ]);
            }
            if cfg.timing {
                row.push(("wall_time", elapsed.into()));
            }
            Ok(row)
        })
        .collect();
    rows.into_iter().collect()
}

fn bench_rows(cfg: &RunConfig) -> Result<Vec<Record>> {
    let f = cfg.function.ok_or_else(|| domain("missing --fn"))?;
    let mut jobs = Vec::new();
    for &x in &cfg.grid {
        for rep in &cfg.reps {
            let (k, settings) = knob(f, rep);
            for s in settings {
                if k == Knob::MaxTerms && cfg.max_terms.is_some_and(|m| s > m) {
                    continue;
                }
                jobs.push((x, rep.as_str(), k, s));
            }
        }
    }
    let fixed = fixed_params(cfg);
    let rows: Vec<Result<Record>> = jobs
        .par_iter()
        .map(|&(x, rep, k, s)| {
            let mut ctrl = base_ctrl(f, rep);
            if let Some(t) = cfg.tail_order {
                ctrl.tail_order = t;
            }
            match k {
                Knob::MaxTerms => ctrl.max_terms = s,
                Knob::QuadLevels => ctrl.quad_levels = s as u32,
                Knob::Fixed => {}
            }
            let started = Instant::now();
            let e = evaluate(f, rep, cfg.case.as_deref(), &point(cfg, x), &ctrl)?;
            let elapsed = started.elapsed().as_secs_f64();
            let mut row: Record = vec![
                ("fn", f.name().into()),
                ("rep", rep.into()),
                ("arg", axis_flag(cfg.axis).into()),
                ("x", x_cell(cfg, x)),
                ("params", fixed.clone().into()),
                ("knob", k.name().into()),
                ("setting", (s as u64).into()),
                ("value", e.result.value.into()),
                ("abs_error", e.reference.map(|r| (e.result.value - r).abs()).into()),
                ("err_est", e.result.err_est.into()),
                ("terms_used", e.result.terms_used.into()),
                ("nodes_used", e.result.nodes_used.into()),
            ];
            if cfg.timing {
                row.push(("wall_time", elapsed.into()));
            }
            Ok(row)
        })
        .collect();
    rows.into_iter().collect()
}

/// Row layout of an identity report.
pub fn report_record(suite: Suite, r: &IdentityReport) -> Record {
    vec![
        ("suite", suite.name().into()),
        ("identity", r.identity.clone().into()),
        ("case", r.case.map(|c| c.to_string()).into()),
        ("beta", r.beta.into()),
        ("params", r.params.clone().into()),
        ("lhs", r.lhs.value.into()),
        ("rhs", r.rhs.value.into()),
        ("residual", r.residual.into()),
        ("tol", r.tol.into()),
        ("pass", r.pass.into()),
        ("lhs_err", r.lhs.err_est.into()),
        ("rhs_err", r.rhs.err_est.into()),
    ]
}

fn identity_rows(cfg: &RunConfig) -> Result<Vec<Record>> {
    let suite = cfg.suite.ok_or_else(|| domain("missing --suite"))?;
    let mut ctrl = crate::numkernel::Ctrl::default();
    ctrl = cfg.ctrl(ctrl);
    let opts = SuiteOpts { ctrl, tol: cfg.tol, beta: cfg.params.beta };
    let selected: Vec<Suite> = if suite == Suite::All {
        Suite::ALL.into_iter().filter(|s| *s != Suite::All).collect()
    } else {
        vec![suite]
    };
    let tasks: Vec<(Suite, crate::suites::Task)> =
        selected.into_iter().flat_map(|s| suite_tasks(s, &opts).into_iter().map(move |t| (s, t))).collect();
    let chunks: Vec<Result<Vec<Record>>> = tasks
        .par_iter()
        .map(|(s, t)| {
            Ok(t()?
                .into_iter()
                .map(|r| match cfg.tol {
                    // Ordering and bound rows carry no tolerance and keep their verdict.
                    Some(tol) if r.tol > 0.0 => r.with_tol(tol),
                    _ => r,
                })
                .map(|r| report_record(*s, &r))
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for c in chunks {
        rows.extend(c?);
    }
    Ok(rows)
}

/// Entry point of the binary.
pub fn main() -> ! {
    let code = main_with(std::env::args_os());
    std::process::exit(code)
}
