//! Benchmark rows: one per (instance, method).

use std::fmt::Write as _;
use std::io;
use std::time::Instant;

use serde::Serialize;

use crate::reduction::ReductionParams;
use crate::solve::{plan, Backend, PlanOptions, SolverConfig};
use crate::terrain::Instance;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub method: String,
    pub vertices: usize,
    pub robots: usize,
    pub vars: Option<usize>,
    pub vars_reduced: Option<usize>,
    pub removed_pct: Option<f64>,
    pub makespan: Option<f64>,
    pub coverage_time: Option<f64>,
    pub gap_pct: Option<f64>,
    pub runtime_s: f64,
    pub status: String,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solver: Option<SolverConfig>,
    pub time_limit: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// MIP, MIP-PRH, MIP-SRH and the warm-start-only baseline on one instance.
/// Failures are recorded in the row and do not stop the run.
pub fn bench_instance(name: &str, inst: &Instance, cfg: &BenchConfig) -> Vec<BenchRow> {
    let external = cfg.solver.as_ref().map(|s| Backend::External(s.with_time_limit(cfg.time_limit)));
    let methods: [(String, ReductionParams, Option<Backend>); 4] = [
        ("MIP".into(), ReductionParams::None, external.clone()),
        ("MIP-PRH".into(), ReductionParams::Prh { alpha: cfg.alpha }, external.clone()),
        ("MIP-SRH".into(), ReductionParams::Srh { beta: cfg.beta }, external),
        ("warm-start".into(), ReductionParams::None, Some(Backend::WarmStartOnly)),
    ];
    let mut rows = Vec::new();
    for (method, params, backend) in methods {
        let mut row = BenchRow {
            instance: name.to_string(),
            method,
            vertices: inst.free_cell_count(),
            robots: inst.k(),
            vars: None,
            vars_reduced: None,
            removed_pct: None,
            makespan: None,
            coverage_time: None,
            gap_pct: None,
            runtime_s: 0.0,
            status: "error".into(),
            error: None,
        };
        let Some(backend) = backend else {
            row.error = Some("no solver configured".into());
            rows.push(row);
            continue;
        };
        let started = Instant::now();
        match plan(inst, &PlanOptions { params, backend, warmstart: true }) {
            Ok(r) => {
                let s = r.stats;
                row.vars = Some(s.unreduced.variables);
                row.vars_reduced = Some(s.reduced.variables);
                row.removed_pct = Some(s.removed_pct);
                row.makespan = Some(s.makespan);
                row.coverage_time = Some(s.coverage_time);
                row.gap_pct = s.gap_pct;
                row.status = format!("{:?}", s.status).to_lowercase();
            }
            Err(e) => {
                log::warn!("{name} / {}: {e}", row.method);
                row.error = Some(e.to_string());
            }
        }
        row.runtime_s = started.elapsed().as_secs_f64();
        rows.push(row);
    }
    rows
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], w: W) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    for row in rows {
        wr.serialize(row)?;
    }
    wr.flush()?;
    Ok(())
}

fn cell(v: Option<f64>, digits: usize) -> String {
    v.map_or("-".into(), |x| format!("{x:.digits$}"))
}

pub fn to_markdown(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "| instance | method | vars | reduced | removed % | makespan | coverage time | gap % | runtime s | status |\n\
         |---|---|---:|---:|---:|---:|---:|---:|---:|---|\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {:.2} | {} |",
            r.instance,
            r.method,
            r.vars.map_or("-".into(), |v| v.to_string()),
            r.vars_reduced.map_or("-".into(), |v| v.to_string()),
            cell(r.removed_pct, 1),
            cell(r.makespan, 3),
            cell(r.coverage_time, 3),
            cell(r.gap_pct, 2),
            r.runtime_s,
            r.error.as_deref().map_or(r.status.clone(), |e| format!("{}: {}", r.status, e.replace('|', "/").replace('\n', " "))),
        );
    }
    out
}
