//! End-to-end pipeline: reduction, warm start, solve, extraction, validation
//! and coverage paths.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use super::{oracle_optimum, solve_external, SolveError, SolverConfig, SolverStatus};
use crate::model::{apply_warmstart, build_model, extract_solution, MmrtcSolution, ModelError, ModelOptions, ModelStats};
use crate::reduction::{build_reduction, Reduction, ReductionError, ReductionParams};
use crate::stc::{build_plan, CoveragePlan, StcError};
use crate::terrain::{build_graph, decompose, root_vertices, Instance, VertexSet};
use crate::validate::{gap_percent, validate_solution, ValidationReport};
use crate::warmstart::{best_warmstart, WarmstartError};

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("reduction: {0}")]
    Reduction(#[from] ReductionError),
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("warm start: {0}")]
    Warmstart(#[from] WarmstartError),
    #[error("solver: {0}")]
    Solve(#[from] SolveError),
    #[error("solution failed validation:\n{}", .0.to_text())]
    Validation(Box<ValidationReport>),
    #[error("coverage: {0}")]
    Coverage(#[from] StcError),
}

#[derive(Clone, Debug)]
pub enum Backend {
    External(SolverConfig),
    /// Exhaustive optimum of the unreduced problem.
    Oracle { limit: usize },
    /// MST warm start on the residual graphs, no solver.
    WarmStartOnly,
}

impl Backend {
    pub fn label(&self) -> &'static str {
        match self {
            Backend::External(_) => "mip",
            Backend::Oracle { .. } => "oracle",
            Backend::WarmStartOnly => "warm-start",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanOptions {
    pub params: ReductionParams,
    pub backend: Backend,
    pub warmstart: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub reduction_s: f64,
    pub model_s: f64,
    pub solve_s: f64,
    pub total_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanStats {
    pub heuristic: String,
    pub backend: String,
    pub unreduced: ModelStats,
    pub reduced: ModelStats,
    /// Share of variables removed by the reduction, in percent.
    pub removed_pct: f64,
    pub status: SolverStatus,
    pub makespan: f64,
    pub coverage_time: f64,
    pub bound: Option<f64>,
    pub gap_pct: Option<f64>,
    pub warm_start_makespan: Option<f64>,
    pub timings: Timings,
}

#[derive(Clone, Debug)]
pub struct PlanResult {
    pub solution: MmrtcSolution,
    pub coverage: CoveragePlan,
    pub reduction: Reduction,
    pub validation: ValidationReport,
    pub stats: PlanStats,
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

pub fn plan(inst: &Instance, opts: &PlanOptions) -> Result<PlanResult, PlanError> {
    let started = Instant::now();
    let g = build_graph(inst);
    let roots = root_vertices(inst, &g);
    let d = decompose(&g);

    let t = Instant::now();
    let reduction = build_reduction(&g, &roots, opts.params)?;
    let reduction_s = secs(t.elapsed());

    let t = Instant::now();
    let full = vec![VertexSet::full(g.vertex_count()); roots.len()];
    let unreduced = build_model(&g, &full, &roots, ModelOptions::default())?.stats();
    let model = build_model(&g, &reduction.residuals, &roots, ModelOptions::default())?;
    let reduced = model.stats();
    let model_s = secs(t.elapsed());

    let need_warm = matches!(opts.backend, Backend::WarmStartOnly) || (opts.warmstart && matches!(opts.backend, Backend::External(_)));
    let warm = if need_warm { Some(best_warmstart(&g, &reduction.residuals, &roots)?) } else { None };

    let t = Instant::now();
    let (solution, status, bound) = match &opts.backend {
        Backend::External(cfg) => {
            let start = warm.as_ref().map(|w| apply_warmstart(&model, w, &g)).transpose()?;
            let out = solve_external(&model, start.as_ref(), cfg)?;
            let (s, status) = match (extract_solution(&model, &out.assignment, &g), &warm) {
                (Ok(s), Some(w)) if w.makespan < s.makespan => {
                    log::warn!("solver returned {} above its warm start {}; keeping the warm start", s.makespan, w.makespan);
                    (w.clone(), SolverStatus::Feasible)
                }
                (Ok(s), _) => (s, out.status),
                (Err(e), Some(w)) => {
                    log::warn!("solver assignment unusable ({e}); keeping the warm start");
                    (w.clone(), SolverStatus::Feasible)
                }
                (Err(e), None) => return Err(e.into()),
            };
            (s, status, out.bound)
        }
        Backend::Oracle { limit } => {
            let (w, s) = oracle_optimum(&g, &roots, *limit)?;
            (s, SolverStatus::Optimal, Some(w.as_f64()))
        }
        Backend::WarmStartOnly => (warm.clone().expect("computed above"), SolverStatus::Feasible, None),
    };
    let solve_s = secs(t.elapsed());

    let validation = validate_solution(&solution, &g, &roots);
    if !validation.is_valid() {
        return Err(PlanError::Validation(Box::new(validation)));
    }
    let coverage = build_plan(&solution, &g, &d)?;
    let makespan = solution.makespan.as_f64();
    let removed_pct = if unreduced.variables == 0 {
        0.0
    } else {
        100.0 * (unreduced.variables - reduced.variables) as f64 / unreduced.variables as f64
    };
    let stats = PlanStats {
        heuristic: opts.params.label(),
        backend: opts.backend.label().to_string(),
        unreduced,
        reduced,
        removed_pct,
        status,
        makespan,
        coverage_time: coverage.coverage_time().as_f64(),
        bound,
        gap_pct: bound.map(|b| gap_percent(makespan, b)),
        warm_start_makespan: warm.as_ref().map(|w| w.makespan.as_f64()),
        timings: Timings { reduction_s, model_s, solve_s, total_s: secs(started.elapsed()) },
    };
    Ok(PlanResult { solution, coverage, reduction, validation, stats })
}

/// Candidate values probed for each heuristic.
pub const SEARCH_VALUES: [f64; 3] = [0.3, 0.6, 0.9];

/// Probe candidates with their time limits, and the final solve's limit.
pub fn search_schedule(budget: f64) -> (Vec<(ReductionParams, f64)>, f64) {
    let probe = 0.02 * budget;
    let mut probes: Vec<(ReductionParams, f64)> =
        SEARCH_VALUES.iter().map(|&alpha| (ReductionParams::Prh { alpha }, probe)).collect();
    probes.extend(SEARCH_VALUES.iter().map(|&beta| (ReductionParams::Srh { beta }, probe)));
    (probes, 0.88 * budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRecord {
    pub params: ReductionParams,
    pub bound: Option<f64>,
    pub objective: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct SearchResult {
    pub chosen: ReductionParams,
    pub probes: Vec<ProbeRecord>,
    pub result: PlanResult,
}

/// Index of the winning probe: smallest bound, else smallest objective;
/// earlier candidates win ties.
pub(crate) fn pick_probe(probes: &[ProbeRecord]) -> Option<usize> {
    let argmin = |key: &dyn Fn(&ProbeRecord) -> Option<f64>| {
        probes
            .iter()
            .enumerate()
            .filter_map(|(i, p)| key(p).map(|v| (i, v)))
            .fold(None, |acc: Option<(usize, f64)>, (i, v)| match acc {
                Some((_, best)) if best <= v => acc,
                _ => Some((i, v)),
            })
            .map(|(i, _)| i)
    };
    argmin(&|p| p.bound).or_else(|| argmin(&|p| p.objective))
}

/// Probes every candidate with 2% of `budget` seconds, then solves the winner
/// with 88% and a warm start. Without any usable probe the unreduced model is
/// solved instead.
pub fn parameter_search(inst: &Instance, cfg: &SolverConfig, budget: f64) -> Result<SearchResult, PlanError> {
    let (schedule, final_limit) = search_schedule(budget);
    let mut probes = Vec::with_capacity(schedule.len());
    for (params, limit) in schedule {
        let opts = PlanOptions { params, backend: Backend::External(cfg.with_time_limit(limit)), warmstart: true };
        let record = match plan(inst, &opts) {
            Ok(r) => ProbeRecord { params, bound: r.stats.bound, objective: Some(r.stats.makespan), error: None },
            Err(e) => {
                log::error!("probe {params} discarded: {e}");
                ProbeRecord { params, bound: None, objective: None, error: Some(e.to_string()) }
            }
        };
        probes.push(record);
    }
    let chosen = pick_probe(&probes).map_or(ReductionParams::None, |i| probes[i].params);
    let opts = PlanOptions { params: chosen, backend: Backend::External(cfg.with_time_limit(final_limit)), warmstart: true };
    let result = plan(inst, &opts)?;
    Ok(SearchResult { chosen, probes, result })
}
