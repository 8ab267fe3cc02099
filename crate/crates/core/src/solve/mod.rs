//! External MILP solving, the exhaustive oracle and the planning pipeline.

mod oracle;
mod parse;
mod plan;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};
use std::{fs, io, thread};

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{export_mps, MipModel, ModelError, VarAssignment, VarKind};

pub use oracle::{oracle_optimum, oracle_optimum_within, DEFAULT_ORACLE_LIMIT};
pub use parse::{parse_solution, parse_solution_file, ParsedSolution, ParserKind};
pub use plan::{
    parameter_search, plan, search_schedule, Backend, PlanError, PlanOptions, PlanResult, PlanStats, ProbeRecord,
    SearchResult, Timings, SEARCH_VALUES,
};

/// Environment variable naming the solver executable.
pub const SOLVER_ENV: &str = "MMRTC_SOLVER";

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("solver configuration: {0}")]
    Config(String),
    #[error("solver failed ({status}): {detail}")]
    SolverFailed { status: String, detail: String },
    #[error("solution file line {line}: {message}")]
    SolutionParse { line: usize, message: String },
    #[error("solver reported the model infeasible")]
    Infeasible,
    #[error("solver stopped without an integer solution")]
    Timeout,
    #[error("instance has {vertices} vertices, oracle limit is {limit}")]
    OracleLimit { vertices: usize, limit: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverStatus {
    Optimal,
    Feasible,
    Infeasible,
    Timeout,
}

/// How to run an external solver. Templates are split on whitespace and the
/// placeholders `{mps}`, `{sol}`, `{time}`, `{threads}` and `{warm}` are
/// substituted per token; `{warm}` expands to `warm_args` (with `{file}` set
/// to the warm-start file) or to nothing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub command: String,
    #[serde(default)]
    pub warm_args: Option<String>,
    pub parser: ParserKind,
    #[serde(default = "default_time_limit")]
    pub time_limit: f64,
    #[serde(default = "default_threads")]
    pub threads: usize,
    /// Regex with one capture group, matched against solver stdout.
    #[serde(default)]
    pub bound_pattern: Option<String>,
}

fn default_time_limit() -> f64 {
    60.0
}

fn default_threads() -> usize {
    1
}

impl SolverConfig {
    pub fn cbc(program: &str) -> Self {
        SolverConfig {
            command: format!("{program} {{mps}} {{warm}} sec {{time}} threads {{threads}} printingOptions all solve solu {{sol}}"),
            warm_args: Some("mips {file}".into()),
            parser: ParserKind::Cbc,
            time_limit: default_time_limit(),
            threads: default_threads(),
            bound_pattern: Some(r"Lower bound:\s*(\S+)".into()),
        }
    }

    pub fn highs(program: &str) -> Self {
        SolverConfig {
            command: format!(
                "{program} --model_file {{mps}} --time_limit {{time}} --solution_file {{sol}} --write_solution_style 0"
            ),
            warm_args: None,
            parser: ParserKind::Highs,
            time_limit: default_time_limit(),
            threads: default_threads(),
            bound_pattern: Some(r"Dual bound\s+(\S+)".into()),
        }
    }

    /// Default configuration for the executable in `MMRTC_SOLVER`, if set.
    /// A program whose file name mentions `highs` gets the HiGHS dialect,
    /// anything else the CBC one.
    pub fn from_env() -> Option<Self> {
        let program = std::env::var(SOLVER_ENV).ok().filter(|p| !p.trim().is_empty())?;
        let name = Path::new(&program).file_name().map(|n| n.to_string_lossy().to_lowercase()).unwrap_or_default();
        Some(if name.contains("highs") { Self::highs(&program) } else { Self::cbc(&program) })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, SolveError> {
        let cfg: SolverConfig = toml::from_str(text).map_err(|e| SolveError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Reads a config file; `MMRTC_SOLVER` replaces the program token.
    pub fn load(path: &Path) -> Result<Self, SolveError> {
        let mut cfg = Self::from_toml_str(&fs::read_to_string(path)?)?;
        if let Ok(program) = std::env::var(SOLVER_ENV) {
            if !program.trim().is_empty() {
                cfg.command = replace_program(&cfg.command, &program);
            }
        }
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), SolveError> {
        for ph in ["{mps}", "{sol}"] {
            if !self.command.contains(ph) {
                return Err(SolveError::Config(format!("command template lacks {ph}")));
            }
        }
        if self.command.split_whitespace().next().is_none() {
            return Err(SolveError::Config("empty command".into()));
        }
        if self.time_limit.is_nan() || self.time_limit <= 0.0 {
            return Err(SolveError::Config("time_limit must be positive".into()));
        }
        if let Some(p) = &self.bound_pattern {
            let re = Regex::new(p).map_err(|e| SolveError::Config(e.to_string()))?;
            if re.captures_len() < 2 {
                return Err(SolveError::Config("bound_pattern needs a capture group".into()));
            }
        }
        Ok(())
    }

    pub fn with_time_limit(&self, seconds: f64) -> Self {
        SolverConfig { time_limit: seconds, ..self.clone() }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn argv(&self, mps: &Path, sol: &Path, warm: Option<&Path>) -> Vec<String> {
        let sub = |tok: &str| {
            tok.replace("{mps}", &mps.to_string_lossy())
                .replace("{sol}", &sol.to_string_lossy())
                .replace("{time}", &format!("{}", self.time_limit))
                .replace("{threads}", &self.threads.to_string())
        };
        let mut out = Vec::new();
        for tok in self.command.split_whitespace() {
            if tok == "{warm}" {
                if let (Some(file), Some(args)) = (warm, &self.warm_args) {
                    out.extend(args.split_whitespace().map(|a| sub(&a.replace("{file}", &file.to_string_lossy()))));
                }
            } else {
                out.push(sub(tok));
            }
        }
        out
    }
}

fn replace_program(command: &str, program: &str) -> String {
    let rest: Vec<&str> = command.split_whitespace().skip(1).collect();
    std::iter::once(program).chain(rest).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub assignment: VarAssignment,
    /// `tau` under the returned assignment.
    pub objective: f64,
    pub reported_objective: Option<f64>,
    pub bound: Option<f64>,
    pub status: SolverStatus,
    pub wall_time: Duration,
}

impl SolveOutcome {
    /// `(objective - bound) / objective` in percent.
    pub fn gap(&self) -> Option<f64> {
        self.bound.map(|b| crate::validate::gap_percent(self.objective, b))
    }
}

/// CBC solution-file text used as a MIP start.
pub fn write_cbc_start(m: &MipModel, a: &VarAssignment) -> String {
    let mut out = format!("Optimal - objective value {}\n", m.objective(a).unwrap_or(0.0));
    for (idx, var) in m.variables().iter().enumerate() {
        if let Some(v) = a.get(&var.name) {
            let _ = writeln!(out, "{idx:>7} {:<24} {v} 0", var.name);
        }
    }
    out
}

pub fn solve_external(m: &MipModel, warm: Option<&VarAssignment>, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    cfg.check()?;
    let dir = tempfile::tempdir()?;
    let mps: PathBuf = dir.path().join("model.mps");
    let sol: PathBuf = dir.path().join("model.sol");
    fs::write(&mps, export_mps(m)?)?;
    let warm_path = match warm {
        Some(a) if cfg.parser.supports_warm_start() && cfg.warm_args.is_some() => {
            let p = dir.path().join("warm.sol");
            fs::write(&p, write_cbc_start(m, a))?;
            Some(p)
        }
        _ => None,
    };
    let argv = cfg.argv(&mps, &sol, warm_path.as_deref());
    log::debug!("running solver: {}", argv.join(" "));

    let started = Instant::now();
    let (code, stdout, stderr) = run_with_deadline(&argv, dir.path(), cfg.time_limit)?;
    let wall_time = started.elapsed();

    let text = match fs::read_to_string(&sol) {
        Ok(t) if !t.trim().is_empty() => t,
        _ => {
            let tail: String = stderr.lines().chain(stdout.lines()).rev().take(5).collect::<Vec<_>>().join(" | ");
            return Err(SolveError::SolverFailed { status: code, detail: format!("no solution file; {tail}") });
        }
    };
    let parsed = parse_solution(&text, cfg.parser)?;
    match parsed.status {
        Some(SolverStatus::Infeasible) => return Err(SolveError::Infeasible),
        Some(SolverStatus::Timeout) => return Err(SolveError::Timeout),
        _ => {}
    }
    let mut assignment = parsed.assignment;
    // Fills continuous columns the solver left out and rejects missing binaries.
    let values = m.dense_values(&assignment)?;
    for (idx, var) in m.variables().iter().enumerate() {
        if var.kind == VarKind::Continuous && assignment.get(&var.name).is_none() {
            assignment.set(var.name.clone(), values[idx]);
        }
    }
    let objective = m.objective(&assignment).unwrap_or(0.0);
    let status = parsed.status.unwrap_or(SolverStatus::Feasible);
    let mut bound = cfg
        .bound_pattern
        .as_deref()
        .and_then(|p| Regex::new(p).ok())
        .and_then(|re| re.captures_iter(&stdout).last().and_then(|c| c.get(1)?.as_str().parse::<f64>().ok()));
    if status == SolverStatus::Optimal {
        bound = Some(bound.map_or(objective, |b| b.max(objective - 1e-6)));
    }
    let bound = bound.map(|b| b.min(objective));
    Ok(SolveOutcome { assignment, objective, reported_objective: parsed.reported_objective, bound, status, wall_time })
}

/// Runs `argv` in `dir`, killing it well after the solver's own time limit.
fn run_with_deadline(argv: &[String], dir: &Path, limit: f64) -> Result<(String, String, String), SolveError> {
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .current_dir(dir)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| SolveError::SolverFailed { status: "spawn".into(), detail: format!("{}: {e}", argv[0]) })?;
    let mut out_pipe = child.stdout.take().expect("piped");
    let mut err_pipe = child.stderr.take().expect("piped");
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = io::Read::read_to_string(&mut out_pipe, &mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = io::Read::read_to_string(&mut err_pipe, &mut s);
        s
    });
    let deadline = Instant::now() + Duration::from_secs_f64(limit * 2.0 + 10.0);
    let status = loop {
        if let Some(st) = child.try_wait()? {
            break st.to_string();
        }
        if Instant::now() > deadline {
            let _ = child.kill();
            let _ = child.wait();
            break "killed after deadline".to_string();
        }
        thread::sleep(Duration::from_millis(10));
    };
    let stdout = out_reader.join().unwrap_or_default();
    let stderr = err_reader.join().unwrap_or_default();
    Ok((status, stdout, stderr))
}
