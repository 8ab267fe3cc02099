//! Command-line surface behind the `mmrtc` binary.

pub mod bench;
pub mod gen;
pub mod render;
pub mod solution;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::model::{build_model, export_mps, ModelOptions};
use crate::reduction::{build_reduction, ReductionParams};
use crate::solve::{
    oracle_optimum, parameter_search, plan, Backend, PlanError, PlanOptions, PlanResult, SolveError, SolverConfig,
    DEFAULT_ORACLE_LIMIT,
};
use crate::stc::build_plan;
use crate::terrain::{build_graph, decompose, root_vertices, Instance};
use crate::validate::validate_solution;

use self::bench::{bench_instance, to_markdown, write_csv, BenchConfig};
use self::gen::{generate, GenSpec, MapStyle};
use self::render::{render_svg, Overlay};
use self::solution::SolutionFile;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Reduction(String),
    #[error("{0}")]
    Solver(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 1 i/o, 2 usage (clap), 3 input parse, 4 reduction, 5 solver,
    /// 6 validation, 7 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse(_) => 3,
            CliError::Reduction(_) => 4,
            CliError::Solver(_) => 5,
            CliError::Validation(_) => 6,
            CliError::Internal(_) => 7,
        }
    }
}

impl From<PlanError> for CliError {
    fn from(e: PlanError) -> Self {
        let msg = e.to_string();
        match e {
            PlanError::Reduction(_) => CliError::Reduction(msg),
            PlanError::Solve(_) => CliError::Solver(msg),
            PlanError::Validation(_) => CliError::Validation(msg),
            PlanError::Model(_) | PlanError::Warmstart(_) | PlanError::Coverage(_) => CliError::Internal(msg),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Config(m) => CliError::Parse(format!("solver configuration: {m}")),
            other => CliError::Solver(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mmrtc", version, about = "Multi-robot coverage planning via min-max rooted tree cover")]
pub struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce, solve and convert an instance into coverage paths.
    Plan(PlanArgs),
    /// Exact makespan by exhaustive search (small instances only).
    Oracle(OracleArgs),
    /// Write the MIP as MPS without solving.
    Export(ExportArgs),
    /// Check a solution JSON against an instance.
    Validate(ValidateArgs),
    /// Draw an instance with optional reduction and plan overlays.
    Render(RenderArgs),
    /// Compare MIP, MIP-PRH, MIP-SRH and the warm start over many instances.
    Bench(BenchArgs),
    /// Generate a random instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Heuristic {
    None,
    Prh,
    Srh,
}

#[derive(Debug, Args)]
pub struct HeuristicArgs {
    #[arg(long, value_enum, default_value = "none")]
    pub heuristic: Heuristic,
    /// PRH parabola parameter; `inf` removes nothing.
    #[arg(long, default_value_t = 0.6)]
    pub alpha: f64,
    /// SRH budget parameter; 0 removes nothing.
    #[arg(long, default_value_t = 0.6)]
    pub beta: f64,
}

impl HeuristicArgs {
    pub fn params(&self) -> ReductionParams {
        match self.heuristic {
            Heuristic::None => ReductionParams::None,
            Heuristic::Prh => ReductionParams::Prh { alpha: self.alpha },
            Heuristic::Srh => ReductionParams::Srh { beta: self.beta },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Mip,
    Oracle,
    WarmStart,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    /// Pick the heuristic by probing alpha and beta in {0.3, 0.6, 0.9}.
    #[arg(long)]
    pub search: bool,
    /// Solver time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    #[arg(long, value_enum, default_value = "on")]
    pub warmstart: Toggle,
    #[arg(long, value_enum, default_value = "mip")]
    pub backend: BackendKind,
    #[arg(long)]
    pub solver_config: Option<PathBuf>,
    /// Solution JSON destination.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    pub limit: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    /// MPS destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub instance: PathBuf,
    pub solution: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub instance: PathBuf,
    /// Solution JSON whose trees and coverage paths are drawn.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    /// Reduction overlay; `none` draws no reduction layer.
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    /// Robot whose inferior and residual graphs are drawn.
    #[arg(long, default_value_t = 0)]
    pub robot: usize,
    /// SVG destination; stdout when omitted.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of `.mmrtc` files; generated instances are used when omitted.
    #[arg(long)]
    pub instances: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of generated instances.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "terrain")]
    pub style: MapStyle,
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
    #[arg(long, default_value_t = 10)]
    pub cols: usize,
    #[arg(short, long, default_value_t = 4)]
    pub k: usize,
    /// Time limit per solve, in seconds.
    #[arg(long, default_value_t = 10.0)]
    pub budget: f64,
    #[arg(long, default_value_t = 0.6)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.6)]
    pub beta: f64,
    #[arg(long)]
    pub solver_config: Option<PathBuf>,
    /// Report path prefix: writes `<out>.csv` and `<out>.md`.
    #[arg(long, default_value = "bench")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "terrain")]
    pub style: MapStyle,
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
    #[arg(long, default_value_t = 10)]
    pub cols: usize,
    #[arg(short, long, default_value_t = 4)]
    pub k: usize,
    /// Obstacle fraction; style default when omitted.
    #[arg(long)]
    pub obstacles: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    Instance::parse(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn solver_config(path: Option<&Path>) -> Result<SolverConfig, CliError> {
    match path {
        Some(p) => Ok(SolverConfig::load(p)?),
        None => SolverConfig::from_env().ok_or_else(|| {
            CliError::Solver(format!("no solver configured: pass --solver-config or set {}", crate::solve::SOLVER_ENV))
        }),
    }
}

/// Text table printed after `plan`.
pub fn summary(name: &str, r: &PlanResult) -> String {
    let s = &r.stats;
    let mut out = String::new();
    let _ = writeln!(out, "instance       {name}");
    let _ = writeln!(out, "heuristic      {}", s.heuristic);
    let _ = writeln!(out, "backend        {} ({:?})", s.backend, s.status);
    let _ = writeln!(out, "makespan       {}", s.makespan);
    let _ = writeln!(out, "coverage time  {}", s.coverage_time);
    let _ = writeln!(
        out,
        "variables      {} -> {} ({:.1}% removed)",
        s.unreduced.variables, s.reduced.variables, s.removed_pct
    );
    let _ = writeln!(
        out,
        "bound / gap    {} / {}",
        s.bound.map_or("-".into(), |b| format!("{b}")),
        s.gap_pct.map_or("-".into(), |g| format!("{g:.2}%"))
    );
    let t = &s.timings;
    let _ = writeln!(
        out,
        "runtime        {:.2}s (reduction {:.2}, model {:.2}, solve {:.2})",
        t.total_s, t.reduction_s, t.model_s, t.solve_s
    );
    out
}

fn solution_json(inst: &Instance, r: &PlanResult) -> String {
    let g = build_graph(inst);
    let d = decompose(&g);
    SolutionFile::new(&r.solution, &g)
        .with_coverage(&r.coverage, &d)
        .with_stats(serde_json::to_value(&r.stats).expect("stats serialize"))
        .to_json()
}

fn cmd_plan(a: &PlanArgs) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let name = a.instance.display().to_string();
    let result = if a.search {
        let cfg = solver_config(a.solver_config.as_deref())?;
        let found = parameter_search(&inst, &cfg, a.budget)?;
        for p in &found.probes {
            println!(
                "probe {:<20} bound {:>10} objective {:>10}{}",
                p.params.label(),
                p.bound.map_or("-".into(), |b| format!("{b:.3}")),
                p.objective.map_or("-".into(), |o| format!("{o:.3}")),
                p.error.as_deref().map_or(String::new(), |e| format!("  ({e})"))
            );
        }
        println!("chosen {}", found.chosen.label());
        found.result
    } else {
        let backend = match a.backend {
            BackendKind::Mip => Backend::External(solver_config(a.solver_config.as_deref())?.with_time_limit(a.budget)),
            BackendKind::Oracle => Backend::Oracle { limit: DEFAULT_ORACLE_LIMIT },
            BackendKind::WarmStart => Backend::WarmStartOnly,
        };
        let opts = PlanOptions { params: a.heuristic.params(), backend, warmstart: a.warmstart == Toggle::On };
        plan(&inst, &opts)?
    };
    print!("{}", summary(&name, &result));
    if let Some(out) = &a.out {
        write(Some(out), &solution_json(&inst, &result))?;
    }
    if let Some(svg) = &a.svg {
        let g = build_graph(&inst);
        let d = decompose(&g);
        let overlay = Overlay { reduction: None, solution: Some(&result.solution), coverage: Some((&result.coverage, &d)) };
        write(Some(svg), &render_svg(&inst, &g, &overlay))?;
    }
    Ok(())
}

fn cmd_oracle(a: &OracleArgs) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    let (makespan, s) = oracle_optimum(&g, &roots, a.limit)?;
    println!("{makespan}");
    if let Some(out) = &a.out {
        let d = decompose(&g);
        let cover = build_plan(&s, &g, &d).map_err(|e| CliError::Internal(e.to_string()))?;
        write(Some(out), &SolutionFile::new(&s, &g).with_coverage(&cover, &d).to_json())?;
    }
    Ok(())
}

fn cmd_export(a: &ExportArgs) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    let red = build_reduction(&g, &roots, a.heuristic.params()).map_err(|e| CliError::Reduction(e.to_string()))?;
    let model = build_model(&g, &red.residuals, &roots, ModelOptions::default()).map_err(|e| CliError::Internal(e.to_string()))?;
    let st = model.stats();
    eprintln!("{} columns ({} binary), {} rows", st.variables, st.binaries, st.constraints);
    write(a.out.as_deref(), &export_mps(&model).map_err(|e| CliError::Internal(e.to_string()))?)
}

fn cmd_validate(a: &ValidateArgs) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    let file = SolutionFile::parse(&read(&a.solution)?).map_err(|e| CliError::Parse(format!("{}: {e}", a.solution.display())))?;
    let s = file.to_solution(&g).map_err(|e| CliError::Parse(format!("{}: {e}", a.solution.display())))?;
    let report = validate_solution(&s, &g, &roots);
    if a.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Validation("solution is infeasible".into()))
    }
}

fn cmd_render(a: &RenderArgs) -> Result<(), CliError> {
    let inst = load_instance(&a.instance)?;
    let g = build_graph(&inst);
    let d = decompose(&g);
    let roots = root_vertices(&inst, &g);
    let params = a.heuristic.params();
    let reduction = match params {
        ReductionParams::None => None,
        p => Some(build_reduction(&g, &roots, p).map_err(|e| CliError::Reduction(e.to_string()))?),
    };
    if a.robot >= roots.len() {
        return Err(CliError::Parse(format!("robot {} out of range (k = {})", a.robot, roots.len())));
    }
    let solution = match &a.solution {
        Some(p) => {
            let file = SolutionFile::parse(&read(p)?).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?;
            Some(file.to_solution(&g).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?)
        }
        None => None,
    };
    let coverage = match &solution {
        Some(s) if validate_solution(s, &g, &roots).is_valid() => {
            Some(build_plan(s, &g, &d).map_err(|e| CliError::Internal(e.to_string()))?)
        }
        _ => None,
    };
    let overlay = Overlay {
        reduction: reduction.as_ref().map(|r| (r, a.robot)),
        solution: solution.as_ref(),
        coverage: coverage.as_ref().map(|c| (c, &d)),
    };
    write(a.svg.as_deref(), &render_svg(&inst, &g, &overlay))
}

fn cmd_bench(a: &BenchArgs) -> Result<(), CliError> {
    let solver = match solver_config(a.solver_config.as_deref()) {
        Ok(cfg) => Some(cfg),
        Err(CliError::Solver(msg)) => {
            log::warn!("{msg}; MIP rows will record the failure");
            None
        }
        Err(e) => return Err(e),
    };
    let mut instances: Vec<(String, Instance)> = Vec::new();
    match &a.instances {
        Some(dir) => {
            let entries = fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
            let mut paths: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mmrtc"))
                .collect();
            paths.sort();
            for p in paths {
                let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
                instances.push((name, load_instance(&p)?));
            }
        }
        None => {
            for i in 0..a.count {
                let seed = a.seed.wrapping_add(i as u64);
                let spec = GenSpec { style: a.style, rows: a.rows, cols: a.cols, k: a.k, obstacle_fraction: None, seed };
                let inst = generate(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
                instances.push((format!("{:?}-{seed}", a.style).to_lowercase(), inst));
            }
        }
    }
    let cfg = BenchConfig { solver, time_limit: a.budget, alpha: a.alpha, beta: a.beta };
    let mut rows = Vec::new();
    for (name, inst) in &instances {
        log::info!("bench {name}");
        rows.extend(bench_instance(name, inst, &cfg));
    }
    let csv_path = a.out.with_extension("csv");
    let file = fs::File::create(&csv_path).map_err(|source| CliError::Io { path: csv_path.clone(), source })?;
    write_csv(&rows, file).map_err(|e| CliError::Internal(e.to_string()))?;
    let md = to_markdown(&rows);
    write(Some(&a.out.with_extension("md")), &md)?;
    print!("{md}");
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> Result<(), CliError> {
    let spec = GenSpec { style: a.style, rows: a.rows, cols: a.cols, k: a.k, obstacle_fraction: a.obstacles, seed: a.seed };
    let inst = generate(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
    write(a.out.as_deref(), &inst.to_text())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Plan(a) => cmd_plan(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Export(a) => cmd_export(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Render(a) => cmd_render(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
