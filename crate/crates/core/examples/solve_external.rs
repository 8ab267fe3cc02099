//! Solves an instance through an external MILP solver.
//!
//! ```text
//! MMRTC_SOLVER=/path/to/cbc cargo run --example solve_external -- fixtures/instances/floor-small.mmrtc 10
//! ```

use std::{env, fs, process};

use mmrtc::reduction::ReductionParams;
use mmrtc::solve::{plan, Backend, PlanOptions, SolverConfig};
use mmrtc::terrain::Instance;

fn main() {
    env_logger::init();
    let args: Vec<String> = env::args().collect();
    let path = args.get(1).map_or("fixtures/instances/floor-small.mmrtc", String::as_str);
    let seconds: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let Some(cfg) = SolverConfig::from_env() else {
        eprintln!("set MMRTC_SOLVER to a CBC or HiGHS executable");
        process::exit(2);
    };
    let inst = Instance::parse(&fs::read_to_string(path).expect("readable instance")).expect("valid instance");

    for params in [ReductionParams::None, ReductionParams::Prh { alpha: 0.6 }, ReductionParams::Srh { beta: 0.6 }] {
        let opts = PlanOptions { params, backend: Backend::External(cfg.with_time_limit(seconds)), warmstart: true };
        match plan(&inst, &opts) {
            Ok(r) => {
                let s = &r.stats;
                println!(
                    "{:<10} vars {:>5} -> {:>5}  makespan {:>7}  bound {:>9}  status {:?}  {:.2}s",
                    params.label(),
                    s.unreduced.variables,
                    s.reduced.variables,
                    s.makespan,
                    s.bound.map_or("-".into(), |b| format!("{b:.3}")),
                    s.status,
                    s.timings.total_s
                );
            }
            Err(e) => println!("{:<10} failed: {e}", params.label()),
        }
    }
}
