//! Probes PRH and SRH at alpha, beta in {0.3, 0.6, 0.9} with 2% of the budget
//! each, then solves the most promising reduction with 88%.
//!
//! ```text
//! MMRTC_SOLVER=/path/to/cbc cargo run --example parameter_search -- fixtures/instances/maze-small.mmrtc 50
//! ```

use std::{env, fs, process};

use mmrtc::solve::{parameter_search, SolverConfig};
use mmrtc::terrain::Instance;

fn main() {
    env_logger::init();
    let args: Vec<String> = env::args().collect();
    let path = args.get(1).map_or("fixtures/instances/maze-small.mmrtc", String::as_str);
    let budget: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(50.0);
    let Some(cfg) = SolverConfig::from_env() else {
        eprintln!("set MMRTC_SOLVER to a CBC or HiGHS executable");
        process::exit(2);
    };
    let inst = Instance::parse(&fs::read_to_string(path).expect("readable instance")).expect("valid instance");
    let found = parameter_search(&inst, &cfg, budget).expect("search");
    for p in &found.probes {
        println!("{:<22} bound {:?} objective {:?} {}", p.params.label(), p.bound, p.objective, p.error.as_deref().unwrap_or(""));
    }
    let s = &found.result.stats;
    println!(
        "chosen {}: makespan {}, bound {:?}, {} of {} variables kept",
        found.chosen.label(),
        s.makespan,
        s.bound,
        s.reduced.variables,
        s.unreduced.variables
    );
}
