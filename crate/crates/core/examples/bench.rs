//! Benchmarks MIP, MIP-PRH, MIP-SRH and the warm-start baseline on a few
//! generated instances and prints the Markdown report. MIP rows record an
//! error when no solver is configured.
//!
//! ```text
//! MMRTC_SOLVER=/path/to/cbc cargo run --release --example bench -- 3 5
//! ```

use std::env;

use mmrtc::cli::bench::{bench_instance, to_markdown, BenchConfig};
use mmrtc::cli::gen::{generate, GenSpec, MapStyle};
use mmrtc::solve::SolverConfig;

fn main() {
    env_logger::init();
    let args: Vec<String> = env::args().collect();
    let count: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let seconds: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5.0);
    let cfg = BenchConfig { solver: SolverConfig::from_env(), time_limit: seconds, alpha: 0.6, beta: 0.6 };
    let mut rows = Vec::new();
    for seed in 0..count {
        let inst = generate(&GenSpec { style: MapStyle::Terrain, rows: 8, cols: 8, k: 4, obstacle_fraction: None, seed })
            .expect("instance");
        rows.extend(bench_instance(&format!("terrain-8x8-{seed}"), &inst, &cfg));
    }
    print!("{}", to_markdown(&rows));
}
