//! Exact makespan of small instances by exhaustive search, compared with the
//! Voronoi warm start.
//!
//! ```text
//! cargo run --release --example oracle -- 20
//! ```

use std::env;

use mmrtc::cli::gen::{generate, GenSpec, MapStyle};
use mmrtc::solve::{oracle_optimum, DEFAULT_ORACLE_LIMIT};
use mmrtc::terrain::{build_graph, root_vertices};
use mmrtc::warmstart::initial_solution;

fn main() {
    let count: u64 = env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    println!("{:>4} {:>3} {:>2} {:>9} {:>10}", "seed", "|V|", "k", "optimum", "warm start");
    for seed in 0..count {
        let k = 2 + (seed % 2) as usize;
        let spec = GenSpec { style: MapStyle::Terrain, rows: 3, cols: 4, k, obstacle_fraction: Some(0.0), seed };
        let inst = generate(&spec).expect("instance");
        let g = build_graph(&inst);
        let roots = root_vertices(&inst, &g);
        let (opt, _) = oracle_optimum(&g, &roots, DEFAULT_ORACLE_LIMIT).expect("small enough");
        let warm = initial_solution(&g, &roots).expect("warm start");
        assert!(warm.makespan >= opt);
        println!("{seed:>4} {:>3} {k:>2} {:>9} {:>10}", g.vertex_count(), opt.to_string(), warm.makespan.to_string());
    }
}
