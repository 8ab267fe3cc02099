//! Turns a tree cover into closed coverage paths on the 4x decomposition.
//!
//! ```text
//! cargo run --example coverage_plan -- fixtures/instances/maze-small.mmrtc
//! ```

use std::{env, fs};

use mmrtc::stc::{build_plan, coverage_time_by_moves};
use mmrtc::terrain::{build_graph, decompose, root_vertices, Instance};
use mmrtc::warmstart::initial_solution;

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| "fixtures/instances/maze-small.mmrtc".into());
    let inst = Instance::parse(&fs::read_to_string(&path).expect("readable instance")).expect("valid instance");
    let g = build_graph(&inst);
    let d = decompose(&g);
    let roots = root_vertices(&inst, &g);

    let cover = initial_solution(&g, &roots).expect("warm start");
    let plan = build_plan(&cover, &g, &d).expect("coverage plan");
    for (i, (path, time)) in plan.paths.iter().zip(&plan.times).enumerate() {
        let start = d.cell(path[0]);
        let by_moves = coverage_time_by_moves(path, &d).expect("closed");
        assert_eq!(by_moves, *time);
        println!(
            "robot {i}: tree weight {}, {} cells, coverage time {time}, starts at D({}, {})",
            cover.trees[i].weight(&g),
            path.len(),
            start.row,
            start.col
        );
    }
    println!("makespan {}, coverage time {}", cover.makespan, plan.coverage_time());
}
