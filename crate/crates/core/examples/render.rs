//! Writes three SVG figures: the bare instance, a PRH reduction for robot 0,
//! and a warm-start plan with coverage paths.
//!
//! ```text
//! cargo run --example render -- fixtures/instances/floor-small.mmrtc /tmp
//! ```

use std::path::PathBuf;
use std::{env, fs};

use mmrtc::cli::render::{render_svg, Overlay};
use mmrtc::reduction::{build_reduction, ReductionParams};
use mmrtc::stc::build_plan;
use mmrtc::terrain::{build_graph, decompose, root_vertices, Instance};
use mmrtc::warmstart::initial_solution;

fn main() {
    let args: Vec<String> = env::args().collect();
    let path = args.get(1).map_or("fixtures/instances/floor-small.mmrtc", String::as_str);
    let dir = PathBuf::from(args.get(2).map_or(".", String::as_str));
    let inst = Instance::parse(&fs::read_to_string(path).expect("readable instance")).expect("valid instance");
    let g = build_graph(&inst);
    let d = decompose(&g);
    let roots = root_vertices(&inst, &g);

    let red = build_reduction(&g, &roots, ReductionParams::Prh { alpha: 0.0 }).expect("reduction");
    let cover = initial_solution(&g, &roots).expect("warm start");
    let plan = build_plan(&cover, &g, &d).expect("coverage plan");

    let figures = [
        ("instance.svg", Overlay::default()),
        ("reduction.svg", Overlay { reduction: Some((&red, 0)), ..Overlay::default() }),
        ("plan.svg", Overlay { solution: Some(&cover), coverage: Some((&plan, &d)), ..Overlay::default() }),
    ];
    for (name, overlay) in figures {
        let out = dir.join(name);
        fs::write(&out, render_svg(&inst, &g, &overlay)).expect("writable output");
        println!("wrote {}", out.display());
    }
}
