//! Builds the Voronoi warm start, loads it into the unreduced model and checks
//! every constraint row.
//!
//! ```text
//! cargo run --example warm_start -- fixtures/instances/terrain-small.mmrtc
//! ```

use std::{env, fs};

use mmrtc::model::{apply_warmstart, build_model, ModelOptions};
use mmrtc::terrain::{build_graph, root_vertices, Instance, VertexSet};
use mmrtc::validate::validate_solution;
use mmrtc::warmstart::{initial_solution, voronoi_regions};

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| "fixtures/instances/terrain-small.mmrtc".into());
    let inst = Instance::parse(&fs::read_to_string(&path).expect("readable instance")).expect("valid instance");
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);

    let regions = voronoi_regions(&g, &roots);
    let sizes: Vec<usize> = regions.iter().map(|r| r.len()).collect();
    println!("region sizes {sizes:?}");

    let s = initial_solution(&g, &roots).expect("warm start");
    let report = validate_solution(&s, &g, &roots);
    print!("{}", report.to_text());

    let full = vec![VertexSet::full(g.vertex_count()); roots.len()];
    let model = build_model(&g, &full, &roots, ModelOptions::default()).expect("model");
    let values = apply_warmstart(&model, &s, &g).expect("assignment");
    let (worst, row) = model.max_violation(&values).expect("complete assignment");
    println!(
        "{} variables set, worst row violation {worst:e}{}",
        values.len(),
        row.map_or(String::new(), |r| format!(" at {}", model.constraints()[r].name))
    );
}
