//! Runs PRH and SRH over a range of parameters and reports how much of the
//! graph each robot loses.
//!
//! ```text
//! cargo run --example reductions -- fixtures/instances/terrain-small.mmrtc
//! ```

use std::{env, fs};

use mmrtc::model::{build_model, ModelOptions};
use mmrtc::reduction::{build_reduction, check_completeness, ReductionParams};
use mmrtc::terrain::{build_graph, root_vertices, Instance};

fn main() {
    let path = env::args().nth(1).unwrap_or_else(|| "fixtures/instances/terrain-small.mmrtc".into());
    let inst = Instance::parse(&fs::read_to_string(&path).expect("readable instance")).expect("valid instance");
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    println!("{path}: |V| = {}, |E| = {}, k = {}", g.vertex_count(), g.edge_count(), roots.len());

    let mut runs = vec![ReductionParams::None, ReductionParams::Prh { alpha: f64::INFINITY }];
    runs.extend([0.0, 0.3, 0.6, 0.9, 2.0].map(|alpha| ReductionParams::Prh { alpha }));
    runs.extend([0.0, 0.3, 0.6, 0.9].map(|beta| ReductionParams::Srh { beta }));

    println!("{:<22} {:>9} {:>11}  residual sizes", "heuristic", "variables", "vertices -%");
    for params in runs {
        let red = build_reduction(&g, &roots, params).expect("reduction");
        check_completeness(&g, &roots, &red.residuals).expect("complete");
        let model = build_model(&g, &red.residuals, &roots, ModelOptions::default()).expect("model");
        let sizes: Vec<usize> = red.residuals.iter().map(|r| r.len()).collect();
        println!(
            "{:<22} {:>9} {:>10.1}%  {sizes:?}",
            params.label(),
            model.stats().variables,
            100.0 * red.removed_vertex_fraction()
        );
    }
}
