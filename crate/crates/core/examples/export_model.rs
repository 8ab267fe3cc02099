//! Builds the MIP for an instance and writes it as MPS.
//!
//! ```text
//! cargo run --example export_model -- fixtures/instances/floor-small.mmrtc prh 0.6 > floor.mps
//! ```

use std::{env, fs};

use mmrtc::model::{build_model, export_mps, ModelOptions};
use mmrtc::reduction::{build_reduction, ReductionParams};
use mmrtc::terrain::{build_graph, root_vertices, Instance};

fn main() {
    let args: Vec<String> = env::args().collect();
    let path = args.get(1).map_or("fixtures/instances/floor-small.mmrtc", String::as_str);
    let value: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.6);
    let params = match args.get(2).map(String::as_str) {
        Some("prh") => ReductionParams::Prh { alpha: value },
        Some("srh") => ReductionParams::Srh { beta: value },
        _ => ReductionParams::None,
    };

    let inst = Instance::parse(&fs::read_to_string(path).expect("readable instance")).expect("valid instance");
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    let reduction = build_reduction(&g, &roots, params).expect("reduction");
    let model = build_model(&g, &reduction.residuals, &roots, ModelOptions::default()).expect("model");
    let stats = model.stats();
    eprintln!(
        "{}: {} variables ({} binary), {} constraints",
        params.label(),
        stats.variables,
        stats.binaries,
        stats.constraints
    );
    print!("{}", export_mps(&model).expect("exportable"));
}
