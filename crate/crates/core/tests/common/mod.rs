#![allow(dead_code)]

use std::path::PathBuf;

use mmrtc::cli::gen::{generate, GenSpec, MapStyle};
use mmrtc::solve::SolverConfig;
use mmrtc::terrain::{build_graph, root_vertices, Instance, TerrainGraph, VertexId};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub fn load(rel: &str) -> Instance {
    Instance::parse(&std::fs::read_to_string(fixture(rel)).unwrap()).unwrap()
}

pub fn setup(inst: &Instance) -> (TerrainGraph, Vec<VertexId>) {
    let g = build_graph(inst);
    let roots = root_vertices(inst, &g);
    (g, roots)
}

pub fn solver() -> Option<SolverConfig> {
    SolverConfig::from_env()
}

/// Random connected grid instance; weighted when `weighted`.
pub fn random_instance(seed: u64, rows: usize, cols: usize, k: usize, obstacles: f64, weighted: bool) -> Instance {
    let style = if weighted { MapStyle::Terrain } else { MapStyle::Floor };
    let spec = GenSpec { style, rows, cols, k, obstacle_fraction: Some(obstacles), seed };
    generate(&spec).unwrap()
}
