//! Generates one instance of each map style sized like the small benchmark maps.
//!
//! ```text
//! cargo run --example generate -- 42
//! ```

use std::env;

use mmrtc::cli::gen::{generate, GenSpec, MapStyle};
use mmrtc::terrain::build_graph;

fn main() {
    let seed: u64 = env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for (style, rows, cols, k) in [(MapStyle::Floor, 5, 10, 4), (MapStyle::Terrain, 10, 10, 8), (MapStyle::Maze, 10, 10, 6)] {
        let inst = generate(&GenSpec { style, rows, cols, k, obstacle_fraction: None, seed }).expect("instance");
        let g = build_graph(&inst);
        println!(
            "# {style:?}: |V| = {}, |E| = {}, k = {k}, obstacles {:.0}%",
            g.vertex_count(),
            g.edge_count(),
            100.0 * inst.obstacle_fraction()
        );
        println!("{}", inst.to_text());
    }
}
