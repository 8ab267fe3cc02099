//! Checks a warm start with the independent validator, then shows how each
//! kind of corruption is reported.
//!
//! ```text
//! cargo run --example validate
//! ```

use mmrtc::model::MmrtcSolution;
use mmrtc::terrain::{build_graph, root_vertices, Instance, Tree};
use mmrtc::validate::{makespan_and_gap, validate_solution};
use mmrtc::warmstart::initial_solution;

fn main() {
    let inst = Instance::parse("mmrtc 1\n3 3 2 0\n1 1 1\n1 1 1\n1 1 1\n0 0\n2 2\n").expect("valid instance");
    let g = build_graph(&inst);
    let roots = root_vertices(&inst, &g);
    let good = initial_solution(&g, &roots).expect("warm start");
    println!("warm start:\n{}", validate_solution(&good, &g, &roots).to_text());

    let mut dropped = good.trees.clone();
    let leaf_edge = *dropped[0].edges.last().expect("non-trivial tree");
    dropped[0] = Tree::new(dropped[0].root, dropped[0].edges.iter().copied().filter(|&e| e != leaf_edge).collect());
    let chord = {
        let mut t = good.trees.clone();
        let extra = (0..g.edge_count()).find(|e| !t[1].edges.contains(e) && {
            let edge = g.edge(*e);
            let vs = t[1].vertex_set(&g);
            vs.contains(edge.u) && vs.contains(edge.v)
        });
        if let Some(e) = extra {
            let mut edges = t[1].edges.clone();
            edges.push(e);
            t[1] = Tree::new(t[1].root, edges);
        }
        t
    };
    let swapped: Vec<Tree> = good.trees.iter().rev().cloned().collect();

    for (name, trees) in [("vertex dropped", dropped), ("chord added", chord), ("roots swapped", swapped)] {
        let s = MmrtcSolution::new(trees, &g);
        println!("{name}:\n{}", validate_solution(&s, &g, &roots).to_text());
    }
    let (makespan, gap) = makespan_and_gap(&good, &g, Some(3.0));
    println!("makespan {makespan}, gap to bound 3: {:.1}%", gap.unwrap_or(0.0));
}
