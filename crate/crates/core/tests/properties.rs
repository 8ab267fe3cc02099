mod common;

use std::collections::{BTreeMap, HashSet};

use mmrtc::model::{apply_warmstart, build_model, MmrtcSolution, ModelOptions};
use mmrtc::reduction::{build_reduction, ReductionParams};
use mmrtc::solve::{oracle_optimum, oracle_optimum_within};
use mmrtc::stc::{build_plan, circumnavigate, coverage_time, coverage_time_by_moves};
use mmrtc::terrain::{
    connected_components, decompose, dijkstra, minimum_spanning_tree, mst_within, shortest_path, TerrainGraph, Tree,
    VertexSet,
};
use mmrtc::validate::validate_solution;
use mmrtc::warmstart::{best_warmstart, flow_assignment, initial_solution, mst_warmstart};
use mmrtc::Weight;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (u64, usize, usize, usize, bool)> {
    (any::<u64>(), 2usize..6, 2usize..7, 1usize..4, any::<bool>())
}

fn params() -> impl Strategy<Value = ReductionParams> {
    prop_oneof![
        Just(ReductionParams::None),
        prop::sample::select(vec![0.0, 0.3, 0.6, 0.9, 2.0, f64::INFINITY]).prop_map(|alpha| ReductionParams::Prh { alpha }),
        prop::sample::select(vec![0.0, 0.3, 0.6, 0.9, 1.5]).prop_map(|beta| ReductionParams::Srh { beta }),
    ]
}

fn bellman_ford(g: &TerrainGraph, s: usize) -> Vec<Option<Weight>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(Weight::ZERO);
    for _ in 0..g.vertex_count() {
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if let Some(da) = dist[a] {
                    if dist[b].is_none_or(|db| da + e.weight < db) {
                        dist[b] = Some(da + e.weight);
                    }
                }
            }
        }
    }
    dist
}

fn brute_force_mst(g: &TerrainGraph) -> Weight {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut best: Option<Weight> = None;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let edges: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        if Tree::new(0, edges.clone()).orient(g).is_some_and(|o| o.len() == n - 1) {
            let w = edges.iter().map(|&e| g.edge(e).weight).sum();
            best = Some(best.map_or(w, |b: Weight| b.min(w)));
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dijkstra_matches_bellman_ford((seed, rows, cols, k, weighted) in instance()) {
        let inst = common::random_instance(seed, rows, cols, k.min(rows * cols / 2).max(1), 0.15, weighted);
        let (g, _) = common::setup(&inst);
        for s in 0..g.vertex_count() {
            let sp = dijkstra(&g, s);
            let bf = bellman_ford(&g, s);
            prop_assert_eq!(sp.distances(), &bf[..]);
            let t = g.vertex_count() - 1 - s;
            let path = shortest_path(&g, s, t).unwrap();
            let len: Weight = path.windows(2).map(|w| g.edge(g.edge_between(w[0], w[1]).unwrap()).weight).sum();
            prop_assert_eq!(Some(len), bf[t]);
        }
    }

    #[test]
    fn mst_matches_brute_force(seed in any::<u64>(), cols in 2usize..5) {
        let inst = common::random_instance(seed, 2, cols, 1, 0.0, true);
        let (g, _) = common::setup(&inst);
        prop_assume!(g.edge_count() <= 14);
        let t = minimum_spanning_tree(&g, 0).unwrap();
        prop_assert_eq!(t.orient(&g).map(|o| o.len()), Some(g.vertex_count() - 1));
        prop_assert_eq!(t.weight(&g), brute_force_mst(&g));
    }

    #[test]
    fn components_partition_masks(seed in any::<u64>(), bits in any::<u64>()) {
        let inst = common::random_instance(seed, 4, 4, 1, 0.1, false);
        let (g, _) = common::setup(&inst);
        let mask = VertexSet::from_ids(g.vertex_count(), (0..g.vertex_count()).filter(|&v| bits >> v & 1 == 1));
        let comps = connected_components(&g, Some(&mask));
        let mut seen = HashSet::new();
        for c in &comps {
            for v in c.iter() {
                prop_assert!(mask.contains(v));
                prop_assert!(seen.insert(v));
            }
        }
        prop_assert_eq!(seen.len(), mask.len());
    }

    #[test]
    fn flow_assignment_is_exact(seed in any::<u64>(), side in 2usize..15, extra in 0usize..20) {
        let inst = common::random_instance(seed, side, side, 1, 0.1, true);
        let (g, roots) = common::setup(&inst);
        let tree = minimum_spanning_tree(&g, roots[0]).unwrap();
        let n = g.vertex_count() + extra;
        let flows = flow_assignment(&tree, &g, n).unwrap();
        let mut per_edge: BTreeMap<usize, usize> = BTreeMap::new();
        let mut per_vertex: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &flows {
            *per_edge.entry(f.edge).or_default() += f.numerator;
            *per_vertex.entry(f.vertex).or_default() += f.numerator;
        }
        prop_assert_eq!(per_edge.len(), tree.edges.len());
        prop_assert!(per_edge.values().all(|&s| s == n));
        for (&v, &s) in &per_vertex {
            if v == tree.root {
                prop_assert_eq!(s, tree.edges.len());
            } else {
                prop_assert_eq!(s, n - 1);
            }
        }
    }

    #[test]
    fn reductions_are_complete((seed, rows, cols, k, weighted) in instance(), p in params()) {
        let k = (k + 1).min(rows * cols / 2);
        let inst = common::random_instance(seed, rows, cols, k, 0.15, weighted);
        let (g, roots) = common::setup(&inst);
        let red = build_reduction(&g, &roots, p).unwrap();
        for a in &red.inferiors {
            for part in &a.parts {
                if let Some(back) = red.inferiors[part.other].part(a.robot) {
                    prop_assert!(part.graph.vertices.is_disjoint(&back.vertices));
                }
            }
        }
        let mut union = VertexSet::empty(g.vertex_count());
        for (i, r) in red.residuals.iter().enumerate() {
            union.union_with(r);
            prop_assert!(r.contains(roots[i]));
            prop_assert_eq!(connected_components(&g, Some(r)).len(), 1);
        }
        prop_assert_eq!(union.len(), g.vertex_count());
        let model = build_model(&g, &red.residuals, &roots, ModelOptions::default()).unwrap();
        for warm in [mst_warmstart(&g, &red.residuals, &roots).unwrap(), best_warmstart(&g, &red.residuals, &roots).unwrap()] {
            prop_assert!(validate_solution(&warm, &g, &roots).is_valid());
            let values = apply_warmstart(&model, &warm, &g).unwrap();
            prop_assert!(model.max_violation(&values).unwrap().0 <= 1e-9);
        }
    }

    #[test]
    fn validator_rejects_single_mutations((seed, rows, cols, _k, weighted) in instance()) {
        let inst = common::random_instance(seed, rows.max(3), cols.max(3), 2, 0.0, weighted);
        let (g, roots) = common::setup(&inst);
        let good = initial_solution(&g, &roots).unwrap();
        prop_assert!(validate_solution(&good, &g, &roots).is_valid());

        // Dropping a leaf vertex leaves it uncovered (regions partition V).
        let t = &good.trees[0];
        if let Some(&(leaf, _, e)) = t.orient(&g).unwrap().last().filter(|_| !t.edges.is_empty()) {
            let mut trees = good.trees.clone();
            trees[0] = Tree::new(t.root, t.edges.iter().copied().filter(|&x| x != e).collect());
            let rep = validate_solution(&MmrtcSolution::new(trees, &g), &g, &roots);
            prop_assert!(!rep.cover_ok);
            prop_assert!(rep.uncovered.contains(&leaf));
        }
        // A chord inside the whole grid spanning tree closes a cycle.
        let spanning = minimum_spanning_tree(&g, roots[0]).unwrap();
        if let Some(chord) = (0..g.edge_count()).find(|e| !spanning.edges.contains(e)) {
            let mut edges = spanning.edges.clone();
            edges.push(chord);
            let trees = vec![Tree::new(roots[0], edges), Tree::singleton(roots[1])];
            prop_assert!(!validate_solution(&MmrtcSolution::new(trees, &g), &g, &roots).tree_ok);
        }
        let swapped: Vec<Tree> = good.trees.iter().rev().cloned().collect();
        prop_assert!(!validate_solution(&MmrtcSolution::new(swapped, &g), &g, &roots).rooted_ok);
    }

    #[test]
    fn circumnavigation_invariants((seed, rows, cols, k, weighted) in instance()) {
        let k = k.min(rows * cols / 2).max(1);
        let inst = common::random_instance(seed, rows, cols, k, 0.15, weighted);
        let (g, roots) = common::setup(&inst);
        let d = decompose(&g);
        let s = initial_solution(&g, &roots).unwrap();
        let plan = build_plan(&s, &g, &d).unwrap();
        for (i, tree) in s.trees.iter().enumerate() {
            let path = &plan.paths[i];
            let verts = tree.vertex_set(&g);
            let mut cells: Vec<usize> = verts.iter().flat_map(|v| 4 * v..4 * v + 4).collect();
            let mut visited = path.clone();
            cells.sort_unstable();
            visited.sort_unstable();
            prop_assert_eq!(visited, cells);
            for w in path.windows(2) {
                prop_assert!(d.are_adjacent(w[0], w[1]));
            }
            let conserved: Weight = verts.iter().map(|v| g.vertex(v).weight).sum();
            prop_assert_eq!(coverage_time(path, &d).unwrap(), conserved);
            prop_assert_eq!(coverage_time_by_moves(path, &d).unwrap(), conserved);
            prop_assert_eq!(&circumnavigate(tree, &g, &d), path);
        }
        let spanning = mst_within(&g, &g.all_vertices(), roots[0]).unwrap();
        let path = circumnavigate(&spanning, &g, &d);
        prop_assert_eq!(coverage_time(&path, &d).unwrap(), g.total_weight());
    }

    #[test]
    fn oracle_bounds((seed, _rows, _cols, k, weighted) in instance(), p in params()) {
        let k = (k + 1).min(3);
        let inst = common::random_instance(seed, 3, 4, k, 0.0, weighted);
        let (g, roots) = common::setup(&inst);
        let (opt, s) = oracle_optimum(&g, &roots, 14).unwrap();
        prop_assert!(validate_solution(&s, &g, &roots).is_valid());
        prop_assert!(initial_solution(&g, &roots).unwrap().makespan >= opt);
        let red = build_reduction(&g, &roots, p).unwrap();
        let (reduced, rs) = oracle_optimum_within(&g, &roots, Some(&red.residuals), 14).unwrap();
        prop_assert!(reduced >= opt);
        prop_assert!(validate_solution(&rs, &g, &roots).is_valid());
        prop_assert!(mst_warmstart(&g, &red.residuals, &roots).unwrap().makespan >= reduced);
    }
}

#[test]
fn single_robot_unweighted_coverage_is_vertex_count() {
    for seed in 0..30 {
        let inst = common::random_instance(seed, 3 + seed as usize % 5, 4 + seed as usize % 3, 1, 0.2, false);
        let (g, roots) = common::setup(&inst);
        let d = decompose(&g);
        let s = initial_solution(&g, &roots).unwrap();
        let plan = build_plan(&s, &g, &d).unwrap();
        assert_eq!(plan.coverage_time(), Weight::from_milli(1000 * g.vertex_count() as u64));
    }
}
