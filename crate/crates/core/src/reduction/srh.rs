//! Subgraph removal: robot `i` gives up a farthest-first tree grown inside
//! the vertices strictly closer to `r_j` than to `r_i`.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use super::{connectivity_check, logistic, InferiorGraph, Provenance, RootGeometry, SubComponent, Subgraph};
use crate::terrain::{EdgeId, ShortestPaths, TerrainGraph, VertexId, VertexSet};
use crate::weight::Weight;

/// `b_ij = ceil(beta * |S_ij| * sigma(d(r_i, r_j) / d(r_j, c_ij)))`, with the
/// ratio taken as infinite when `c_ij = r_j`.
pub fn srh_budget(beta: f64, set_size: usize, d_between_roots: Weight, d_root_to_boundary: Weight) -> usize {
    if beta == 0.0 || set_size == 0 {
        return 0;
    }
    let ratio = if d_root_to_boundary == Weight::ZERO {
        f64::INFINITY
    } else {
        d_between_roots.as_f64() / d_root_to_boundary.as_f64()
    };
    (beta * set_size as f64 * logistic(ratio)).ceil() as usize
}

/// Best-first tree inside `mask` from `seed`, always expanding the frontier
/// vertex with the largest key (ties to the smaller id). Stops once the tree
/// holds `limit` vertices.
pub fn ffs_tree(g: &TerrainGraph, mask: &VertexSet, seed: VertexId, key: &ShortestPaths, limit: usize) -> Subgraph {
    let mut out = Subgraph::empty(g.vertex_count());
    if limit == 0 || !mask.contains(seed) {
        return out;
    }
    let mut parent: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut queued = VertexSet::empty(g.vertex_count());
    let mut heap = BinaryHeap::new();
    heap.push((key.to(seed), Reverse(seed)));
    queued.insert(seed);
    while let Some((_, Reverse(v))) = heap.pop() {
        if out.vertices.len() == limit {
            break;
        }
        out.vertices.insert(v);
        if let Some(e) = parent[v] {
            out.edges.insert(e);
        }
        for &(n, e) in g.neighbors(v) {
            if mask.contains(n) && queued.insert(n) {
                parent[n] = Some(e);
                heap.push((key.to(n), Reverse(n)));
            }
        }
    }
    out
}

/// `S_ij = { v : d(r_i, v) > d(r_j, v) }`.
pub fn closer_to_other(g: &TerrainGraph, geo: &RootGeometry, i: usize, j: usize) -> VertexSet {
    VertexSet::from_ids(g.vertex_count(), (0..g.vertex_count()).filter(|&v| geo.d(i, v) > geo.d(j, v)))
}

/// `H_ij` for SRH, before connectivity repair.
pub fn srh_sub_component(g: &TerrainGraph, geo: &RootGeometry, i: usize, j: usize, beta: f64) -> Subgraph {
    let s = closer_to_other(g, geo, i, j);
    if s.is_empty() {
        return Subgraph::empty(g.vertex_count());
    }
    let c = geo.farthest_boundary_vertex(i, j);
    let limit = srh_budget(beta, s.len(), geo.root_distance(i, j), geo.d(j, c));
    let seed = if s.contains(c) {
        c
    } else {
        // farthest from r_i inside S_ij, smallest id on ties
        s.iter().max_by_key(|&v| (geo.d(i, v), Reverse(v))).expect("nonempty")
    };
    ffs_tree(g, &s, seed, &geo.dists[i], limit)
}

pub(super) fn srh_raw(g: &TerrainGraph, geo: &RootGeometry, i: usize, beta: f64) -> InferiorGraph {
    let parts = (0..geo.roots.len())
        .filter(|&j| j != i)
        .map(|j| SubComponent { other: j, graph: srh_sub_component(g, geo, i, j, beta) })
        .collect();
    InferiorGraph::from_parts(i, g.vertex_count(), parts, Provenance::Srh { beta })
}

/// SRH inferior graph of robot `i`, after connectivity repair.
pub fn srh_inferior(g: &TerrainGraph, geo: &RootGeometry, i: usize, beta: f64) -> InferiorGraph {
    let mut inf = srh_raw(g, geo, i, beta);
    connectivity_check(g, &geo.dists[i], &mut inf);
    inf
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::{build_graph, dijkstra, root_vertices, Instance};

    fn setup(text: &str) -> (TerrainGraph, Vec<VertexId>) {
        let inst = Instance::parse(text).unwrap();
        let g = build_graph(&inst);
        let roots = root_vertices(&inst, &g);
        (g, roots)
    }

    fn ids(set: &VertexSet) -> Vec<usize> {
        set.iter().collect()
    }

    #[test]
    fn budget_examples() {
        let one = Weight::ONE;
        assert_eq!(srh_budget(0.0, 10, one, one), 0);
        assert_eq!(srh_budget(1.0, 10, one, Weight::ZERO), 10);
        // 0.3 * 7 * 0.7311 = 1.535
        assert_eq!(srh_budget(0.3, 7, one, one), 2);
    }

    #[test]
    fn ffs_on_path() {
        let (g, _) = setup("mmrtc 1\n1 5 1 0\n1 1 1 1 1\n0 0\n");
        let key = dijkstra(&g, 0);
        let all = g.all_vertices();
        let t = ffs_tree(&g, &all, 4, &key, 3);
        assert_eq!(ids(&t.vertices), vec![2, 3, 4]);
        assert_eq!(t.edges.len(), 2);
        assert_eq!(ids(&ffs_tree(&g, &all, 4, &key, 1).vertices), vec![4]);
        assert!(ffs_tree(&g, &all, 4, &key, 0).is_empty());
        let t = ffs_tree(&g, &all, 4, &key, 99);
        assert_eq!(t.vertices.len(), 5);
        assert_eq!(t.edges.len(), 4);
    }

    #[test]
    fn ffs_prefers_farthest_frontier() {
        // 2x3 grid keyed by distance from (0,0); from (1,1) the farthest
        // neighbour (1,2) comes before (0,1) and (1,0)
        let (g, _) = setup("mmrtc 1\n2 3 1 0\n1 1 1\n1 1 1\n0 0\n");
        let key = dijkstra(&g, 0);
        let seed = g.vertex_at(1, 1).unwrap();
        let t = ffs_tree(&g, &g.all_vertices(), seed, &key, 2);
        assert_eq!(ids(&t.vertices), vec![seed, g.vertex_at(1, 2).unwrap()]);
    }

    #[test]
    fn closer_sets_on_symmetric_path() {
        let (g, roots) = setup("mmrtc 1\n1 4 2 0\n1 1 1 1\n0 0\n0 3\n");
        let geo = RootGeometry::new(&g, &roots);
        assert_eq!(ids(&closer_to_other(&g, &geo, 0, 1)), vec![2, 3]);
        assert_eq!(ids(&closer_to_other(&g, &geo, 1, 0)), vec![0, 1]);
        // equidistant middle vertex belongs to neither side
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let geo = RootGeometry::new(&g, &roots);
        assert_eq!(ids(&closer_to_other(&g, &geo, 0, 1)), vec![2]);
        assert_eq!(ids(&closer_to_other(&g, &geo, 1, 0)), vec![0]);
    }

    #[test]
    fn srh_zero_beta_is_empty() {
        let (g, roots) = setup("mmrtc 1\n1 4 2 0\n1 1 1 1\n0 0\n0 3\n");
        let geo = RootGeometry::new(&g, &roots);
        assert!(srh_inferior(&g, &geo, 0, 0.0).union.is_empty());
        let inf = srh_inferior(&g, &geo, 0, 1.0);
        // budget 2 takes {2, 3}; r_0 keeps {0, 1}
        assert_eq!(ids(&inf.union.vertices), vec![2, 3]);
    }
}
