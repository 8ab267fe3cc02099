//! Graph utilities shared by every planning stage. All functions accept an
//! optional vertex mask so they can run on induced subgraphs without copying.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::graph::{EdgeId, GraphError, Path, TerrainGraph, Tree, VertexId, VertexSet};
use crate::weight::Weight;

/// Single-source shortest paths with predecessor links.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: VertexId,
    dist: Vec<Option<Weight>>,
    pred: Vec<Option<(VertexId, EdgeId)>>,
}

impl ShortestPaths {
    pub fn distance(&self, v: VertexId) -> Option<Weight> {
        self.dist[v]
    }

    /// Distance to a vertex known to be reachable.
    pub fn to(&self, v: VertexId) -> Weight {
        self.dist[v].expect("vertex reachable from source")
    }

    pub fn distances(&self) -> &[Option<Weight>] {
        &self.dist
    }

    /// Path from the source to `target`, source first.
    pub fn path_to(&self, target: VertexId) -> Result<Path, GraphError> {
        if self.dist[target].is_none() {
            return Err(GraphError::NoPath { from: self.source, to: target });
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some((prev, _)) = self.pred[cur] {
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        Ok(path)
    }
}

/// Dijkstra over edge weights. Equal-distance vertices settle in id order and
/// predecessors only change on strict improvement, so results are
/// deterministic.
pub fn dijkstra(g: &TerrainGraph, source: VertexId) -> ShortestPaths {
    dijkstra_within(g, source, None)
}

pub fn dijkstra_within(g: &TerrainGraph, source: VertexId, mask: Option<&VertexSet>) -> ShortestPaths {
    let n = g.vertex_count();
    let allowed = |v: VertexId| mask.is_none_or(|m| m.contains(v));
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    if allowed(source) {
        dist[source] = Some(Weight::ZERO);
        heap.push(Reverse((Weight::ZERO, source)));
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(n, e) in g.neighbors(v) {
            if done[n] || !allowed(n) {
                continue;
            }
            let cand = d + g.edge(e).weight;
            if dist[n].is_none_or(|cur| cand < cur) {
                dist[n] = Some(cand);
                pred[n] = Some((v, e));
                heap.push(Reverse((cand, n)));
            }
        }
    }
    ShortestPaths { source, dist, pred }
}

/// Shortest path from `s` to `t`, inclusive of both ends.
pub fn shortest_path(g: &TerrainGraph, s: VertexId, t: VertexId) -> Result<Path, GraphError> {
    dijkstra(g, s).path_to(t)
}

/// Connected components of the subgraph induced by `mask` (or all of `g`),
/// ordered by their smallest vertex id.
pub fn connected_components(g: &TerrainGraph, mask: Option<&VertexSet>) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let allowed = |v: VertexId| mask.is_none_or(|m| m.contains(v));
    let mut seen = VertexSet::empty(n);
    let mut out = Vec::new();
    for start in 0..n {
        if !allowed(start) || seen.contains(start) {
            continue;
        }
        let mut comp = VertexSet::empty(n);
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &(nb, _) in g.neighbors(v) {
                if allowed(nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &TerrainGraph, mask: &VertexSet) -> bool {
    connected_components(g, Some(mask)).len() <= 1
}

/// Minimum spanning tree of the whole graph, rooted at `root`.
pub fn minimum_spanning_tree(g: &TerrainGraph, root: VertexId) -> Result<Tree, GraphError> {
    mst_within(g, &g.all_vertices(), root)
}

/// Prim's algorithm on the subgraph induced by `mask`. Ties on weight go to
/// the smaller edge id.
pub fn mst_within(g: &TerrainGraph, mask: &VertexSet, root: VertexId) -> Result<Tree, GraphError> {
    if !mask.contains(root) {
        return Err(GraphError::NotInSet(root));
    }
    let mut in_tree = VertexSet::empty(g.vertex_count());
    let mut edges = Vec::with_capacity(mask.len().saturating_sub(1));
    let mut heap = BinaryHeap::new();
    let grow = |v: VertexId, in_tree: &mut VertexSet, heap: &mut BinaryHeap<Reverse<(Weight, EdgeId, VertexId)>>| {
        in_tree.insert(v);
        for &(n, e) in g.neighbors(v) {
            if mask.contains(n) && !in_tree.contains(n) {
                heap.push(Reverse((g.edge(e).weight, e, n)));
            }
        }
    };
    grow(root, &mut in_tree, &mut heap);
    while let Some(Reverse((_, e, n))) = heap.pop() {
        if in_tree.contains(n) {
            continue;
        }
        edges.push(e);
        grow(n, &mut in_tree, &mut heap);
    }
    if in_tree.len() != mask.len() {
        return Err(GraphError::NotConnected);
    }
    Ok(Tree::new(root, edges))
}

/// Vertices with fewer than four neighbours.
pub fn boundary_vertices(g: &TerrainGraph) -> VertexSet {
    VertexSet::from_ids(g.vertex_count(), (0..g.vertex_count()).filter(|&v| g.degree(v) < 4))
}
