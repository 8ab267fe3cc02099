use super::InferiorGraph;
use crate::terrain::{connected_components, ShortestPaths, TerrainGraph};

/// Repairs `inf` until the residual graph `G - H_i` is connected and holds
/// the robot's root.
///
/// Each round ejects the root from `H_i` if needed, picks the residual
/// component (other than the root's) containing the vertex nearest to the
/// root, and carves the shortest path from the root to that vertex out of
/// `H_i`. `from_root` must be the full-graph shortest paths from the root.
/// Ties on distance go to the smaller vertex id. Every round removes at least
/// one vertex from `H_i`.
pub fn connectivity_check(g: &TerrainGraph, from_root: &ShortestPaths, inf: &mut InferiorGraph) {
    let root = from_root.source;
    if inf.union.vertices.contains(root) {
        inf.carve(g, &[root], &[]);
    }
    loop {
        let residual = inf.residual_vertices();
        let comps = connected_components(g, Some(&residual));
        if comps.len() <= 1 {
            return;
        }
        let target = comps
            .iter()
            .filter(|c| !c.contains(root))
            .flat_map(|c| c.iter())
            .min_by_key(|&v| (from_root.to(v), v))
            .expect("a detached component exists");
        let path = from_root.path_to(target).expect("graph is connected");
        let edges: Vec<_> = path.windows(2).map(|w| g.edge_between(w[0], w[1]).expect("path edge")).collect();
        let before = inf.union.vertices.len();
        inf.carve(g, &path, &edges);
        assert!(inf.union.vertices.len() < before, "connectivity repair made no progress");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{InferiorGraph, Provenance, SubComponent, Subgraph};
    use crate::terrain::{build_graph, dijkstra, is_connected, Instance, VertexSet};

    fn graph(text: &str) -> TerrainGraph {
        build_graph(&Instance::parse(text).unwrap())
    }

    fn inferior(g: &TerrainGraph, ids: &[usize]) -> InferiorGraph {
        let part = Subgraph::induced(g, VertexSet::from_ids(g.vertex_count(), ids.iter().copied()));
        InferiorGraph::from_parts(0, g.vertex_count(), vec![SubComponent { other: 1, graph: part }], Provenance::None)
    }

    #[test]
    fn empty_inferior_unchanged() {
        let g = graph("mmrtc 1\n1 5 1 0\n1 1 1 1 1\n0 0\n");
        let mut inf = inferior(&g, &[]);
        connectivity_check(&g, &dijkstra(&g, 0), &mut inf);
        assert!(inf.union.is_empty());
    }

    #[test]
    fn path_cut_is_carved_away() {
        let g = graph("mmrtc 1\n1 5 1 0\n1 1 1 1 1\n0 0\n");
        let mut inf = inferior(&g, &[2]);
        connectivity_check(&g, &dijkstra(&g, 0), &mut inf);
        assert!(inf.union.is_empty());
        assert!(inf.parts[0].graph.is_empty());
    }

    #[test]
    fn root_is_ejected() {
        let g = graph("mmrtc 1\n1 5 1 0\n1 1 1 1 1\n0 0\n");
        let mut inf = inferior(&g, &[0, 1]);
        connectivity_check(&g, &dijkstra(&g, 0), &mut inf);
        // ejecting r_0 leaves {0} and {2, 3, 4}; carving 0-1-2 empties H
        assert!(!inf.union.vertices.contains(0));
        assert!(is_connected(&g, &inf.residual_vertices()));
    }

    #[test]
    fn donut_pocket_reconnected_by_one_corridor() {
        let g = graph(
            "mmrtc 1\n5 5 1 0\n1 1 1 1 1\n1 1 1 1 1\n1 1 1 1 1\n1 1 1 1 1\n1 1 1 1 1\n0 0\n",
        );
        // ring around the center (2,2)
        let ring: Vec<usize> = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2), (3, 3)]
            .iter()
            .map(|&(r, c)| g.vertex_at(r, c).unwrap())
            .collect();
        let mut inf = inferior(&g, &ring);
        assert!(!is_connected(&g, &inf.residual_vertices()));
        connectivity_check(&g, &dijkstra(&g, 0), &mut inf);
        assert!(is_connected(&g, &inf.residual_vertices()));
        assert_eq!(inf.union.vertices.len(), 7);
        assert!(inf.union.edges.iter().all(|&e| {
            let edge = g.edge(e);
            inf.union.vertices.contains(edge.u) && inf.union.vertices.contains(edge.v)
        }));
    }
}
