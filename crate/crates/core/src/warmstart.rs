//! Feasible starting solutions: Voronoi-region spanning forests for the full
//! model, residual-graph MSTs for reduced models, and the flow shares that
//! make either one satisfy every flow row.

use thiserror::Error;

use crate::model::MmrtcSolution;
use crate::terrain::{dijkstra, mst_within, EdgeId, GraphError, TerrainGraph, Tree, VertexId, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WarmstartError {
    #[error("robot {robot}: {source}")]
    Graph { robot: usize, source: GraphError },
}

/// Multi-source region growing from the roots by weighted distance.
///
/// Vertices are settled in order of distance to their nearest root and join
/// the region of a settled neighbour that lies on a shortest path to them.
/// When several regions qualify, the currently smaller region wins, then the
/// smaller robot index. Every region is connected and contains its root.
pub fn voronoi_regions(g: &TerrainGraph, roots: &[VertexId]) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let dists: Vec<_> = roots.iter().map(|&r| dijkstra(g, r)).collect();
    let nearest: Vec<_> = (0..n)
        .map(|v| dists.iter().filter_map(|d| d.distance(v)).min().expect("graph is connected"))
        .collect();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (nearest[v], v));

    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut regions = vec![VertexSet::empty(n); roots.len()];
    for (i, &r) in roots.iter().enumerate() {
        owner[r] = Some(i);
        regions[i].insert(r);
    }
    for v in order {
        if owner[v].is_some() {
            continue;
        }
        let robot = g
            .neighbors(v)
            .iter()
            .filter(|&&(u, e)| nearest[u] + g.edge(e).weight == nearest[v])
            .filter_map(|&(u, _)| owner[u])
            .min_by_key(|&i| (regions[i].len(), i))
            .expect("a settled shortest-path predecessor exists");
        owner[v] = Some(robot);
        regions[robot].insert(v);
    }
    regions
}

/// One MST per Voronoi region, rooted at the region's root.
pub fn initial_solution(g: &TerrainGraph, roots: &[VertexId]) -> Result<MmrtcSolution, WarmstartError> {
    let regions = voronoi_regions(g, roots);
    mst_forest(g, &regions, roots)
}

/// One MST per residual graph.
pub fn mst_warmstart(g: &TerrainGraph, residuals: &[VertexSet], roots: &[VertexId]) -> Result<MmrtcSolution, WarmstartError> {
    mst_forest(g, residuals, roots)
}

/// The lighter of the Voronoi forest (when it fits inside every residual) and
/// the residual MSTs; the Voronoi forest wins ties.
pub fn best_warmstart(g: &TerrainGraph, residuals: &[VertexSet], roots: &[VertexId]) -> Result<MmrtcSolution, WarmstartError> {
    let mst = mst_warmstart(g, residuals, roots)?;
    let vor = initial_solution(g, roots)?;
    let fits = vor.trees.iter().zip(residuals).all(|(t, r)| t.vertex_set(g).iter().all(|v| r.contains(v)));
    Ok(if fits && vor.makespan <= mst.makespan { vor } else { mst })
}

fn mst_forest(g: &TerrainGraph, sets: &[VertexSet], roots: &[VertexId]) -> Result<MmrtcSolution, WarmstartError> {
    let trees = sets
        .iter()
        .zip(roots)
        .enumerate()
        .map(|(robot, (set, &root))| mst_within(g, set, root).map_err(|source| WarmstartError::Graph { robot, source }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MmrtcSolution::new(trees, g))
}

/// Flow carried by edge `edge` into endpoint `vertex`, as `numerator / n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowShare {
    pub edge: EdgeId,
    pub vertex: VertexId,
    pub numerator: usize,
}

impl FlowShare {
    pub fn value(&self, n: usize) -> f64 {
        self.numerator as f64 / n as f64
    }
}

/// Flow shares for a tree oriented from its root. For an edge from parent
/// `u` to child `v` whose subtree has `s` vertices, `v` receives `1 - s/n`
/// and `u` receives `s/n`. Every non-root vertex then collects exactly
/// `1 - 1/n`, and the root collects `(|T| - 1)/n`.
///
/// Returns `None` when the edge set is not a tree containing the root.
pub fn flow_assignment(tree: &Tree, g: &TerrainGraph, n: usize) -> Option<Vec<FlowShare>> {
    let order = tree.orient(g)?;
    let mut size = std::collections::HashMap::with_capacity(order.len() + 1);
    for &(v, _, _) in &order {
        size.insert(v, 1usize);
    }
    for &(v, parent, _) in order.iter().rev() {
        let s = size[&v];
        if parent != tree.root {
            *size.get_mut(&parent).expect("parent precedes child") += s;
        }
    }
    let mut shares = Vec::with_capacity(2 * order.len());
    for &(child, parent, edge) in &order {
        let s = size[&child];
        debug_assert!(s <= n);
        shares.push(FlowShare { edge, vertex: child, numerator: n - s });
        shares.push(FlowShare { edge, vertex: parent, numerator: s });
    }
    shares.sort_by_key(|f| (f.edge, f.vertex));
    Some(shares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::{build_graph, root_vertices, Instance};
    use crate::weight::Weight;

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
    fn best_warmstart_prefers_voronoi_when_it_fits() {
        let (g, roots) = setup("mmrtc 1\n1 4 2 0\n1 1 1 1\n0 0\n0 3\n");
        let full = vec![g.all_vertices(); 2];
        let s = best_warmstart(&g, &full, &roots).unwrap();
        assert_eq!(s.makespan, Weight::ONE);
        // Robot 0 may not enter vertex 1, so the Voronoi forest does not fit.
        let narrow = vec![VertexSet::from_ids(4, [0]), g.all_vertices()];
        let s = best_warmstart(&g, &narrow, &roots).unwrap();
        assert_eq!(s.makespan, Weight::from_milli(3000));
        assert_eq!(s.trees[0].edges, Vec::<usize>::new());
    }

    #[test]
    fn regions_on_paths() {
        let (g, roots) = setup("mmrtc 1\n1 4 2 0\n1 1 1 1\n0 0\n0 3\n");
        let r = voronoi_regions(&g, &roots);
        assert_eq!((ids(&r[0]), ids(&r[1])), (vec![0, 1], vec![2, 3]));
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let r = voronoi_regions(&g, &roots);
        assert_eq!((ids(&r[0]), ids(&r[1])), (vec![0, 1], vec![2]));
        let (g, roots) = setup("mmrtc 1\n2 2 1 0\n1 1\n1 1\n1 1\n");
        assert_eq!(voronoi_regions(&g, &roots)[0].len(), 4);
    }

    #[test]
    fn initial_solution_on_unit_square() {
        let (g, roots) = setup("mmrtc 1\n2 2 2 0\n1 1\n1 1\n0 0\n1 1\n");
        let s = initial_solution(&g, &roots).unwrap();
        assert_eq!(s.makespan, Weight::ONE);
        assert_eq!(s.trees[0].vertex_set(&g).len() + s.trees[1].vertex_set(&g).len(), 4);
    }

    #[test]
    fn path_flow_shares() {
        let (g, _) = setup("mmrtc 1\n1 3 1 0\n1 1 1\n0 0\n");
        let shares = flow_assignment(&Tree::new(0, vec![0, 1]), &g, 3).unwrap();
        let got: Vec<(usize, usize, usize)> = shares.iter().map(|s| (s.edge, s.vertex, s.numerator)).collect();
        // edge 0 = (a, b), edge 1 = (b, c); s(b) = 2, s(c) = 1
        assert_eq!(got, vec![(0, 0, 2), (0, 1, 1), (1, 1, 1), (1, 2, 2)]);
    }

    #[test]
    fn star_flow_shares() {
        // plus shape: center (1,1) with four arms; use three arms
        let (g, _) = setup("mmrtc 1\n3 3 1 0\n# 1 #\n1 1 1\n# # #\n1 1\n");
        let center = g.vertex_at(1, 1).unwrap();
        let edges: Vec<EdgeId> = g.neighbors(center).iter().map(|&(_, e)| e).collect();
        assert_eq!(edges.len(), 3);
        let shares = flow_assignment(&Tree::new(center, edges), &g, 4).unwrap();
        for s in shares {
            let expect = if s.vertex == center { 1 } else { 3 };
            assert_eq!(s.numerator, expect);
        }
    }

    #[test]
    fn singleton_has_no_flows() {
        let (g, _) = setup("mmrtc 1\n1 1 1 0\n1\n0 0\n");
        assert!(flow_assignment(&Tree::singleton(0), &g, 1).unwrap().is_empty());
    }
}
