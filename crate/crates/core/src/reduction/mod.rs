//! Per-robot inferior graphs that shrink the MIP.
//!
//! For each robot `i` and every other robot `j` a heuristic marks a
//! sub-component `H_ij` of vertices that `i` should leave to `j`. The union
//! `H_i` is removed from `i`'s copy of the graph. Because `H_ij` and `H_ji`
//! never share a vertex, every removed vertex stays available to some other
//! robot, so the reduced model keeps a feasible cover.

mod connectivity;
mod prh;
mod srh;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terrain::{boundary_vertices, dijkstra, is_connected, EdgeId, ShortestPaths, TerrainGraph, VertexId, VertexSet};
use crate::weight::Weight;

pub use connectivity::connectivity_check;
pub use prh::{parabola_width, prh_inferior, prh_sub_component, ParabolaFrame};
pub use srh::{ffs_tree, srh_budget, srh_inferior};

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("roots must be distinct (robots {0} and {1} share a vertex)")]
    CoincidentRoots(usize, usize),
    #[error("heuristic invariant violated: {0}")]
    InvariantViolated(String),
}

/// Which removal heuristic to run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "heuristic", rename_all = "lowercase")]
pub enum ReductionParams {
    None,
    /// Parabolic removal; `alpha = inf` removes nothing.
    Prh { alpha: f64 },
    /// Subgraph removal; `beta = 0` removes nothing.
    Srh { beta: f64 },
}

impl ReductionParams {
    pub fn validate(&self) -> Result<(), ReductionError> {
        match *self {
            ReductionParams::None => Ok(()),
            ReductionParams::Prh { alpha } if alpha.is_nan() || alpha < 0.0 => {
                Err(ReductionError::InvalidParameter(format!("alpha must be >= 0, got {alpha}")))
            }
            ReductionParams::Srh { beta } if !beta.is_finite() || beta < 0.0 => {
                Err(ReductionError::InvalidParameter(format!("beta must be finite and >= 0, got {beta}")))
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ReductionParams::None => "MIP".to_string(),
            ReductionParams::Prh { alpha } => format!("MIP-PRH(alpha={alpha})"),
            ReductionParams::Srh { beta } => format!("MIP-SRH(beta={beta})"),
        }
    }
}

impl fmt::Display for ReductionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A vertex set plus edges among those vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub edges: BTreeSet<EdgeId>,
}

impl Subgraph {
    pub fn empty(universe: usize) -> Self {
        Subgraph { vertices: VertexSet::empty(universe), edges: BTreeSet::new() }
    }

    /// The subgraph of `g` induced by `vertices`.
    pub fn induced(g: &TerrainGraph, vertices: VertexSet) -> Self {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| vertices.contains(e.u) && vertices.contains(e.v))
            .map(|(id, _)| id)
            .collect();
        Subgraph { vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Drops vertices and the listed edges, then any edge left dangling.
    pub fn remove(&mut self, g: &TerrainGraph, vertices: &[VertexId], edges: &[EdgeId]) {
        for &v in vertices {
            self.vertices.remove(v);
        }
        for e in edges {
            self.edges.remove(e);
        }
        let verts = &self.vertices;
        self.edges.retain(|&e| verts.contains(g.edge(e).u) && verts.contains(g.edge(e).v));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    None,
    Prh { alpha: f64 },
    Srh { beta: f64 },
}

/// The part of robot `robot`'s inferior graph attributed to robot `other`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubComponent {
    pub other: usize,
    pub graph: Subgraph,
}

/// `H_i`: the union of the robot's sub-components, after connectivity repair.
#[derive(Clone, Debug, PartialEq)]
pub struct InferiorGraph {
    pub robot: usize,
    pub parts: Vec<SubComponent>,
    pub union: Subgraph,
    pub provenance: Provenance,
}

impl InferiorGraph {
    pub fn empty(robot: usize, universe: usize, provenance: Provenance) -> Self {
        InferiorGraph { robot, parts: Vec::new(), union: Subgraph::empty(universe), provenance }
    }

    pub fn from_parts(robot: usize, universe: usize, parts: Vec<SubComponent>, provenance: Provenance) -> Self {
        let mut union = Subgraph::empty(universe);
        for p in &parts {
            union.vertices.union_with(&p.graph.vertices);
            union.edges.extend(p.graph.edges.iter().copied());
        }
        InferiorGraph { robot, parts, union, provenance }
    }

    pub fn part(&self, other: usize) -> Option<&Subgraph> {
        self.parts.iter().find(|p| p.other == other).map(|p| &p.graph)
    }

    /// Vertices left to this robot.
    pub fn residual_vertices(&self) -> VertexSet {
        self.union.vertices.complement()
    }

    /// Removes vertices/edges from the union and from every part.
    pub(crate) fn carve(&mut self, g: &TerrainGraph, vertices: &[VertexId], edges: &[EdgeId]) {
        self.union.remove(g, vertices, edges);
        for p in &mut self.parts {
            p.graph.remove(g, vertices, edges);
        }
    }
}

/// Distances and boundary data shared by both heuristics.
pub struct RootGeometry {
    pub roots: Vec<VertexId>,
    pub dists: Vec<ShortestPaths>,
    pub boundary: VertexSet,
}

impl RootGeometry {
    pub fn new(g: &TerrainGraph, roots: &[VertexId]) -> Self {
        RootGeometry {
            roots: roots.to_vec(),
            dists: roots.iter().map(|&r| dijkstra(g, r)).collect(),
            boundary: boundary_vertices(g),
        }
    }

    pub fn d(&self, robot: usize, v: VertexId) -> Weight {
        self.dists[robot].to(v)
    }

    /// `d(r_i, r_j)`.
    pub fn root_distance(&self, i: usize, j: usize) -> Weight {
        self.d(i, self.roots[j])
    }

    /// `c_ij`: boundary vertex maximising `d(r_i, v) - d(r_j, v)`.
    pub fn farthest_boundary_vertex(&self, i: usize, j: usize) -> VertexId {
        farthest_boundary_vertex(&self.boundary, &self.dists[i], &self.dists[j])
    }
}

/// Standard logistic function; `+inf` maps to 1.
pub fn logistic(x: f64) -> f64 {
    if x == f64::INFINITY {
        1.0
    } else {
        1.0 / (1.0 + (-x).exp())
    }
}

/// Argmax over `boundary` of `d_i(v) - d_j(v)`, ties to the smallest id.
pub fn farthest_boundary_vertex(boundary: &VertexSet, from_i: &ShortestPaths, from_j: &ShortestPaths) -> VertexId {
    let mut best: Option<(i128, VertexId)> = None;
    for v in boundary.iter() {
        let diff = from_i.to(v).ticks() as i128 - from_j.to(v).ticks() as i128;
        if best.is_none_or(|(b, _)| diff > b) {
            best = Some((diff, v));
        }
    }
    best.expect("boundary is nonempty").1
}

/// Inferior graphs and residual vertex sets for every robot.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub params: ReductionParams,
    pub inferiors: Vec<InferiorGraph>,
    pub residuals: Vec<VertexSet>,
}

impl Reduction {
    /// Fraction of per-robot vertex slots removed, in [0, 1].
    pub fn removed_vertex_fraction(&self) -> f64 {
        let total: usize = self.residuals.iter().map(|r| r.universe()).sum();
        let kept: usize = self.residuals.iter().map(|r| r.len()).sum();
        if total == 0 {
            0.0
        } else {
            1.0 - kept as f64 / total as f64
        }
    }
}

/// Runs the selected heuristic for every robot, repairs connectivity, and
/// checks the disjointness precondition and its completeness consequences.
pub fn build_reduction(g: &TerrainGraph, roots: &[VertexId], params: ReductionParams) -> Result<Reduction, ReductionError> {
    params.validate()?;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots[i] == roots[j] {
                return Err(ReductionError::CoincidentRoots(i, j));
            }
        }
    }
    let n = g.vertex_count();
    let geo = RootGeometry::new(g, roots);
    let mut inferiors: Vec<InferiorGraph> = (0..roots.len())
        .map(|i| match params {
            ReductionParams::None => InferiorGraph::empty(i, n, Provenance::None),
            ReductionParams::Prh { alpha } => prh::prh_raw(g, &geo, i, alpha),
            ReductionParams::Srh { beta } => srh::srh_raw(g, &geo, i, beta),
        })
        .collect();
    check_pairwise_disjoint(&inferiors)?;
    for inf in &mut inferiors {
        let before = inf.union.vertices.len();
        connectivity_check(g, &geo.dists[inf.robot], inf);
        if inf.union.vertices.len() > before {
            return Err(ReductionError::InvariantViolated("connectivity repair grew an inferior graph".into()));
        }
    }
    let residuals: Vec<VertexSet> = inferiors.iter().map(InferiorGraph::residual_vertices).collect();
    check_completeness(g, roots, &residuals)?;
    Ok(Reduction { params, inferiors, residuals })
}

fn check_pairwise_disjoint(inferiors: &[InferiorGraph]) -> Result<(), ReductionError> {
    for a in inferiors {
        for part in &a.parts {
            if let Some(back) = inferiors[part.other].part(a.robot) {
                if !part.graph.vertices.is_disjoint(&back.vertices) {
                    return Err(ReductionError::InvariantViolated(format!(
                        "H_{}{} and H_{}{} share a vertex",
                        a.robot, part.other, part.other, a.robot
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Residuals jointly cover `V` and each is connected and holds its root.
pub fn check_completeness(g: &TerrainGraph, roots: &[VertexId], residuals: &[VertexSet]) -> Result<(), ReductionError> {
    for v in 0..g.vertex_count() {
        if residuals.iter().all(|r| !r.contains(v)) {
            return Err(ReductionError::InvariantViolated(format!("vertex {v} is removed for every robot")));
        }
    }
    for (i, (res, &root)) in residuals.iter().zip(roots).enumerate() {
        if !res.contains(root) {
            return Err(ReductionError::InvariantViolated(format!("residual {i} lacks its root")));
        }
        if !is_connected(g, res) {
            return Err(ReductionError::InvariantViolated(format!("residual {i} is disconnected")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::{build_graph, root_vertices, Instance};

    fn setup(text: &str) -> (TerrainGraph, Vec<VertexId>) {
        let inst = Instance::parse(text).unwrap();
        let g = build_graph(&inst);
        let roots = root_vertices(&inst, &g);
        (g, roots)
    }

    #[test]
    fn logistic_values() {
        assert_eq!(logistic(0.0), 0.5);
        assert!((logistic(1.0) - 0.731_058_578_630_004_9).abs() < 1e-15);
        assert_eq!(logistic(f64::INFINITY), 1.0);
    }

    #[test]
    fn farthest_boundary_examples() {
        let (g, roots) = setup("mmrtc 1\n1 5 2 0\n1 1 1 1 1\n0 0\n0 4\n");
        let geo = RootGeometry::new(&g, &roots);
        assert_eq!(geo.farthest_boundary_vertex(0, 1), 4);
        let (g, roots) = setup("mmrtc 1\n3 3 2 0\n1 1 1\n1 1 1\n1 1 1\n0 0\n2 2\n");
        let geo = RootGeometry::new(&g, &roots);
        assert_eq!(geo.farthest_boundary_vertex(0, 1), 8);
    }

    #[test]
    fn sentinels_and_single_robot_keep_everything() {
        let (g, roots) = setup("mmrtc 1\n3 4 2 0\n1 1 1 1\n1 1 1 1\n1 1 1 1\n0 0\n2 3\n");
        for params in [ReductionParams::None, ReductionParams::Prh { alpha: f64::INFINITY }, ReductionParams::Srh { beta: 0.0 }] {
            let red = build_reduction(&g, &roots, params).unwrap();
            assert!(red.residuals.iter().all(|r| r.len() == g.vertex_count()), "{params}");
            assert_eq!(red.removed_vertex_fraction(), 0.0);
        }
        let red = build_reduction(&g, &roots[..1], ReductionParams::Srh { beta: 0.9 }).unwrap();
        assert_eq!(red.residuals[0].len(), g.vertex_count());
    }

    #[test]
    fn parameter_validation() {
        let (g, roots) = setup("mmrtc 1\n1 2 1 0\n1 1\n0 0\n");
        assert!(build_reduction(&g, &roots, ReductionParams::Prh { alpha: -1.0 }).is_err());
        assert!(build_reduction(&g, &roots, ReductionParams::Srh { beta: f64::NAN }).is_err());
        assert!(build_reduction(&g, &[0, 0], ReductionParams::None).is_err());
    }

    #[test]
    fn completeness_check_flags_uncovered_vertex() {
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let res = vec![VertexSet::from_ids(3, [0]), VertexSet::from_ids(3, [2])];
        assert!(check_completeness(&g, &roots, &res).is_err());
    }
}
