//! The flow-based MIP model for min-max rooted tree cover.
//!
//! Per robot `i` over its residual graph `(V_i, E_i)` the model has binaries
//! `y_i_v` (vertex in tree) and `x_i_e` (edge in tree), two continuous flow
//! shares `f_i_e_u`, `f_i_e_v` per edge, and one shared makespan `tau`. Rows:
//!
//! - makespan: `sum_e w_e x_i_e - tau <= 0`
//! - rooted: `y_i_root = 1`
//! - tree: `sum_v y_i_v - sum_e x_i_e = 1`
//! - split: `f_i_e_u + f_i_e_v - x_i_e = 0`
//! - cap: `sum_{e ~ v} f_i_e_v <= 1 - 1/|V|`
//! - link: `x_i_e - y_i_v <= 0` for each endpoint
//! - cover: `sum_i y_i_v >= 1` for every vertex of the full graph

mod mps;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terrain::{EdgeId, TerrainGraph, Tree, VertexId, VertexSet};
use crate::warmstart::flow_assignment;
use crate::weight::Weight;

pub use mps::export_mps;

/// Tolerance for treating a binary value as integral.
pub const INTEGRALITY_TOL: f64 = 1e-6;

pub type VarId = usize;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("expected {expected} residual graphs, got {found}")]
    RobotCount { expected: usize, found: usize },
    #[error("vertex {vertex} is excluded from every residual graph")]
    InfeasibleReduction { vertex: VertexId },
    #[error("root {root} of robot {robot} is missing from its residual graph")]
    InvalidResidual { robot: usize, root: VertexId },
    #[error("robot {robot} uses edge {edge} which is not in its residual graph")]
    WarmstartMismatch { robot: usize, edge: EdgeId },
    #[error("warm start tree of robot {robot} is not a tree rooted at its root")]
    WarmstartNotTree { robot: usize },
    #[error("solver output for robot {robot} is not a tree: {reason}")]
    SolverOutputInvalid { robot: usize, reason: String },
    #[error("assignment is missing binary variables: {0:?}")]
    MissingValues(Vec<String>),
    #[error("variable {name} = {value} is not integral")]
    NonIntegral { name: String, value: f64 },
    #[error("duplicate name `{0}` in model")]
    NameCollision(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowGroup {
    Makespan,
    Rooted,
    Tree,
    FlowSplit,
    FlowCap,
    Link,
    Cover,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub group: RowGroup,
    pub terms: Vec<(VarId, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, c)| c * values[v]).sum()
    }

    /// Amount by which the row is violated (0 when satisfied).
    pub fn violation(&self, values: &[f64]) -> f64 {
        let lhs = self.activity(values);
        match self.sense {
            Sense::Le => (lhs - self.rhs).max(0.0),
            Sense::Ge => (self.rhs - lhs).max(0.0),
            Sense::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// Solver-side values keyed by variable name.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VarAssignment(pub BTreeMap<String, f64>);

impl VarAssignment {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-robot variable index.
#[derive(Clone, Debug, Default)]
pub struct RobotVars {
    pub y: BTreeMap<VertexId, VarId>,
    pub x: BTreeMap<EdgeId, VarId>,
    /// Keyed by (edge, endpoint).
    pub f: BTreeMap<(EdgeId, VertexId), VarId>,
}

#[derive(Clone, Debug)]
pub struct MipModel {
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
    robots: Vec<RobotVars>,
    roots: Vec<VertexId>,
    tau: VarId,
    full_vertex_count: usize,
}

/// k rooted trees and their makespan (largest tree weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmrtcSolution {
    pub trees: Vec<Tree>,
    pub makespan: Weight,
}

impl MmrtcSolution {
    pub fn new(trees: Vec<Tree>, g: &TerrainGraph) -> Self {
        let makespan = trees.iter().map(|t| t.weight(g)).max().unwrap_or(Weight::ZERO);
        MmrtcSolution { trees, makespan }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelStats {
    pub variables: usize,
    pub binaries: usize,
    pub continuous: usize,
    pub constraints: usize,
}

/// Optional knobs for model construction.
#[derive(Clone, Copy, Debug, Default)]
pub struct ModelOptions {
    /// Upper bound on `tau`.
    pub tau_cutoff: Option<f64>,
}

/// Builds the model over the residual vertex sets (one per robot; residual
/// edges are the edges of `g` induced by each set).
pub fn build_model(
    g: &TerrainGraph,
    residuals: &[VertexSet],
    roots: &[VertexId],
    options: ModelOptions,
) -> Result<MipModel, ModelError> {
    if residuals.len() != roots.len() {
        return Err(ModelError::RobotCount { expected: roots.len(), found: residuals.len() });
    }
    for (robot, (res, &root)) in residuals.iter().zip(roots).enumerate() {
        if !res.contains(root) {
            return Err(ModelError::InvalidResidual { robot, root });
        }
    }
    if let Some(vertex) = (0..g.vertex_count()).find(|&v| residuals.iter().all(|r| !r.contains(v))) {
        return Err(ModelError::InfeasibleReduction { vertex });
    }

    let n = g.vertex_count();
    let cap = 1.0 - 1.0 / n as f64;
    let mut variables = Vec::new();
    let mut constraints = Vec::new();
    let mut robots = Vec::with_capacity(roots.len());

    let add_var = |variables: &mut Vec<Variable>, name: String, kind: VarKind| {
        let upper = (kind == VarKind::Binary).then_some(1.0);
        variables.push(Variable { name, kind, lower: 0.0, upper });
        variables.len() - 1
    };

    let residual_edges: Vec<Vec<EdgeId>> = residuals
        .iter()
        .map(|res| (0..g.edge_count()).filter(|&e| res.contains(g.edge(e).u) && res.contains(g.edge(e).v)).collect())
        .collect();

    for (i, res) in residuals.iter().enumerate() {
        let mut vars = RobotVars::default();
        for v in res.iter() {
            vars.y.insert(v, add_var(&mut variables, format!("y_{i}_{v}"), VarKind::Binary));
        }
        for &e in &residual_edges[i] {
            vars.x.insert(e, add_var(&mut variables, format!("x_{i}_{e}"), VarKind::Binary));
        }
        for &e in &residual_edges[i] {
            let edge = g.edge(e);
            for end in [edge.u, edge.v] {
                vars.f.insert((e, end), add_var(&mut variables, format!("f_{i}_{e}_{end}"), VarKind::Continuous));
            }
        }
        robots.push(vars);
    }
    let tau = add_var(&mut variables, "tau".to_string(), VarKind::Continuous);
    if let Some(cut) = options.tau_cutoff {
        variables[tau].upper = Some(cut);
    }

    for (i, vars) in robots.iter().enumerate() {
        let edges = &residual_edges[i];
        let mut terms: Vec<(VarId, f64)> = edges.iter().map(|&e| (vars.x[&e], g.edge(e).weight.as_f64())).collect();
        terms.push((tau, -1.0));
        constraints.push(Constraint {
            name: format!("makespan_{i}"),
            group: RowGroup::Makespan,
            terms,
            sense: Sense::Le,
            rhs: 0.0,
        });
        constraints.push(Constraint {
            name: format!("rooted_{i}"),
            group: RowGroup::Rooted,
            terms: vec![(vars.y[&roots[i]], 1.0)],
            sense: Sense::Eq,
            rhs: 1.0,
        });
        let mut terms: Vec<(VarId, f64)> = vars.y.values().map(|&y| (y, 1.0)).collect();
        terms.extend(edges.iter().map(|e| (vars.x[e], -1.0)));
        constraints.push(Constraint { name: format!("tree_{i}"), group: RowGroup::Tree, terms, sense: Sense::Eq, rhs: 1.0 });

        for &e in edges {
            let edge = g.edge(e);
            constraints.push(Constraint {
                name: format!("split_{i}_{e}"),
                group: RowGroup::FlowSplit,
                terms: vec![(vars.f[&(e, edge.u)], 1.0), (vars.f[&(e, edge.v)], 1.0), (vars.x[&e], -1.0)],
                sense: Sense::Eq,
                rhs: 0.0,
            });
        }
        for &v in vars.y.keys() {
            let terms: Vec<(VarId, f64)> = g
                .neighbors(v)
                .iter()
                .filter_map(|&(_, e)| vars.f.get(&(e, v)).map(|&f| (f, 1.0)))
                .collect();
            if terms.is_empty() {
                continue;
            }
            constraints.push(Constraint { name: format!("cap_{i}_{v}"), group: RowGroup::FlowCap, terms, sense: Sense::Le, rhs: cap });
        }
        for &e in edges {
            let edge = g.edge(e);
            for end in [edge.u, edge.v] {
                constraints.push(Constraint {
                    name: format!("link_{i}_{e}_{end}"),
                    group: RowGroup::Link,
                    terms: vec![(vars.x[&e], 1.0), (vars.y[&end], -1.0)],
                    sense: Sense::Le,
                    rhs: 0.0,
                });
            }
        }
    }
    for v in 0..n {
        let terms: Vec<(VarId, f64)> = robots.iter().filter_map(|r| r.y.get(&v).map(|&y| (y, 1.0))).collect();
        constraints.push(Constraint { name: format!("cover_{v}"), group: RowGroup::Cover, terms, sense: Sense::Ge, rhs: 1.0 });
    }

    Ok(MipModel { variables, constraints, robots, roots: roots.to_vec(), tau, full_vertex_count: n })
}

impl MipModel {
    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn robots(&self) -> &[RobotVars] {
        &self.robots
    }

    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn tau(&self) -> VarId {
        self.tau
    }

    pub fn full_vertex_count(&self) -> usize {
        self.full_vertex_count
    }

    pub fn stats(&self) -> ModelStats {
        let binaries = self.variables.iter().filter(|v| v.kind == VarKind::Binary).count();
        ModelStats {
            variables: self.variables.len(),
            binaries,
            continuous: self.variables.len() - binaries,
            constraints: self.constraints.len(),
        }
    }

    /// Dense values in variable order. Binaries must be present; missing
    /// continuous variables read as zero.
    pub fn dense_values(&self, a: &VarAssignment) -> Result<Vec<f64>, ModelError> {
        let mut missing = Vec::new();
        let values = self
            .variables
            .iter()
            .map(|var| match (a.get(&var.name), var.kind) {
                (Some(v), _) => v,
                (None, VarKind::Continuous) => 0.0,
                (None, VarKind::Binary) => {
                    missing.push(var.name.clone());
                    0.0
                }
            })
            .collect();
        if missing.is_empty() {
            Ok(values)
        } else {
            Err(ModelError::MissingValues(missing))
        }
    }

    /// Largest row violation together with the offending row index.
    pub fn max_violation(&self, a: &VarAssignment) -> Result<(f64, Option<usize>), ModelError> {
        let values = self.dense_values(a)?;
        let mut worst = (0.0, None);
        for (idx, c) in self.constraints.iter().enumerate() {
            let v = c.violation(&values);
            if v > worst.0 {
                worst = (v, Some(idx));
            }
        }
        for (idx, var) in self.variables.iter().enumerate() {
            let x = values[idx];
            let below = (var.lower - x).max(0.0);
            let above = var.upper.map_or(0.0, |u| (x - u).max(0.0));
            if below.max(above) > worst.0 {
                worst = (below.max(above), None);
            }
        }
        Ok(worst)
    }

    /// Objective value (`tau`) under an assignment.
    pub fn objective(&self, a: &VarAssignment) -> Option<f64> {
        a.get(&self.variables[self.tau].name)
    }
}

pub fn model_stats(m: &MipModel) -> ModelStats {
    m.stats()
}

/// Reads trees back from solver values: tree i holds the edges whose `x`
/// exceeds one half. The makespan is recomputed from edge weights.
pub fn extract_solution(m: &MipModel, a: &VarAssignment, g: &TerrainGraph) -> Result<MmrtcSolution, ModelError> {
    let values = m.dense_values(a)?;
    for (idx, var) in m.variables.iter().enumerate() {
        if var.kind == VarKind::Binary {
            let v = values[idx];
            if (v - v.round()).abs() > INTEGRALITY_TOL {
                return Err(ModelError::NonIntegral { name: var.name.clone(), value: v });
            }
        }
    }
    let mut trees = Vec::with_capacity(m.robots.len());
    for (robot, vars) in m.robots.iter().enumerate() {
        let root = m.roots[robot];
        let edges: Vec<EdgeId> = vars.x.iter().filter(|&(_, &id)| values[id] > 0.5).map(|(&e, _)| e).collect();
        let tree = Tree::new(root, edges);
        if tree.orient(g).is_none() {
            let verts = tree.vertex_set(g);
            let reason = if tree.edges.len() + 1 != verts.len() {
                format!("{} edges over {} vertices", tree.edges.len(), verts.len())
            } else {
                "edge set is disconnected from the root".to_string()
            };
            return Err(ModelError::SolverOutputInvalid { robot, reason });
        }
        trees.push(tree);
    }
    Ok(MmrtcSolution::new(trees, g))
}

/// Full assignment for a feasible solution: `x`, `y` from tree membership,
/// flow shares from subtree sizes, `tau` from the makespan.
pub fn apply_warmstart(m: &MipModel, s: &MmrtcSolution, g: &TerrainGraph) -> Result<VarAssignment, ModelError> {
    if s.trees.len() != m.robots.len() {
        return Err(ModelError::RobotCount { expected: m.robots.len(), found: s.trees.len() });
    }
    let mut values: HashMap<VarId, f64> = HashMap::new();
    let n = m.full_vertex_count;
    for (robot, (tree, vars)) in s.trees.iter().zip(&m.robots).enumerate() {
        if tree.root != m.roots[robot] {
            return Err(ModelError::WarmstartNotTree { robot });
        }
        for &e in &tree.edges {
            let id = vars.x.get(&e).ok_or(ModelError::WarmstartMismatch { robot, edge: e })?;
            values.insert(*id, 1.0);
        }
        for v in tree.vertex_set(g).iter() {
            let id = vars.y.get(&v).ok_or(ModelError::WarmstartMismatch {
                robot,
                edge: tree.edges.iter().copied().find(|&e| g.edge(e).touches(v)).unwrap_or(usize::MAX),
            })?;
            values.insert(*id, 1.0);
        }
        let flows = flow_assignment(tree, g, n).ok_or(ModelError::WarmstartNotTree { robot })?;
        for share in flows {
            values.insert(vars.f[&(share.edge, share.vertex)], share.value(n));
        }
    }
    values.insert(m.tau, s.makespan.as_f64());
    let mut out = VarAssignment::default();
    for (idx, var) in m.variables.iter().enumerate() {
        out.set(var.name.clone(), values.get(&idx).copied().unwrap_or(0.0));
    }
    Ok(out)
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

    fn full(g: &TerrainGraph, k: usize) -> Vec<VertexSet> {
        vec![g.all_vertices(); k]
    }

    #[test]
    fn single_vertex_model() {
        let (g, roots) = setup("mmrtc 1\n1 1 1 0\n1\n0 0\n");
        let m = build_model(&g, &full(&g, 1), &roots, ModelOptions::default()).unwrap();
        assert_eq!(m.stats().variables, 2);
        let s = MmrtcSolution::new(vec![Tree::singleton(0)], &g);
        let a = apply_warmstart(&m, &s, &g).unwrap();
        assert_eq!(a.get("tau"), Some(0.0));
        assert_eq!(a.get("y_0_0"), Some(1.0));
        assert_eq!(m.max_violation(&a).unwrap().0, 0.0);
    }

    #[test]
    fn variable_count_formula_small() {
        let (g, roots) = setup("mmrtc 1\n1 2 1 0\n1 1\n0 0\n");
        let m = build_model(&g, &full(&g, 1), &roots, ModelOptions::default()).unwrap();
        let st = m.stats();
        assert_eq!(st.variables, 6);
        assert_eq!(st.binaries, 3);
        assert_eq!(st.continuous, 3);
    }

    #[test]
    fn residual_errors() {
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let only = |ids: &[usize]| VertexSet::from_ids(3, ids.iter().copied());
        let err = build_model(&g, &[only(&[0]), only(&[2])], &roots, ModelOptions::default()).unwrap_err();
        assert_eq!(err, ModelError::InfeasibleReduction { vertex: 1 });
        let err = build_model(&g, &[only(&[1, 2]), only(&[0, 1, 2])], &roots, ModelOptions::default()).unwrap_err();
        assert_eq!(err, ModelError::InvalidResidual { robot: 0, root: 0 });
    }

    #[test]
    fn cover_row_skips_excluded_robots() {
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let res = vec![VertexSet::from_ids(3, [0, 1]), VertexSet::from_ids(3, [1, 2])];
        let m = build_model(&g, &res, &roots, ModelOptions::default()).unwrap();
        let cover0 = m.constraints().iter().find(|c| c.name == "cover_0").unwrap();
        assert_eq!(cover0.terms.len(), 1);
        let cover1 = m.constraints().iter().find(|c| c.name == "cover_1").unwrap();
        assert_eq!(cover1.terms.len(), 2);
        // 2 robots x (2 + 3*1) + 1
        assert_eq!(m.stats().variables, 11);
    }

    #[test]
    fn path_flow_rows_are_tight() {
        let (g, roots) = setup("mmrtc 1\n1 3 1 0\n1 1 1\n0 0\n");
        let m = build_model(&g, &full(&g, 1), &roots, ModelOptions::default()).unwrap();
        let s = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1])], &g);
        let a = apply_warmstart(&m, &s, &g).unwrap();
        assert!((a.get("f_0_0_1").unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((a.get("f_0_1_1").unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let values = m.dense_values(&a).unwrap();
        let cap_b = m.constraints().iter().find(|c| c.name == "cap_0_1").unwrap();
        assert!((cap_b.activity(&values) - 2.0 / 3.0).abs() < 1e-15);
        assert!(m.max_violation(&a).unwrap().0 < 1e-12);
    }

    #[test]
    fn extraction_round_trip_and_errors() {
        let (g, roots) = setup("mmrtc 1\n2 2 2 0\n1 1\n1 1\n0 0\n1 1\n");
        let m = build_model(&g, &full(&g, 2), &roots, ModelOptions::default()).unwrap();
        let s = MmrtcSolution::new(vec![Tree::new(0, vec![0]), Tree::new(3, vec![3])], &g);
        let a = apply_warmstart(&m, &s, &g).unwrap();
        assert_eq!(extract_solution(&m, &a, &g).unwrap(), s);
        assert_eq!(s.makespan, Weight::ONE);

        let mut cyclic = a.clone();
        for e in 0..4 {
            cyclic.set(format!("x_0_{e}"), 1.0);
        }
        assert!(matches!(extract_solution(&m, &cyclic, &g), Err(ModelError::SolverOutputInvalid { robot: 0, .. })));

        let mut frac = a.clone();
        frac.set("x_1_3", 0.7);
        assert!(matches!(extract_solution(&m, &frac, &g), Err(ModelError::NonIntegral { .. })));

        let mut missing = a;
        missing.0.remove("y_1_2");
        assert_eq!(extract_solution(&m, &missing, &g), Err(ModelError::MissingValues(vec!["y_1_2".into()])));
    }

    #[test]
    fn warmstart_mismatch_on_removed_edge() {
        let (g, roots) = setup("mmrtc 1\n1 3 2 0\n1 1 1\n0 0\n0 2\n");
        let res = vec![VertexSet::from_ids(3, [0, 1]), VertexSet::from_ids(3, [1, 2])];
        let m = build_model(&g, &res, &roots, ModelOptions::default()).unwrap();
        let s = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1]), Tree::singleton(2)], &g);
        assert_eq!(apply_warmstart(&m, &s, &g), Err(ModelError::WarmstartMismatch { robot: 0, edge: 1 }));
    }

    #[test]
    fn single_vertex_residual_extracts_singleton() {
        let (g, roots) = setup("mmrtc 1\n1 2 2 0\n1 1\n0 0\n0 1\n");
        let res = vec![VertexSet::from_ids(2, [0]), g.all_vertices()];
        let m = build_model(&g, &res, &roots, ModelOptions::default()).unwrap();
        let mut a = VarAssignment::default();
        for (name, v) in [("y_0_0", 1.0), ("y_1_0", 1.0), ("y_1_1", 1.0), ("x_1_0", 1.0)] {
            a.set(name, v);
        }
        let s = extract_solution(&m, &a, &g).unwrap();
        assert_eq!(s.trees[0], Tree::singleton(0));
        assert_eq!(s.makespan, Weight::ONE);
    }
}
