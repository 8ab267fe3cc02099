//! Solution JSON: trees and coverage paths in grid coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::MmrtcSolution;
use crate::stc::CoveragePlan;
use crate::terrain::{DecompGraph, TerrainGraph, Tree};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("invalid solution JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("tree {tree}: no free cell at {at:?}")]
    UnknownCell { tree: usize, at: [usize; 2] },
    #[error("tree {tree}: cells {a:?} and {b:?} are not adjacent")]
    NotAnEdge { tree: usize, a: [usize; 2], b: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub root: [usize; 2],
    pub edges: Vec<[[usize; 2]; 2]>,
}

/// Paths are sequences of decomposition-grid coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageJson {
    pub paths: Vec<Vec<[usize; 2]>>,
    pub times: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub makespan: f64,
    pub trees: Vec<TreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage: Option<CoverageJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<serde_json::Value>,
}

impl SolutionFile {
    pub fn new(s: &MmrtcSolution, g: &TerrainGraph) -> Self {
        let at = |v: usize| [g.vertex(v).row, g.vertex(v).col];
        let trees = s
            .trees
            .iter()
            .map(|t| TreeJson {
                root: at(t.root),
                edges: t.edges.iter().map(|&e| [at(g.edge(e).u), at(g.edge(e).v)]).collect(),
            })
            .collect();
        SolutionFile { makespan: s.makespan.as_f64(), trees, coverage: None, stats: None }
    }

    pub fn with_coverage(mut self, plan: &CoveragePlan, d: &DecompGraph) -> Self {
        self.coverage = Some(CoverageJson {
            paths: plan.paths.iter().map(|p| p.iter().map(|&c| [d.cell(c).row, d.cell(c).col]).collect()).collect(),
            times: plan.times.iter().map(|t| t.as_f64()).collect(),
        });
        self
    }

    pub fn with_stats(mut self, stats: serde_json::Value) -> Self {
        self.stats = Some(stats);
        self
    }

    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }

    /// Trees as graph ids. The stored makespan is ignored and recomputed.
    pub fn to_solution(&self, g: &TerrainGraph) -> Result<MmrtcSolution, SchemaError> {
        let mut trees = Vec::with_capacity(self.trees.len());
        for (tree, t) in self.trees.iter().enumerate() {
            let id = |at: [usize; 2]| g.vertex_at(at[0], at[1]).ok_or(SchemaError::UnknownCell { tree, at });
            let root = id(t.root)?;
            let mut edges = Vec::with_capacity(t.edges.len());
            for &[a, b] in &t.edges {
                let e = g.edge_between(id(a)?, id(b)?).ok_or(SchemaError::NotAnEdge { tree, a, b })?;
                edges.push(e);
            }
            trees.push(Tree::new(root, edges));
        }
        Ok(MmrtcSolution::new(trees, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stc::build_plan;
    use crate::terrain::{build_graph, decompose, Instance};

    #[test]
    fn round_trip() {
        let inst = Instance::parse("mmrtc 1\n1 4 2 1\n1 2.5 1 3\n0 0\n0 3\n").unwrap();
        let g = build_graph(&inst);
        let d = decompose(&g);
        let s = MmrtcSolution::new(vec![Tree::new(0, vec![0]), Tree::new(3, vec![2, 1])], &g);
        let plan = build_plan(&s, &g, &d).unwrap();
        let file = SolutionFile::new(&s, &g).with_coverage(&plan, &d).with_stats(serde_json::json!({"gap": 0.0}));
        let text = file.to_json();
        let back = SolutionFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_solution(&g).unwrap(), s);
        assert_eq!(file.trees[1].root, [0, 3]);
        assert_eq!(file.coverage.as_ref().unwrap().paths[0][0], [0, 0]);
    }

    #[test]
    fn schema_errors() {
        let inst = Instance::parse("mmrtc 1\n2 2 1 0\n1 1\n1 1\n0 0\n").unwrap();
        let g = build_graph(&inst);
        assert!(SolutionFile::parse("{\"makespan\": 1}").is_err());
        assert!(SolutionFile::parse("{\"makespan\": 1, \"trees\": [], \"extra\": 2}").is_err());
        let f = SolutionFile::parse("{\"makespan\": 1, \"trees\": [{\"root\": [0,0], \"edges\": [[[0,0],[1,1]]]}]}").unwrap();
        assert!(matches!(f.to_solution(&g), Err(SchemaError::NotAnEdge { .. })));
        let f = SolutionFile::parse("{\"makespan\": 1, \"trees\": [{\"root\": [5,0], \"edges\": []}]}").unwrap();
        assert!(matches!(f.to_solution(&g), Err(SchemaError::UnknownCell { .. })));
    }
}
