//! Feasibility checks for tree covers, written against the terrain graph
//! only so they share no code with the MIP model.

use std::fmt::Write as _;

use serde::Serialize;

use crate::model::MmrtcSolution;
use crate::terrain::{TerrainGraph, VertexId};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeCheck {
    pub robot: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `|E| = |V| - 1` and no edge closes a cycle.
    pub acyclic: bool,
    pub connected: bool,
    pub invalid_edges: Vec<usize>,
    pub weight: f64,
}

impl TreeCheck {
    pub fn ok(&self) -> bool {
        self.acyclic && self.connected && self.invalid_edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub robot_count_ok: bool,
    pub cover_ok: bool,
    pub uncovered: Vec<VertexId>,
    pub rooted_ok: bool,
    /// Robots whose tree is not rooted at their own root.
    pub root_violations: Vec<usize>,
    pub tree_ok: bool,
    pub trees: Vec<TreeCheck>,
    pub makespan: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.robot_count_ok && self.cover_ok && self.rooted_ok && self.tree_ok
    }

    pub fn to_text(&self) -> String {
        let flag = |ok: bool| if ok { "pass" } else { "FAIL" };
        let mut out = String::new();
        let _ = writeln!(out, "robots   {}", flag(self.robot_count_ok));
        let _ = writeln!(out, "cover    {}{}", flag(self.cover_ok), detail("uncovered", &self.uncovered));
        let _ = writeln!(out, "rooted   {}{}", flag(self.rooted_ok), detail("robots", &self.root_violations));
        let _ = writeln!(out, "tree     {}", flag(self.tree_ok));
        for t in self.trees.iter().filter(|t| !t.ok()) {
            let _ = writeln!(
                out,
                "  robot {}: {} vertices, {} edges, acyclic={}, connected={}{}",
                t.robot,
                t.vertices,
                t.edges,
                t.acyclic,
                t.connected,
                detail(" invalid edges", &t.invalid_edges)
            );
        }
        let _ = writeln!(out, "makespan {}", self.makespan);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn detail(label: &str, ids: &[usize]) -> String {
    if ids.is_empty() {
        String::new()
    } else {
        format!(" ({label}: {ids:?})")
    }
}

struct DisjointSet(Vec<usize>);

impl DisjointSet {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    /// False if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

pub fn validate_solution(s: &MmrtcSolution, g: &TerrainGraph, roots: &[VertexId]) -> ValidationReport {
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    let mut root_violations = Vec::new();
    let mut trees = Vec::with_capacity(s.trees.len());
    let mut makespan = Weight::ZERO;

    for (robot, tree) in s.trees.iter().enumerate() {
        if roots.get(robot) != Some(&tree.root) || tree.root >= n {
            root_violations.push(robot);
        }
        let mut members = vec![false; n];
        if tree.root < n {
            members[tree.root] = true;
        }
        let mut invalid_edges = Vec::new();
        let mut valid_edges = Vec::new();
        for &e in &tree.edges {
            if e >= g.edge_count() {
                invalid_edges.push(e);
                continue;
            }
            let edge = g.edge(e);
            members[edge.u] = true;
            members[edge.v] = true;
            valid_edges.push(e);
        }
        let mut dsu = DisjointSet((0..n).collect());
        let mut cycle = false;
        let mut weight = Weight::ZERO;
        for &e in &valid_edges {
            let edge = g.edge(e);
            cycle |= !dsu.union(edge.u, edge.v);
            weight += edge.weight;
        }
        let vertices = members.iter().filter(|&&m| m).count();
        let mut reps: Vec<usize> = (0..n).filter(|&v| members[v]).map(|v| dsu.find(v)).collect();
        reps.sort_unstable();
        reps.dedup();
        for (v, m) in members.iter().enumerate() {
            covered[v] |= *m;
        }
        makespan = makespan.max(weight);
        trees.push(TreeCheck {
            robot,
            vertices,
            edges: tree.edges.len(),
            acyclic: !cycle && tree.edges.len() + 1 == vertices,
            connected: reps.len() == 1,
            invalid_edges,
            weight: weight.as_f64(),
        });
    }

    let uncovered: Vec<VertexId> = (0..n).filter(|&v| !covered[v]).collect();
    let tree_ok = trees.iter().all(TreeCheck::ok);
    ValidationReport {
        robot_count_ok: s.trees.len() == roots.len(),
        cover_ok: uncovered.is_empty(),
        uncovered,
        rooted_ok: root_violations.is_empty(),
        root_violations,
        tree_ok,
        trees,
        makespan: makespan.as_f64(),
    }
}

/// Recomputed makespan of `s` and its gap to `bound` in percent.
pub fn makespan_and_gap(s: &MmrtcSolution, g: &TerrainGraph, bound: Option<f64>) -> (f64, Option<f64>) {
    let makespan = s
        .trees
        .iter()
        .map(|t| t.edges.iter().filter(|&&e| e < g.edge_count()).map(|&e| g.edge(e).weight).sum::<Weight>())
        .max()
        .unwrap_or(Weight::ZERO)
        .as_f64();
    (makespan, bound.map(|b| gap_percent(makespan, b)))
}

/// `(makespan - bound) / makespan` in percent; zero for a zero makespan.
pub fn gap_percent(makespan: f64, bound: f64) -> f64 {
    if makespan == 0.0 {
        0.0
    } else {
        100.0 * (makespan - bound) / makespan
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::{build_graph, root_vertices, Instance, Tree};

    fn setup() -> (TerrainGraph, Vec<VertexId>) {
        let inst = Instance::parse("mmrtc 1\n2 3 2 0\n1 1 1\n1 1 1\n0 0\n1 2\n").unwrap();
        let g = build_graph(&inst);
        let roots = root_vertices(&inst, &g);
        (g, roots)
    }

    #[test]
    fn accepts_cover_and_rejects_mutations() {
        let (g, roots) = setup();
        // 0-1-2 top row / 3-4-5 bottom row; edges: 0:(0,1) 1:(0,3) 2:(1,2) 3:(1,4) 4:(2,5) 5:(3,4) 6:(4,5)
        let good = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1, 2]), Tree::new(5, vec![6, 5])], &g);
        let rep = validate_solution(&good, &g, &roots);
        assert!(rep.is_valid(), "{}", rep.to_text());
        assert_eq!(rep.makespan, 3.0);

        let dropped = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1]), Tree::new(5, vec![6, 5])], &g);
        let rep = validate_solution(&dropped, &g, &roots);
        assert!(!rep.cover_ok);
        assert_eq!(rep.uncovered, vec![2]);

        let chord = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1, 2, 3, 5]), Tree::new(5, vec![6])], &g);
        let rep = validate_solution(&chord, &g, &roots);
        assert!(!rep.tree_ok);
        assert!(!rep.trees[0].acyclic);

        let swapped = MmrtcSolution::new(vec![Tree::new(5, vec![6, 5]), Tree::new(0, vec![0, 1, 2])], &g);
        let rep = validate_solution(&swapped, &g, &roots);
        assert!(!rep.rooted_ok);
        assert_eq!(rep.root_violations, vec![0, 1]);

        let split = MmrtcSolution::new(vec![Tree::new(0, vec![0, 4]), Tree::new(5, vec![5])], &g);
        let rep = validate_solution(&split, &g, &roots);
        assert!(!rep.trees[0].connected);
        assert!(rep.to_text().contains("FAIL"));
        assert!(rep.to_json().contains("\"tree_ok\": false"));
    }

    #[test]
    fn gap_arithmetic() {
        assert_eq!(gap_percent(16.0, 16.0), 0.0);
        assert!((gap_percent(10.0, 9.0) - 10.0).abs() < 1e-12);
        let (g, _) = setup();
        let s = MmrtcSolution::new(vec![Tree::new(0, vec![0, 1, 2]), Tree::new(5, vec![6, 5])], &g);
        assert_eq!(makespan_and_gap(&s, &g, Some(3.0)), (3.0, Some(0.0)));
        assert_eq!(makespan_and_gap(&s, &g, None), (3.0, None));
    }
}
