use std::collections::HashMap;

use thiserror::Error;

use super::instance::{Cell, Instance};
use crate::weight::Weight;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(VertexId, VertexId),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) references a missing vertex")]
    UnknownVertex(VertexId, VertexId),
    #[error("no path from vertex {from} to vertex {to}")]
    NoPath { from: VertexId, to: VertexId },
    #[error("vertex set is not connected")]
    NotConnected,
    #[error("vertex {0} is not part of the vertex set")]
    NotInSet(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
    pub weight: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Smaller endpoint id.
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Undirected terrain graph with vertex and edge weights.
///
/// Vertex ids follow row-major order of free cells; edge ids follow the
/// order in which edges were supplied (for grid instances: by smaller
/// endpoint, east neighbour before south neighbour).
#[derive(Clone, Debug)]
pub struct TerrainGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// Per vertex: (neighbour, edge) sorted by neighbour id.
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    by_cell: HashMap<(usize, usize), VertexId>,
}

impl TerrainGraph {
    pub fn from_instance(inst: &Instance) -> Self {
        let mut vertices = Vec::new();
        let mut ids = vec![None; inst.rows() * inst.cols()];
        for r in 0..inst.rows() {
            for c in 0..inst.cols() {
                if let Cell::Free(weight) = inst.cell(r, c) {
                    ids[r * inst.cols() + c] = Some(vertices.len());
                    vertices.push(Vertex { row: r, col: c, weight });
                }
            }
        }
        let mut pairs = Vec::new();
        for (id, v) in vertices.iter().enumerate() {
            let east = (v.col + 1 < inst.cols()).then(|| ids[v.row * inst.cols() + v.col + 1]).flatten();
            let south = (v.row + 1 < inst.rows()).then(|| ids[(v.row + 1) * inst.cols() + v.col]).flatten();
            pairs.extend(east.map(|n| (id, n)));
            pairs.extend(south.map(|n| (id, n)));
        }
        Self::from_parts(vertices, &pairs).expect("grid adjacency is simple")
    }

    /// General constructor. Edge weights are the mean of endpoint weights.
    pub fn from_parts(vertices: Vec<Vertex>, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(GraphError::UnknownVertex(a, b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a, b));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            let id = edges.len();
            edges.push(Edge { u, v, weight: Weight::midpoint(vertices[u].weight, vertices[v].weight) });
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let by_cell = vertices.iter().enumerate().map(|(i, v)| ((v.row, v.col), i)).collect();
        Ok(TerrainGraph { vertices, edges, adjacency, by_cell })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertex_at(&self, row: usize, col: usize) -> Option<VertexId> {
        self.by_cell.get(&(row, col)).copied()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency[a].iter().find(|(n, _)| *n == b).map(|&(_, e)| e)
    }

    pub fn total_weight(&self) -> Weight {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }
}

/// A subset of a graph's vertex ids, iterated in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { members: vec![false; universe], len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { members: vec![true; universe], len: universe }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = VertexId>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.members.get(id).copied().unwrap_or(false)
    }

    /// Returns true if the id was newly added.
    pub fn insert(&mut self, id: VertexId) -> bool {
        let fresh = !self.members[id];
        if fresh {
            self.members[id] = true;
            self.len += 1;
        }
        fresh
    }

    /// Returns true if the id was present.
    pub fn remove(&mut self, id: VertexId) -> bool {
        let present = self.members[id];
        if present {
            self.members[id] = false;
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().enumerate().filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn first(&self) -> Option<VertexId> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        VertexSet { members: self.members.iter().map(|m| !m).collect(), len: self.members.len() - self.len }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for id in other.iter() {
            self.insert(id);
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|id| !other.contains(id))
    }
}

/// Ordered vertex ids; consecutive entries are adjacent.
pub type Path = Vec<VertexId>;

/// A rooted tree given by its root and edge ids (sorted ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub root: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Tree {
    pub fn singleton(root: VertexId) -> Self {
        Tree { root, edges: Vec::new() }
    }

    pub fn new(root: VertexId, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Tree { root, edges }
    }

    /// Vertex ids touched by the tree, plus the root.
    pub fn vertex_set(&self, g: &TerrainGraph) -> VertexSet {
        let mut set = VertexSet::empty(g.vertex_count());
        set.insert(self.root);
        for &e in &self.edges {
            let edge = g.edge(e);
            set.insert(edge.u);
            set.insert(edge.v);
        }
        set
    }

    pub fn weight(&self, g: &TerrainGraph) -> Weight {
        self.edges.iter().map(|&e| g.edge(e).weight).sum()
    }

    /// Parent of each tree vertex when oriented from the root, as
    /// `(vertex, parent, edge)` in breadth-first order (root excluded).
    /// Returns `None` if the edge set is not a tree containing the root.
    pub fn orient(&self, g: &TerrainGraph) -> Option<Vec<(VertexId, VertexId, EdgeId)>> {
        let verts = self.vertex_set(g);
        if self.edges.len() + 1 != verts.len() {
            return None;
        }
        let mut incident: HashMap<VertexId, Vec<(VertexId, EdgeId)>> = HashMap::new();
        for &e in &self.edges {
            let edge = g.edge(e);
            incident.entry(edge.u).or_default().push((edge.v, e));
            incident.entry(edge.v).or_default().push((edge.u, e));
        }
        for list in incident.values_mut() {
            list.sort_unstable();
        }
        let mut visited = VertexSet::empty(g.vertex_count());
        visited.insert(self.root);
        let mut order = Vec::with_capacity(self.edges.len());
        let mut queue = std::collections::VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            for &(n, e) in incident.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if visited.insert(n) {
                    order.push((n, v, e));
                    queue.push_back(n);
                }
            }
        }
        (order.len() == self.edges.len()).then_some(order)
    }
}
