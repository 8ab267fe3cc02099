//! Instances, the terrain graph, its 4x decomposition, and graph utilities.

mod algo;
mod decomp;
mod graph;
mod instance;

pub use algo::{
    boundary_vertices, connected_components, dijkstra, dijkstra_within, is_connected, minimum_spanning_tree,
    mst_within, shortest_path, ShortestPaths,
};
pub use decomp::{DecompGraph, Quadrant, SubCell, SubCellId};
pub use graph::{Edge, EdgeId, GraphError, Path, TerrainGraph, Tree, Vertex, VertexId, VertexSet};
pub use instance::{Cell, Instance, InstanceError};

/// Parses instance text.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    Instance::parse(text)
}

pub fn build_graph(inst: &Instance) -> TerrainGraph {
    TerrainGraph::from_instance(inst)
}

pub fn decompose(g: &TerrainGraph) -> DecompGraph {
    DecompGraph::new(g)
}

/// Graph vertex of each instance root, in robot order.
pub fn root_vertices(inst: &Instance, g: &TerrainGraph) -> Vec<VertexId> {
    inst.roots()
        .iter()
        .map(|&(r, c)| g.vertex_at(r, c).expect("validated root lies on a free cell"))
        .collect()
}
