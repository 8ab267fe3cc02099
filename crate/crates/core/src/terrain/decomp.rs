use std::collections::HashMap;

use super::graph::{TerrainGraph, VertexId};
use crate::weight::Weight;

pub type SubCellId = usize;

/// Position of a sub-cell inside its parent cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::TopLeft, Quadrant::TopRight, Quadrant::BottomLeft, Quadrant::BottomRight];

    fn offset(self) -> (usize, usize) {
        match self {
            Quadrant::TopLeft => (0, 0),
            Quadrant::TopRight => (0, 1),
            Quadrant::BottomLeft => (1, 0),
            Quadrant::BottomRight => (1, 1),
        }
    }

    fn index(self) -> usize {
        match self {
            Quadrant::TopLeft => 0,
            Quadrant::TopRight => 1,
            Quadrant::BottomLeft => 2,
            Quadrant::BottomRight => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubCell {
    pub row: usize,
    pub col: usize,
    pub parent: VertexId,
    pub weight: Weight,
}

/// The 4x decomposition of a terrain graph. Sub-cell `4v + q` is quadrant
/// `q` (TL, TR, BL, BR) of terrain vertex `v`, placed at doubled coordinates.
#[derive(Clone, Debug)]
pub struct DecompGraph {
    cells: Vec<SubCell>,
    by_coord: HashMap<(usize, usize), SubCellId>,
}

impl DecompGraph {
    pub fn new(g: &TerrainGraph) -> Self {
        let mut cells = Vec::with_capacity(4 * g.vertex_count());
        for (id, v) in g.vertices().iter().enumerate() {
            for q in Quadrant::ALL {
                let (dr, dc) = q.offset();
                cells.push(SubCell { row: 2 * v.row + dr, col: 2 * v.col + dc, parent: id, weight: v.weight.quarter() });
            }
        }
        let by_coord = cells.iter().enumerate().map(|(i, c)| ((c.row, c.col), i)).collect();
        DecompGraph { cells, by_coord }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[SubCell] {
        &self.cells
    }

    pub fn cell(&self, id: SubCellId) -> &SubCell {
        &self.cells[id]
    }

    pub fn sub_cell(&self, parent: VertexId, q: Quadrant) -> SubCellId {
        4 * parent + q.index()
    }

    pub fn at(&self, row: usize, col: usize) -> Option<SubCellId> {
        self.by_coord.get(&(row, col)).copied()
    }

    pub fn are_adjacent(&self, a: SubCellId, b: SubCellId) -> bool {
        let (x, y) = (&self.cells[a], &self.cells[b]);
        x.row.abs_diff(y.row) + x.col.abs_diff(y.col) == 1
    }

    /// 4-neighbours present in the decomposition.
    pub fn neighbors(&self, id: SubCellId) -> Vec<SubCellId> {
        let c = &self.cells[id];
        let mut out = Vec::with_capacity(4);
        if c.row > 0 {
            out.extend(self.at(c.row - 1, c.col));
        }
        if c.col > 0 {
            out.extend(self.at(c.row, c.col - 1));
        }
        out.extend(self.at(c.row, c.col + 1));
        out.extend(self.at(c.row + 1, c.col));
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.neighbors(i).len()).sum::<usize>() / 2
    }

    pub fn total_weight(&self) -> Weight {
        self.cells.iter().map(|c| c.weight).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terrain::{Instance, TerrainGraph};

    #[test]
    fn single_heavy_vertex() {
        let g = TerrainGraph::from_instance(&Instance::parse("mmrtc 1\n1 1 1 1\n4\n0 0\n").unwrap());
        let d = DecompGraph::new(&g);
        assert_eq!(d.len(), 4);
        assert!(d.cells().iter().all(|c| c.weight == Weight::ONE));
        assert_eq!(d.edge_count(), 4);
        assert_eq!(d.total_weight(), g.total_weight());
    }

    #[test]
    fn sub_cells_adjacent_across_parents() {
        let g = TerrainGraph::from_instance(&Instance::parse("mmrtc 1\n1 2 1 0\n1 1\n0 0\n").unwrap());
        let d = DecompGraph::new(&g);
        assert_eq!(d.len(), 8);
        let tr0 = d.sub_cell(0, Quadrant::TopRight);
        let tl1 = d.sub_cell(1, Quadrant::TopLeft);
        assert!(d.are_adjacent(tr0, tl1));
        assert_eq!(d.at(0, 2), Some(tl1));
        // 2x4 grid of sub-cells
        assert_eq!(d.edge_count(), 10);
    }
}
