//! Spanning-tree coverage: turn each rooted tree into a closed walk over the
//! decomposition cells of its vertices.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::MmrtcSolution;
use crate::terrain::{DecompGraph, EdgeId, Quadrant, SubCellId, TerrainGraph, Tree, VertexId};
use crate::weight::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StcError {
    #[error("path is empty")]
    EmptyPath,
    #[error("path is not closed: last cell {last} is not adjacent to first cell {first}")]
    OpenPath { first: SubCellId, last: SubCellId },
    #[error("tree of robot {robot} is not a tree rooted at its root")]
    NotATree { robot: usize },
    #[error("decomposition cells left uncovered: {0:?}")]
    CoverageGap(Vec<SubCellId>),
}

#[derive(Clone, Copy)]
enum Dir {
    North,
    East,
    South,
    West,
}

fn neighbor(g: &TerrainGraph, v: VertexId, dir: Dir) -> Option<VertexId> {
    let vx = g.vertex(v);
    match dir {
        Dir::North => vx.row.checked_sub(1).and_then(|r| g.vertex_at(r, vx.col)),
        Dir::South => g.vertex_at(vx.row + 1, vx.col),
        Dir::West => vx.col.checked_sub(1).and_then(|c| g.vertex_at(vx.row, c)),
        Dir::East => g.vertex_at(vx.row, vx.col + 1),
    }
}

/// Closed walk around `tree` with its edges on the walker's left, starting at
/// the root's top-left sub-cell. The returned sequence does not repeat the
/// start cell; it contains every sub-cell of every tree vertex exactly once.
pub fn circumnavigate(tree: &Tree, g: &TerrainGraph, d: &DecompGraph) -> Vec<SubCellId> {
    let edges: HashSet<EdgeId> = tree.edges.iter().copied().collect();
    let spoke = |v: VertexId, dir: Dir| -> Option<VertexId> {
        let n = neighbor(g, v, dir)?;
        let e = g.edge_between(v, n)?;
        edges.contains(&e).then_some(n)
    };
    // Within a cell the walk runs TL -> BL -> BR -> TR -> TL. A tree edge
    // leaving the cell blocks that step and the walk crosses into the
    // neighbouring cell instead.
    let step = |v: VertexId, q: Quadrant| -> (VertexId, Quadrant) {
        match q {
            Quadrant::TopLeft => spoke(v, Dir::West).map_or((v, Quadrant::BottomLeft), |n| (n, Quadrant::TopRight)),
            Quadrant::BottomLeft => spoke(v, Dir::South).map_or((v, Quadrant::BottomRight), |n| (n, Quadrant::TopLeft)),
            Quadrant::BottomRight => spoke(v, Dir::East).map_or((v, Quadrant::TopRight), |n| (n, Quadrant::BottomLeft)),
            Quadrant::TopRight => spoke(v, Dir::North).map_or((v, Quadrant::TopLeft), |n| (n, Quadrant::BottomRight)),
        }
    };
    let start = (tree.root, Quadrant::TopLeft);
    let bound = 4 * (tree.edges.len() + 1);
    let mut path = Vec::with_capacity(bound);
    let mut cur = start;
    loop {
        path.push(d.sub_cell(cur.0, cur.1));
        cur = step(cur.0, cur.1);
        if cur == start || path.len() > bound {
            break;
        }
    }
    path
}

/// `t(pi) = sum_i w(v_i)` over a closed cell sequence (start not repeated).
pub fn coverage_time(path: &[SubCellId], d: &DecompGraph) -> Result<Weight, StcError> {
    check_closed(path, d)?;
    Ok(path.iter().map(|&c| d.cell(c).weight).sum())
}

/// `t(pi) = sum_i (w(v_i) + w(v_{i+1})) / 2` with wrap-around. Equal to
/// [`coverage_time`] on closed paths.
pub fn coverage_time_by_moves(path: &[SubCellId], d: &DecompGraph) -> Result<Weight, StcError> {
    check_closed(path, d)?;
    let twice: u64 = path
        .iter()
        .zip(path.iter().cycle().skip(1))
        .map(|(&a, &b)| d.cell(a).weight.ticks() + d.cell(b).weight.ticks())
        .sum();
    Ok(Weight::from_ticks(twice / 2))
}

fn check_closed(path: &[SubCellId], d: &DecompGraph) -> Result<(), StcError> {
    let (&first, &last) = path.first().zip(path.last()).ok_or(StcError::EmptyPath)?;
    if path.len() > 1 && !d.are_adjacent(first, last) {
        return Err(StcError::OpenPath { first, last });
    }
    Ok(())
}

/// Per-robot closed coverage paths and their coverage times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveragePlan {
    pub paths: Vec<Vec<SubCellId>>,
    pub times: Vec<Weight>,
}

impl CoveragePlan {
    /// Largest per-robot coverage time.
    pub fn coverage_time(&self) -> Weight {
        self.times.iter().copied().max().unwrap_or(Weight::ZERO)
    }
}

pub fn build_plan(s: &MmrtcSolution, g: &TerrainGraph, d: &DecompGraph) -> Result<CoveragePlan, StcError> {
    let mut paths = Vec::with_capacity(s.trees.len());
    let mut times = Vec::with_capacity(s.trees.len());
    let mut covered = vec![false; d.len()];
    for (robot, tree) in s.trees.iter().enumerate() {
        if tree.orient(g).is_none() {
            return Err(StcError::NotATree { robot });
        }
        let path = circumnavigate(tree, g, d);
        for &c in &path {
            covered[c] = true;
        }
        times.push(coverage_time(&path, d)?);
        paths.push(path);
    }
    let gaps: Vec<SubCellId> = covered.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| i).collect();
    if !gaps.is_empty() {
        return Err(StcError::CoverageGap(gaps));
    }
    Ok(CoveragePlan { paths, times })
}
