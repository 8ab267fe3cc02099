//! Parabolic removal: robot `i` gives up the region beyond a parabola based
//! at `r_j` and opening along the ray `r_i -> r_j`.

use super::{connectivity_check, logistic, InferiorGraph, Provenance, RootGeometry, SubComponent, Subgraph};
use crate::terrain::{TerrainGraph, VertexId, VertexSet};
use crate::weight::Weight;

/// `a_ij = alpha * sigma(d(r_j, c_ij) / d(r_i, r_j))`. An infinite alpha
/// yields an infinite width, which callers treat as "remove nothing".
pub fn parabola_width(alpha: f64, d_root_to_boundary: Weight, d_between_roots: Weight) -> f64 {
    assert!(d_between_roots > Weight::ZERO, "roots must be distinct");
    if alpha == f64::INFINITY {
        return f64::INFINITY;
    }
    alpha * logistic(d_root_to_boundary.as_f64() / d_between_roots.as_f64())
}

/// Local frame with origin at `r_j`, the y' axis pointing from `r_i` through
/// `r_j`, and the x' axis perpendicular to it. Points are grid `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParabolaFrame {
    pub origin: (i64, i64),
    /// Unnormalised axis `r_j - r_i`.
    pub axis: (i64, i64),
    pub width: f64,
}

impl ParabolaFrame {
    pub fn new(from: (usize, usize), base: (usize, usize), width: f64) -> Self {
        let origin = (base.0 as i64, base.1 as i64);
        let axis = (origin.0 - from.0 as i64, origin.1 - from.1 as i64);
        assert!(axis != (0, 0), "parabola axis needs distinct points");
        ParabolaFrame { origin, axis, width }
    }

    fn axis_len(&self) -> f64 {
        ((self.axis.0 * self.axis.0 + self.axis.1 * self.axis.1) as f64).sqrt()
    }

    /// Unit axis vector.
    pub fn unit_axis(&self) -> (f64, f64) {
        let n = self.axis_len();
        (self.axis.0 as f64 / n, self.axis.1 as f64 / n)
    }

    /// Integer dot and cross products of `p - origin` with the axis. They
    /// equal `y' * |axis|` and `x' * |axis|`.
    fn scaled_coords(&self, p: (usize, usize)) -> (i64, i64) {
        let d = (p.0 as i64 - self.origin.0, p.1 as i64 - self.origin.1);
        let dot = d.0 * self.axis.0 + d.1 * self.axis.1;
        let cross = d.0 * self.axis.1 - d.1 * self.axis.0;
        (dot, cross)
    }

    /// `(x', y')` frame coordinates.
    pub fn coords(&self, p: (usize, usize)) -> (f64, f64) {
        let (dot, cross) = self.scaled_coords(p);
        let n = self.axis_len();
        (cross as f64 / n, dot as f64 / n)
    }

    /// Closed inner region `y' >= (a x')^2`. The sign test on the integer
    /// dot product is exact, so width 0 gives exactly the half-plane `y' >= 0`.
    pub fn contains(&self, p: (usize, usize)) -> bool {
        let (dot, cross) = self.scaled_coords(p);
        if dot < 0 {
            return false;
        }
        if self.width == 0.0 || cross == 0 {
            return true;
        }
        if self.width.is_infinite() {
            return false;
        }
        // y' >= a^2 x'^2  <=>  dot * |axis| >= a^2 cross^2
        dot as f64 * self.axis_len() >= self.width * self.width * (cross as f64) * (cross as f64)
    }
}

/// `H_ij` for PRH: the subgraph induced by vertices inside the parabola.
pub fn prh_sub_component(g: &TerrainGraph, geo: &RootGeometry, i: usize, j: usize, alpha: f64) -> Subgraph {
    let n = g.vertex_count();
    if alpha == f64::INFINITY {
        return Subgraph::empty(n);
    }
    let c = geo.farthest_boundary_vertex(i, j);
    let width = parabola_width(alpha, geo.d(j, c), geo.root_distance(i, j));
    let frame = frame_for(g, geo.roots[i], geo.roots[j], width);
    let members = VertexSet::from_ids(n, (0..n).filter(|&v| frame.contains(cell(g, v))));
    Subgraph::induced(g, members)
}

fn cell(g: &TerrainGraph, v: VertexId) -> (usize, usize) {
    let vx = g.vertex(v);
    (vx.row, vx.col)
}

pub(crate) fn frame_for(g: &TerrainGraph, ri: VertexId, rj: VertexId, width: f64) -> ParabolaFrame {
    ParabolaFrame::new(cell(g, ri), cell(g, rj), width)
}

pub(super) fn prh_raw(g: &TerrainGraph, geo: &RootGeometry, i: usize, alpha: f64) -> InferiorGraph {
    let parts = (0..geo.roots.len())
        .filter(|&j| j != i)
        .map(|j| SubComponent { other: j, graph: prh_sub_component(g, geo, i, j, alpha) })
        .collect();
    InferiorGraph::from_parts(i, g.vertex_count(), parts, Provenance::Prh { alpha })
}

/// PRH inferior graph of robot `i`, after connectivity repair.
pub fn prh_inferior(g: &TerrainGraph, geo: &RootGeometry, i: usize, alpha: f64) -> InferiorGraph {
    let mut inf = prh_raw(g, geo, i, alpha);
    connectivity_check(g, &geo.dists[i], &mut inf);
    inf
}
