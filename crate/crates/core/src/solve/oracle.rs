//! Exhaustive optimum for small instances.
//!
//! For every robot, `h[m]` is the lightest MST over connected root-containing
//! vertex sets that contain `m`. The optimum is then the best split of `V`
//! into per-robot parts, found by a subset DP over `3^|V|` pairs.

use super::SolveError;
use crate::model::MmrtcSolution;
use crate::terrain::{is_connected, mst_within, TerrainGraph, Tree, VertexId, VertexSet};
use crate::weight::Weight;

pub const DEFAULT_ORACLE_LIMIT: usize = 14;

const NONE: u64 = u64::MAX;

pub fn oracle_optimum(g: &TerrainGraph, roots: &[VertexId], limit: usize) -> Result<(Weight, MmrtcSolution), SolveError> {
    oracle_optimum_within(g, roots, None, limit)
}

/// Optimum when robot `i` may only use vertices of `residuals[i]`: the exact
/// optimum of a reduced model.
pub fn oracle_optimum_within(
    g: &TerrainGraph,
    roots: &[VertexId],
    residuals: Option<&[VertexSet]>,
    limit: usize,
) -> Result<(Weight, MmrtcSolution), SolveError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(SolveError::OracleLimit { vertices: n, limit });
    }
    if roots.is_empty() {
        return Err(SolveError::Config("oracle needs at least one robot".into()));
    }
    let full = (1usize << n) - 1;
    let to_set = |m: usize| VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1));

    // Best covering tree for each robot and required set: (weight ticks, chosen set).
    let mut best: Vec<Vec<(u64, usize)>> = Vec::with_capacity(roots.len());
    for (i, &root) in roots.iter().enumerate() {
        let allowed = residuals.map_or(full, |r| r[i].iter().fold(0usize, |m, v| m | 1 << v));
        let mut h = vec![(NONE, 0usize); full + 1];
        for (m, slot) in h.iter_mut().enumerate() {
            if m >> root & 1 == 0 || m & !allowed != 0 {
                continue;
            }
            let set = to_set(m);
            if is_connected(g, &set) {
                let t = mst_within(g, &set, root).expect("connected set spans");
                *slot = (t.weight(g).ticks(), m);
            }
        }
        for b in 0..n {
            for m in 0..=full {
                if m >> b & 1 == 0 && h[m | 1 << b].0 < h[m].0 {
                    h[m] = h[m | 1 << b];
                }
            }
        }
        best.push(h);
    }

    // value[t][m]: best makespan covering m with robots 0..=t; split[t][m]: the
    // part handed to robots before t.
    let mut value = vec![best[0].iter().map(|&(w, _)| w).collect::<Vec<u64>>()];
    let mut split: Vec<Vec<usize>> = vec![Vec::new()];
    for t in 1..roots.len() {
        let prev = &value[t - 1];
        let mut cur = vec![NONE; full + 1];
        let mut arg = vec![0usize; full + 1];
        for m in 0..=full {
            let mut a = m;
            loop {
                let cand = prev[a].max(best[t][m & !a].0);
                if cand < cur[m] {
                    cur[m] = cand;
                    arg[m] = a;
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & m;
            }
        }
        value.push(cur);
        split.push(arg);
    }

    let k = roots.len();
    if value[k - 1][full] == NONE {
        return Err(SolveError::Infeasible);
    }
    let mut parts = vec![0usize; k];
    let mut m = full;
    for t in (1..k).rev() {
        let a = split[t][m];
        parts[t] = m & !a;
        m = a;
    }
    parts[0] = m;
    let trees: Vec<Tree> = parts
        .iter()
        .zip(roots)
        .enumerate()
        .map(|(t, (&part, &root))| {
            let chosen = best[t][part].1;
            mst_within(g, &to_set(chosen), root).expect("chosen set is connected")
        })
        .collect();
    let s = MmrtcSolution::new(trees, g);
    debug_assert_eq!(s.makespan.ticks(), value[k - 1][full]);
    Ok((s.makespan, s))
}
