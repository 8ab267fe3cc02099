//! Random floor, maze and terrain instances.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::terrain::{Cell, Instance, InstanceError};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MapStyle {
    /// Unweighted rooms separated by wall segments.
    Floor,
    /// Unweighted maze with some walls knocked out.
    Maze,
    /// Weights in [1, 4] at three decimals, scattered obstacles.
    Terrain,
}

impl MapStyle {
    pub fn default_obstacle_fraction(self) -> f64 {
        match self {
            MapStyle::Floor => 0.12,
            MapStyle::Maze => 0.4,
            MapStyle::Terrain => 0.08,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub style: MapStyle,
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
    pub obstacle_fraction: Option<f64>,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("grid must be at least 1x1")]
    EmptyGrid,
    #[error("obstacle fraction must lie in [0, 0.9], got {0}")]
    BadFraction(f64),
    #[error("{k} robots do not fit on {free} free cells")]
    TooManyRobots { k: usize, free: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

struct Grid {
    rows: usize,
    cols: usize,
    free: Vec<bool>,
}

impl Grid {
    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let (r, c) = (i / self.cols, i % self.cols);
        [(r.wrapping_sub(1), c), (r + 1, c), (r, c.wrapping_sub(1)), (r, c + 1)]
            .into_iter()
            .filter(|&(r, c)| r < self.rows && c < self.cols)
            .map(|(r, c)| r * self.cols + c)
    }

    fn free_count(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    fn connected(&self) -> bool {
        let Some(start) = self.free.iter().position(|&f| f) else { return false };
        let mut seen = vec![false; self.free.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for n in self.neighbors(i).collect::<Vec<_>>() {
                if self.free[n] && !seen[n] {
                    seen[n] = true;
                    count += 1;
                    queue.push_back(n);
                }
            }
        }
        count == self.free_count()
    }

    /// Blocks `i` unless that would disconnect free space.
    fn try_block(&mut self, i: usize) -> bool {
        if !self.free[i] || self.free_count() <= 1 {
            return false;
        }
        self.free[i] = false;
        if self.connected() {
            true
        } else {
            self.free[i] = true;
            false
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    if spec.rows == 0 || spec.cols == 0 {
        return Err(GenError::EmptyGrid);
    }
    let target = spec.obstacle_fraction.unwrap_or_else(|| spec.style.default_obstacle_fraction());
    if !(0.0..=0.9).contains(&target) {
        return Err(GenError::BadFraction(target));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.rows * spec.cols;
    let goal = (target * n as f64).round() as usize;
    let mut grid = Grid { rows: spec.rows, cols: spec.cols, free: vec![true; n] };

    match spec.style {
        MapStyle::Floor => {
            let mut failures = 0;
            while n - grid.free_count() < goal && failures < 50 {
                let horizontal = rng.gen_bool(0.5);
                let len = rng.gen_range(2..=4);
                let (r0, c0) = (rng.gen_range(0..spec.rows), rng.gen_range(0..spec.cols));
                let mut placed = false;
                for s in 0..len {
                    let (r, c) = if horizontal { (r0, c0 + s) } else { (r0 + s, c0) };
                    if r < spec.rows && c < spec.cols && n - grid.free_count() < goal {
                        placed |= grid.try_block(r * spec.cols + c);
                    }
                }
                failures = if placed { 0 } else { failures + 1 };
            }
        }
        MapStyle::Maze => {
            grid.free.iter_mut().for_each(|f| *f = false);
            let room = |r: usize, c: usize| r * spec.cols + c;
            let mut stack = vec![(0usize, 0usize)];
            grid.free[0] = true;
            while let Some(&(r, c)) = stack.last() {
                let mut steps: Vec<(usize, usize, usize, usize)> = Vec::new();
                if r >= 2 {
                    steps.push((r - 2, c, r - 1, c));
                }
                if c >= 2 {
                    steps.push((r, c - 2, r, c - 1));
                }
                if r + 2 < spec.rows {
                    steps.push((r + 2, c, r + 1, c));
                }
                if c + 2 < spec.cols {
                    steps.push((r, c + 2, r, c + 1));
                }
                steps.retain(|&(nr, nc, _, _)| !grid.free[room(nr, nc)]);
                match steps.choose(&mut rng) {
                    Some(&(nr, nc, wr, wc)) => {
                        grid.free[room(wr, wc)] = true;
                        grid.free[room(nr, nc)] = true;
                        stack.push((nr, nc));
                    }
                    None => {
                        stack.pop();
                    }
                }
            }
            // Knock out walls next to open space until the density target is met.
            let mut walls: Vec<usize> = (0..n).filter(|&i| !grid.free[i]).collect();
            walls.shuffle(&mut rng);
            for i in walls {
                if n - grid.free_count() <= goal {
                    break;
                }
                if grid.neighbors(i).any(|j| grid.free[j]) {
                    grid.free[i] = true;
                }
            }
            // Walls with no open neighbour may remain; open cells stay connected.
            while n - grid.free_count() > goal {
                let Some(i) = (0..n).find(|&i| !grid.free[i] && grid.neighbors(i).any(|j| grid.free[j])) else { break };
                grid.free[i] = true;
            }
        }
        MapStyle::Terrain => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            for i in order {
                if n - grid.free_count() >= goal {
                    break;
                }
                grid.try_block(i);
            }
        }
    }

    let mut free_cells: Vec<usize> = (0..n).filter(|&i| grid.free[i]).collect();
    if spec.k == 0 || spec.k > free_cells.len() {
        return Err(GenError::TooManyRobots { k: spec.k, free: free_cells.len() });
    }
    let weighted = spec.style == MapStyle::Terrain;
    let cells: Vec<Cell> = (0..n)
        .map(|i| {
            if !grid.free[i] {
                Cell::Obstacle
            } else if weighted {
                Cell::Free(Weight::from_milli(rng.gen_range(1000..=4000)))
            } else {
                Cell::Free(Weight::ONE)
            }
        })
        .collect();
    free_cells.shuffle(&mut rng);
    let mut roots: Vec<(usize, usize)> = free_cells[..spec.k].iter().map(|&i| (i / spec.cols, i % spec.cols)).collect();
    roots.sort_unstable();
    Ok(Instance::new(spec.rows, spec.cols, weighted, cells, roots)?)
}
