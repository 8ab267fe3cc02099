use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::weight::Weight;

/// A grid cell: an obstacle or a traversable cell with a positive weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Obstacle,
    Free(Weight),
}

impl Cell {
    pub fn is_free(self) -> bool {
        matches!(self, Cell::Free(_))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line 1: expected header `mmrtc 1`")]
    BadMagic,
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("grid ended after {found} of {expected} rows")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: grid row {row} has {found} cells, expected {expected}")]
    NonRectangular { line: usize, row: usize, expected: usize, found: usize },
    #[error("line {line}: invalid cell token `{token}` at ({row}, {col})")]
    BadWeight { line: usize, row: usize, col: usize, token: String },
    #[error("line {line}: unweighted instance has weight `{token}` at ({row}, {col})")]
    WeightInUnweighted { line: usize, row: usize, col: usize, token: String },
    #[error("expected {expected} root lines, found {found}")]
    RootCount { expected: usize, found: usize },
    #[error("line {line}: malformed root line")]
    MalformedRoot { line: usize },
    #[error("root ({row}, {col}) lies outside the grid")]
    RootOutOfBounds { row: usize, col: usize },
    #[error("root ({row}, {col}) lies on an obstacle")]
    RootOnObstacle { row: usize, col: usize },
    #[error("root ({row}, {col}) is listed twice")]
    DuplicateRoot { row: usize, col: usize },
    #[error("free cells form {components} disconnected regions")]
    DisconnectedFreeSpace { components: usize },
    #[error("grid has no free cells")]
    NoFreeCells,
    #[error("line {line}: unexpected trailing content")]
    TrailingContent { line: usize },
}

/// A grid-map planning instance: weighted cells, obstacles and k robot roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    rows: usize,
    cols: usize,
    weighted: bool,
    cells: Vec<Cell>,
    roots: Vec<(usize, usize)>,
}

impl Instance {
    /// Builds and validates an instance. `cells` is row-major.
    pub fn new(
        rows: usize,
        cols: usize,
        weighted: bool,
        cells: Vec<Cell>,
        roots: Vec<(usize, usize)>,
    ) -> Result<Self, InstanceError> {
        if rows == 0 || cols == 0 {
            return Err(InstanceError::MalformedHeader {
                line: 2,
                reason: "rows and cols must be positive".into(),
            });
        }
        if cells.len() != rows * cols {
            return Err(InstanceError::MissingRows { expected: rows, found: cells.len() / cols });
        }
        if roots.is_empty() {
            return Err(InstanceError::MalformedHeader { line: 2, reason: "k must be at least 1".into() });
        }
        let inst = Instance { rows, cols, weighted, cells, roots };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<(), InstanceError> {
        let mut seen = HashSet::new();
        for &(row, col) in &self.roots {
            if row >= self.rows || col >= self.cols {
                return Err(InstanceError::RootOutOfBounds { row, col });
            }
            if !self.cell(row, col).is_free() {
                return Err(InstanceError::RootOnObstacle { row, col });
            }
            if !seen.insert((row, col)) {
                return Err(InstanceError::DuplicateRoot { row, col });
            }
        }
        let components = self.free_components();
        match components {
            0 => Err(InstanceError::NoFreeCells),
            1 => Ok(()),
            n => Err(InstanceError::DisconnectedFreeSpace { components: n }),
        }
    }

    fn free_components(&self) -> usize {
        let mut label = vec![false; self.cells.len()];
        let mut count = 0;
        for start in 0..self.cells.len() {
            if label[start] || !self.cells[start].is_free() {
                continue;
            }
            count += 1;
            label[start] = true;
            let mut stack = vec![start];
            while let Some(idx) = stack.pop() {
                let (r, c) = (idx / self.cols, idx % self.cols);
                for (nr, nc) in self.neighbors(r, c) {
                    let n = nr * self.cols + nc;
                    if !label[n] && self.cells[n].is_free() {
                        label[n] = true;
                        stack.push(n);
                    }
                }
            }
        }
        count
    }

    /// 4-neighbours of a cell that lie inside the grid (N, W, E, S order).
    pub fn neighbors(&self, row: usize, col: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let up = row.checked_sub(1).map(|r| (r, col));
        let left = col.checked_sub(1).map(|c| (row, c));
        let right = (col + 1 < self.cols).then_some((row, col + 1));
        let down = (row + 1 < self.rows).then_some((row + 1, col));
        [up, left, right, down].into_iter().flatten()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn k(&self) -> usize {
        self.roots.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn roots(&self) -> &[(usize, usize)] {
        &self.roots
    }

    pub fn free_cell_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_free()).count()
    }

    pub fn obstacle_fraction(&self) -> f64 {
        1.0 - self.free_cell_count() as f64 / self.cells.len() as f64
    }

    /// Parses the text instance format.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["mmrtc", "1"] => {}
            _ => return Err(InstanceError::BadMagic),
        }

        fn skip_comments<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Option<(usize, &'a str)> {
            lines.find(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
        }

        let (hline, header) = skip_comments(&mut lines).ok_or(InstanceError::MalformedHeader {
            line: 2,
            reason: "missing dimensions line".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(InstanceError::MalformedHeader {
                line: hline,
                reason: format!("expected `<rows> <cols> <k> <weighted>`, got {} fields", fields.len()),
            });
        }
        let num = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| InstanceError::MalformedHeader {
                line: hline,
                reason: format!("{what} `{s}` is not a non-negative integer"),
            })
        };
        let rows = num(fields[0], "rows")?;
        let cols = num(fields[1], "cols")?;
        let k = num(fields[2], "k")?;
        let weighted = match fields[3] {
            "0" => false,
            "1" => true,
            other => {
                return Err(InstanceError::MalformedHeader {
                    line: hline,
                    reason: format!("weighted flag must be 0 or 1, got `{other}`"),
                })
            }
        };
        if rows == 0 || cols == 0 || k == 0 {
            return Err(InstanceError::MalformedHeader {
                line: hline,
                reason: "rows, cols and k must be positive".into(),
            });
        }

        let mut cells = Vec::with_capacity(rows * cols);
        for row in 0..rows {
            let (line, text) = lines.next().ok_or(InstanceError::MissingRows { expected: rows, found: row })?;
            let tokens: Vec<&str> = text.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(InstanceError::NonRectangular { line, row, expected: cols, found: tokens.len() });
            }
            for (col, tok) in tokens.into_iter().enumerate() {
                if tok == "#" {
                    cells.push(Cell::Obstacle);
                    continue;
                }
                let w = Weight::parse_decimal(tok).ok_or_else(|| InstanceError::BadWeight {
                    line,
                    row,
                    col,
                    token: tok.to_string(),
                })?;
                if !weighted && w != Weight::ONE {
                    return Err(InstanceError::WeightInUnweighted { line, row, col, token: tok.to_string() });
                }
                cells.push(Cell::Free(w));
            }
        }

        let mut roots = Vec::with_capacity(k);
        while let Some((line, text)) = skip_comments(&mut lines) {
            if roots.len() == k {
                return Err(InstanceError::TrailingContent { line });
            }
            let parts: Vec<&str> = text.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [r, c] => r.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            roots.push(parsed.ok_or(InstanceError::MalformedRoot { line })?);
        }
        if roots.len() != k {
            return Err(InstanceError::RootCount { expected: k, found: roots.len() });
        }

        let inst = Instance { rows, cols, weighted, cells, roots };
        inst.validate()?;
        Ok(inst)
    }

    /// Canonical text form; `parse(to_text())` reproduces the instance.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("mmrtc 1\n");
        let _ = writeln!(out, "{} {} {} {}", self.rows, self.cols, self.k(), u8::from(self.weighted));
        for row in self.cells.chunks(self.cols) {
            let tokens: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Obstacle => "#".to_string(),
                    Cell::Free(w) => w.to_string(),
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        for (r, c) in &self.roots {
            let _ = writeln!(out, "{r} {c}");
        }
        out
    }
}
