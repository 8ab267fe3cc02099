//! Solution-file dialects.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{SolveError, SolverStatus};
use crate::model::VarAssignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParserKind {
    /// CBC `solu` output: a status line, then `index name value reduced-cost`
    /// rows. With `printingOptions all` the row block precedes the column
    /// block and the index restarts at zero.
    Cbc,
    /// HiGHS `--solution_file` output: `name value` lines between
    /// `# Columns` and `# Rows`.
    Highs,
    /// `name value` per line; `#` and `**` lines are comments; lines of three
    /// or more tokens starting with an integer read as `index name value`.
    Generic,
}

impl FromStr for ParserKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cbc" => Ok(ParserKind::Cbc),
            "highs" => Ok(ParserKind::Highs),
            "generic" => Ok(ParserKind::Generic),
            other => Err(format!("unknown parser kind `{other}`")),
        }
    }
}

impl ParserKind {
    pub fn supports_warm_start(self) -> bool {
        matches!(self, ParserKind::Cbc)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedSolution {
    pub status: Option<SolverStatus>,
    pub reported_objective: Option<f64>,
    pub assignment: VarAssignment,
}

pub fn parse_solution_file(text: &str, kind: ParserKind) -> Result<VarAssignment, SolveError> {
    parse_solution(text, kind).map(|p| p.assignment)
}

pub fn parse_solution(text: &str, kind: ParserKind) -> Result<ParsedSolution, SolveError> {
    match kind {
        ParserKind::Cbc => parse_cbc(text),
        ParserKind::Highs => parse_highs(text),
        ParserKind::Generic => parse_generic(text),
    }
}

fn bad(line: usize, msg: impl Into<String>) -> SolveError {
    SolveError::SolutionParse { line, message: msg.into() }
}

fn number(tok: &str, line: usize) -> Result<f64, SolveError> {
    tok.parse::<f64>().map_err(|_| bad(line, format!("`{tok}` is not a number")))
}

fn insert(a: &mut VarAssignment, name: &str, value: f64, line: usize) -> Result<(), SolveError> {
    if a.get(name).is_some() {
        return Err(bad(line, format!("duplicate variable `{name}`")));
    }
    a.set(name, value);
    Ok(())
}

fn trailing_objective(line: &str) -> Option<f64> {
    line.split_whitespace().last()?.parse().ok()
}

pub(crate) fn cbc_status(line: &str) -> Option<SolverStatus> {
    let l = line.to_ascii_lowercase();
    if l.starts_with("optimal") {
        Some(SolverStatus::Optimal)
    } else if l.contains("infeasible") {
        Some(SolverStatus::Infeasible)
    } else if l.contains("no integer solution") {
        Some(SolverStatus::Timeout)
    } else if l.starts_with("stopped") {
        Some(SolverStatus::Feasible)
    } else {
        None
    }
}

fn parse_cbc(text: &str) -> Result<ParsedSolution, SolveError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty solution file"))?;
    let status = cbc_status(header);
    if status.is_none() {
        return Err(bad(1, format!("unrecognized status line `{header}`")));
    }
    let mut a = VarAssignment::default();
    let mut last_index: Option<u64> = None;
    for (no, raw) in lines {
        let line = no + 1;
        let body = raw.trim_start().trim_start_matches("**");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(bad(line, "expected `index name value [reduced cost]`"));
        }
        let index: u64 = toks[0].parse().map_err(|_| bad(line, format!("`{}` is not an index", toks[0])))?;
        if last_index.is_some_and(|prev| index <= prev) {
            // Column block starts after the row block.
            a = VarAssignment::default();
        }
        last_index = Some(index);
        insert(&mut a, toks[1], number(toks[2], line)?, line)?;
    }
    Ok(ParsedSolution { status, reported_objective: trailing_objective(header), assignment: a })
}

fn parse_highs(text: &str) -> Result<ParsedSolution, SolveError> {
    let mut status = None;
    let mut objective = None;
    let mut a = VarAssignment::default();
    let mut in_columns = false;
    let mut expect_status = false;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let l = raw.trim();
        if expect_status {
            expect_status = false;
            status = Some(match l.to_ascii_lowercase().as_str() {
                "optimal" => SolverStatus::Optimal,
                "infeasible" => SolverStatus::Infeasible,
                s if s.contains("time limit") => SolverStatus::Feasible,
                _ => SolverStatus::Feasible,
            });
            continue;
        }
        if l.eq_ignore_ascii_case("model status") {
            expect_status = true;
        } else if let Some(rest) = l.strip_prefix("Objective") {
            objective = rest.trim().parse().ok();
        } else if l.starts_with("# Columns") {
            in_columns = true;
        } else if l.starts_with("# Rows") || l.starts_with("# Dual") {
            in_columns = false;
        } else if in_columns && !l.is_empty() && !l.starts_with('#') {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(bad(line, "expected `name value`"));
            }
            insert(&mut a, toks[0], number(toks[1], line)?, line)?;
        }
    }
    if status.is_none() && a.is_empty() {
        return Err(bad(1, "no `Model status` or `# Columns` section"));
    }
    // A HiGHS file that hit its time limit without a solution lists no columns.
    if status == Some(SolverStatus::Feasible) && a.is_empty() {
        status = Some(SolverStatus::Timeout);
    }
    Ok(ParsedSolution { status, reported_objective: objective, assignment: a })
}

fn parse_generic(text: &str) -> Result<ParsedSolution, SolveError> {
    let mut a = VarAssignment::default();
    let mut status = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if l.starts_with('#') || l.starts_with("**") {
            let lower = l.to_ascii_lowercase();
            if lower.contains("infeasible") {
                status = Some(SolverStatus::Infeasible);
            } else if lower.contains("optimal") {
                status = Some(SolverStatus::Optimal);
            }
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (name, value) = match toks.as_slice() {
            [name, value] => (*name, *value),
            [idx, name, value, ..] if idx.parse::<u64>().is_ok() => (*name, *value),
            _ => return Err(bad(line, format!("cannot read `{l}`"))),
        };
        insert(&mut a, name, number(value, line)?, line)?;
    }
    Ok(ParsedSolution { status, reported_objective: a.get("tau"), assignment: a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_two_token_lines() {
        let a = parse_solution_file("tau 16\nx_0_3 1", ParserKind::Generic).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.get("x_0_3"), Some(1.0));
    }

    #[test]
    fn generic_comments_and_indexed() {
        let a = parse_solution_file("# objective 16\ntau 16", ParserKind::Generic).unwrap();
        assert_eq!(a.len(), 1);
        let a = parse_solution_file("0 tau 16 0", ParserKind::Generic).unwrap();
        assert_eq!(a.get("tau"), Some(16.0));
        assert!(parse_solution_file("** skipped\ntau 1", ParserKind::Generic).is_ok());
    }

    #[test]
    fn duplicates_rejected() {
        let err = parse_solution_file("tau 1\ntau 2\n", ParserKind::Generic).unwrap_err();
        assert!(matches!(err, SolveError::SolutionParse { line: 2, .. }));
        assert!(parse_solution_file("tau one\n", ParserKind::Generic).is_err());
        assert!(parse_solution_file("a b c d\n", ParserKind::Generic).is_err());
    }

    #[test]
    fn cbc_row_block_is_skipped() {
        let text = "Optimal - objective value 1.00000000\n      0 c1  1  0\n      1 c2  0  0\n      0 y_0  0  0\n**    1 y_1  1  0\n      2 tau  1  1\n";
        let p = parse_solution(text, ParserKind::Cbc).unwrap();
        assert_eq!(p.status, Some(SolverStatus::Optimal));
        assert_eq!(p.reported_objective, Some(1.0));
        assert_eq!(p.assignment.len(), 3);
        assert_eq!(p.assignment.get("y_1"), Some(1.0));
        assert_eq!(p.assignment.get("c1"), None);
    }

    #[test]
    fn cbc_statuses() {
        assert_eq!(cbc_status("Stopped on time - objective value 12"), Some(SolverStatus::Feasible));
        assert_eq!(cbc_status("Infeasible - objective value 0"), Some(SolverStatus::Infeasible));
        assert_eq!(
            cbc_status("Stopped on time (no integer solution - continuous used) - objective value 3"),
            Some(SolverStatus::Timeout)
        );
        assert!(parse_solution("garbage\n", ParserKind::Cbc).is_err());
    }

    #[test]
    fn highs_columns_only() {
        let text = "Model status\nOptimal\n\n# Primal solution values\nFeasible\nObjective 2\n# Columns 2\ny_0 1\ntau 2\n# Rows 1\nc1 1\n";
        let p = parse_solution(text, ParserKind::Highs).unwrap();
        assert_eq!(p.status, Some(SolverStatus::Optimal));
        assert_eq!(p.reported_objective, Some(2.0));
        assert_eq!(p.assignment.len(), 2);
    }

    #[test]
    fn kind_from_str() {
        assert_eq!("CBC".parse::<ParserKind>(), Ok(ParserKind::Cbc));
        assert!("gurobi".parse::<ParserKind>().is_err());
    }
}
