use std::collections::HashSet;
use std::fmt::Write as _;

use super::{MipModel, ModelError, Sense, VarKind};

const OBJECTIVE_ROW: &str = "obj";
const RHS_NAME: &str = "rhs";
const BOUND_NAME: &str = "bnd";

/// Free-format MPS text. Rows and columns follow model order, binaries are
/// wrapped in INTORG/INTEND markers and also declared `BV`.
pub fn export_mps(m: &MipModel) -> Result<String, ModelError> {
    let mut names = HashSet::new();
    names.insert(OBJECTIVE_ROW);
    for c in m.constraints() {
        if !names.insert(c.name.as_str()) {
            return Err(ModelError::NameCollision(c.name.clone()));
        }
    }
    let mut columns = HashSet::new();
    for v in m.variables() {
        if !columns.insert(v.name.as_str()) {
            return Err(ModelError::NameCollision(v.name.clone()));
        }
    }

    let mut entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m.variables().len()];
    for (row, c) in m.constraints().iter().enumerate() {
        for &(var, coef) in &c.terms {
            entries[var].push((row, coef));
        }
    }

    let mut out = String::new();
    out.push_str("NAME mmrtc\n");
    out.push_str("OBJSENSE\n    MIN\n");
    out.push_str("ROWS\n");
    let _ = writeln!(out, " N {OBJECTIVE_ROW}");
    for c in m.constraints() {
        let sense = match c.sense {
            Sense::Le => 'L',
            Sense::Eq => 'E',
            Sense::Ge => 'G',
        };
        let _ = writeln!(out, " {sense} {}", c.name);
    }

    out.push_str("COLUMNS\n");
    let mut in_marker = false;
    let mut marker = 0;
    for (idx, var) in m.variables().iter().enumerate() {
        let binary = var.kind == VarKind::Binary;
        if binary != in_marker {
            let tag = if binary { "INTORG" } else { "INTEND" };
            let _ = writeln!(out, "    M{marker} 'MARKER' '{tag}'");
            marker += 1;
            in_marker = binary;
        }
        if idx == m.tau() {
            let _ = writeln!(out, "    {} {OBJECTIVE_ROW} 1", var.name);
        } else if entries[idx].is_empty() {
            let _ = writeln!(out, "    {} {OBJECTIVE_ROW} 0", var.name);
        }
        for &(row, coef) in &entries[idx] {
            let _ = writeln!(out, "    {} {} {}", var.name, m.constraints()[row].name, coef);
        }
    }
    if in_marker {
        let _ = writeln!(out, "    M{marker} 'MARKER' 'INTEND'");
    }

    out.push_str("RHS\n");
    for c in m.constraints() {
        if c.rhs != 0.0 {
            let _ = writeln!(out, "    {RHS_NAME} {} {}", c.name, c.rhs);
        }
    }

    out.push_str("BOUNDS\n");
    for var in m.variables() {
        match var.kind {
            VarKind::Binary => {
                let _ = writeln!(out, " BV {BOUND_NAME} {}", var.name);
            }
            VarKind::Continuous => {
                if var.lower != 0.0 {
                    let _ = writeln!(out, " LO {BOUND_NAME} {} {}", var.name, var.lower);
                }
                if let Some(up) = var.upper {
                    let _ = writeln!(out, " UP {BOUND_NAME} {} {}", var.name, up);
                }
            }
        }
    }
    out.push_str("ENDATA\n");
    Ok(out)
}
