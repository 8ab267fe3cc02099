//! Layered SVG of an instance with optional reduction, tree and path overlays.

use std::fmt::Write as _;

use crate::model::MmrtcSolution;
use crate::reduction::Reduction;
use crate::stc::CoveragePlan;
use crate::terrain::{Cell, DecompGraph, Instance, TerrainGraph};

const CELL: f64 = 24.0;

const PALETTE: [&str; 10] =
    ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#469990", "#9a6324"];

/// Colour of robot `i`.
pub fn robot_color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Clone, Copy, Default)]
pub struct Overlay<'a> {
    /// Inferior (crosses) and residual (dots) vertices of one robot.
    pub reduction: Option<(&'a Reduction, usize)>,
    pub solution: Option<&'a MmrtcSolution>,
    pub coverage: Option<(&'a CoveragePlan, &'a DecompGraph)>,
}

fn center(row: usize, col: usize) -> (f64, f64) {
    (col as f64 * CELL + CELL / 2.0, row as f64 * CELL + CELL / 2.0)
}

fn sub_center(row: usize, col: usize) -> (f64, f64) {
    (col as f64 * CELL / 2.0 + CELL / 4.0, row as f64 * CELL / 2.0 + CELL / 4.0)
}

pub fn render_svg(inst: &Instance, g: &TerrainGraph, overlay: &Overlay) -> String {
    let (w, h) = (inst.cols() as f64 * CELL, inst.rows() as f64 * CELL);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );

    let weights: Vec<f64> = g.vertices().iter().map(|v| v.weight.as_f64()).collect();
    let lo = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    out.push_str("<g id=\"grid\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n");
    for r in 0..inst.rows() {
        for c in 0..inst.cols() {
            if let Cell::Free(wt) = inst.cell(r, c) {
                let t = if hi > lo { (wt.as_f64() - lo) / (hi - lo) } else { 0.0 };
                let shade = (250.0 - 110.0 * t).round() as u8;
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="rgb({shade},{shade},{shade})"/>"#,
                    c as f64 * CELL,
                    r as f64 * CELL
                );
            }
        }
    }
    out.push_str("</g>\n<g id=\"obstacles\" fill=\"#000000\">\n");
    for r in 0..inst.rows() {
        for c in 0..inst.cols() {
            if inst.cell(r, c) == Cell::Obstacle {
                let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}"/>"#, c as f64 * CELL, r as f64 * CELL);
            }
        }
    }
    out.push_str("</g>\n");

    if let Some((red, robot)) = overlay.reduction {
        let color = robot_color(robot);
        let arm = CELL / 5.0;
        let _ = writeln!(out, r#"<g id="inferior" stroke="{color}" stroke-width="1.5">"#);
        for v in red.inferiors[robot].union.vertices.iter() {
            let (x, y) = center(g.vertex(v).row, g.vertex(v).col);
            let _ = writeln!(
                out,
                r#"<path d="M{} {} L{} {} M{} {} L{} {}"/>"#,
                x - arm,
                y - arm,
                x + arm,
                y + arm,
                x - arm,
                y + arm,
                x + arm,
                y - arm
            );
        }
        let _ = writeln!(out, "</g>\n<g id=\"residual\" fill=\"{color}\">");
        for v in red.residuals[robot].iter() {
            let (x, y) = center(g.vertex(v).row, g.vertex(v).col);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2"/>"#);
        }
        out.push_str("</g>\n");
    }

    if let Some(s) = overlay.solution {
        out.push_str("<g id=\"trees\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n");
        for (i, t) in s.trees.iter().enumerate() {
            let _ = writeln!(out, r#"<g stroke="{}">"#, robot_color(i));
            for &e in &t.edges {
                let (a, b) = (g.vertex(g.edge(e).u), g.vertex(g.edge(e).v));
                let ((x1, y1), (x2, y2)) = (center(a.row, a.col), center(b.row, b.col));
                let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
            }
            out.push_str("</g>\n");
        }
        out.push_str("</g>\n");
    }

    if let Some((plan, d)) = overlay.coverage {
        out.push_str("<g id=\"paths\" fill=\"none\" stroke-width=\"3\" stroke-opacity=\"0.7\" stroke-linejoin=\"round\">\n");
        for (i, path) in plan.paths.iter().enumerate() {
            let pts: Vec<String> = path
                .iter()
                .chain(path.first())
                .map(|&c| {
                    let (x, y) = sub_center(d.cell(c).row, d.cell(c).col);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(out, r#"<polyline stroke="{}" points="{}"/>"#, robot_color(i), pts.join(" "));
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g id=\"roots\" stroke=\"#000000\" stroke-width=\"1\">\n");
    for (i, &(r, c)) in inst.roots().iter().enumerate() {
        let (x, y) = center(r, c);
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="{}" fill="{}"/><text x="{x}" y="{}" font-size="8" text-anchor="middle" stroke="none">{i}</text>"#,
            CELL / 3.0,
            robot_color(i),
            y + 3.0
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{build_reduction, ReductionParams};
    use crate::stc::build_plan;
    use crate::terrain::{build_graph, decompose, root_vertices};
    use crate::warmstart::initial_solution;

    const INST: &str = "mmrtc 1\n3 4 2 0\n1 1 1 1\n1 # 1 1\n1 1 1 1\n0 0\n2 3\n";

    #[test]
    fn instance_only_layers() {
        let inst = Instance::parse(INST).unwrap();
        let g = build_graph(&inst);
        let svg = render_svg(&inst, &g, &Overlay::default());
        assert!(svg.contains("id=\"grid\"") && svg.contains("id=\"roots\"") && svg.contains("id=\"obstacles\""));
        assert!(!svg.contains("id=\"paths\""));
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn plan_layers() {
        let inst = Instance::parse(INST).unwrap();
        let g = build_graph(&inst);
        let d = decompose(&g);
        let roots = root_vertices(&inst, &g);
        let s = initial_solution(&g, &roots).unwrap();
        let plan = build_plan(&s, &g, &d).unwrap();
        let red = build_reduction(&g, &roots, ReductionParams::Prh { alpha: 0.0 }).unwrap();
        let overlay = Overlay { reduction: Some((&red, 0)), solution: Some(&s), coverage: Some((&plan, &d)) };
        let svg = render_svg(&inst, &g, &overlay);
        assert_eq!(svg.matches("<polyline").count(), 2);
        let crosses = svg.matches("<path").count();
        assert_eq!(crosses, red.inferiors[0].union.vertices.len());
        assert_eq!(svg, render_svg(&inst, &g, &overlay));
    }
}
