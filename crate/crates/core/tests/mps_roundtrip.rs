mod common;

use std::collections::{BTreeMap, BTreeSet};

use mmrtc::model::{build_model, export_mps, MipModel, ModelOptions, Sense, VarKind};
use mmrtc::reduction::{build_reduction, ReductionParams};
use mmrtc::terrain::VertexSet;

/// Free-standing MPS reader covering the subset of the format the exporter uses.
#[derive(Default, Debug)]
struct Mps {
    rows: Vec<(String, char)>,
    columns: Vec<String>,
    integer: BTreeSet<String>,
    coef: BTreeMap<(String, String), f64>,
    rhs: BTreeMap<String, f64>,
    binary: BTreeSet<String>,
    upper: BTreeMap<String, f64>,
}

fn read_mps(text: &str) -> Mps {
    let mut m = Mps::default();
    let mut section = String::new();
    let mut in_int = false;
    for line in text.lines() {
        if !line.starts_with(' ') {
            section = line.split_whitespace().next().unwrap().to_string();
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        match section.as_str() {
            "OBJSENSE" => assert_eq!(t, ["MIN"]),
            "ROWS" => m.rows.push((t[1].to_string(), t[0].chars().next().unwrap())),
            "COLUMNS" => {
                if t.get(1) == Some(&"'MARKER'") {
                    in_int = t[2] == "'INTORG'";
                    continue;
                }
                if m.columns.last().map(String::as_str) != Some(t[0]) {
                    assert!(!m.columns.contains(&t[0].to_string()), "column {} split", t[0]);
                    m.columns.push(t[0].to_string());
                }
                if in_int {
                    m.integer.insert(t[0].to_string());
                }
                for pair in t[1..].chunks(2) {
                    let prev = m.coef.insert((t[0].to_string(), pair[0].to_string()), pair[1].parse().unwrap());
                    assert!(prev.is_none());
                }
            }
            "RHS" => {
                for pair in t[1..].chunks(2) {
                    m.rhs.insert(pair[0].to_string(), pair[1].parse().unwrap());
                }
            }
            "BOUNDS" => match t[0] {
                "BV" => {
                    m.binary.insert(t[2].to_string());
                }
                "UP" => {
                    m.upper.insert(t[2].to_string(), t[3].parse().unwrap());
                }
                other => panic!("unexpected bound type {other}"),
            },
            other => panic!("unexpected section {other}"),
        }
    }
    assert_eq!(section, "ENDATA");
    m
}

fn check(model: &MipModel) {
    let text = export_mps(model).unwrap();
    let mps = read_mps(&text);
    let vars = model.variables();
    assert_eq!(mps.columns.len(), vars.len());
    for (col, var) in mps.columns.iter().zip(vars) {
        assert_eq!(col, &var.name);
        let is_bin = var.kind == VarKind::Binary;
        assert_eq!(mps.integer.contains(col), is_bin);
        assert_eq!(mps.binary.contains(col), is_bin);
    }
    let cons = model.constraints();
    assert_eq!(mps.rows.len(), cons.len() + 1);
    assert_eq!(mps.rows[0], ("obj".to_string(), 'N'));
    for ((name, sense), c) in mps.rows[1..].iter().zip(cons) {
        assert_eq!(name, &c.name);
        let expect = match c.sense {
            Sense::Le => 'L',
            Sense::Eq => 'E',
            Sense::Ge => 'G',
        };
        assert_eq!(*sense, expect);
        assert_eq!(mps.rhs.get(name).copied().unwrap_or(0.0), c.rhs);
        for &(var, a) in &c.terms {
            assert_eq!(mps.coef[&(vars[var].name.clone(), c.name.clone())], a);
        }
    }
    let obj: Vec<_> = mps.coef.iter().filter(|((_, r), v)| r == "obj" && **v != 0.0).collect();
    assert_eq!(obj.len(), 1);
    assert_eq!(obj[0].0 .0, "tau");
    let nonzeros = cons.iter().map(|c| c.terms.len()).sum::<usize>();
    assert_eq!(mps.coef.iter().filter(|((_, r), _)| r != "obj").count(), nonzeros);
}

#[test]
fn fixtures_round_trip_through_independent_reader() {
    for name in ["floor-small", "terrain-small", "maze-small"] {
        let inst = common::load(&format!("instances/{name}.mmrtc"));
        let (g, roots) = common::setup(&inst);
        for params in [ReductionParams::None, ReductionParams::Prh { alpha: 0.6 }, ReductionParams::Srh { beta: 0.6 }] {
            let red = build_reduction(&g, &roots, params).unwrap();
            check(&build_model(&g, &red.residuals, &roots, ModelOptions::default()).unwrap());
        }
    }
}

#[test]
fn tau_cutoff_is_an_upper_bound() {
    let inst = common::load("solutions/square.mmrtc");
    let (g, roots) = common::setup(&inst);
    let full = vec![VertexSet::full(g.vertex_count()); roots.len()];
    let model = build_model(&g, &full, &roots, ModelOptions { tau_cutoff: Some(2.5) }).unwrap();
    let mps = read_mps(&export_mps(&model).unwrap());
    assert_eq!(mps.upper.get("tau"), Some(&2.5));
}

#[test]
fn sentinels_export_identical_bytes() {
    for seed in 0..20 {
        let inst = common::random_instance(seed, 4, 5, 2 + seed as usize % 3, 0.1, seed % 2 == 0);
        let (g, roots) = common::setup(&inst);
        let base = {
            let red = build_reduction(&g, &roots, ReductionParams::None).unwrap();
            export_mps(&build_model(&g, &red.residuals, &roots, ModelOptions::default()).unwrap()).unwrap()
        };
        for params in [ReductionParams::Prh { alpha: f64::INFINITY }, ReductionParams::Srh { beta: 0.0 }] {
            let red = build_reduction(&g, &roots, params).unwrap();
            let text = export_mps(&build_model(&g, &red.residuals, &roots, ModelOptions::default()).unwrap()).unwrap();
            assert_eq!(text, base, "seed {seed} {params}");
        }
    }
}
