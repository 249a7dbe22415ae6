//! Text and JSON rendering with cell names in place of ids.

use std::fmt::Write;

use serde_json::{json, Value};

use cubical_core::{CellId, CheckReport, ClassicalStructure, DirectionSet, InverseCertificate, SingleSetStructure};

/// Version of the `check --json` report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub enum Names<'a> {
    Single(&'a SingleSetStructure),
    Classical(&'a ClassicalStructure),
}

impl Names<'_> {
    fn name(&self, x: CellId) -> String {
        match self {
            Names::Single(s) => s.name(x).to_string(),
            Names::Classical(c) => c.global_name(x),
        }
    }
}

fn side(names: &Names, x: Option<CellId>) -> String {
    x.map(|x| names.name(x)).unwrap_or_else(|| "undefined".into())
}

pub fn report_text(r: &CheckReport, names: &Names) -> String {
    let mut out = String::new();
    for v in &r.violations {
        let bindings: Vec<String> = v.bindings.iter().map(|(k, val)| format!("{k}={val}")).collect();
        let cells: Vec<String> = v.cells.iter().map(|&x| names.name(x)).collect();
        let _ = write!(out, "FAIL {} [{}] cells: {}", v.axiom_id, bindings.join(" "), cells.join(", "));
        if v.lhs.is_some() || v.rhs.is_some() {
            let _ = write!(out, "; lhs {} rhs {}", side(names, v.lhs), side(names, v.rhs));
        }
        out.push('\n');
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for s in &r.skipped {
        let _ = writeln!(out, "skipped: {s}");
    }
    let _ = writeln!(
        out,
        "{}: {} violations in {} instances of {} laws",
        if r.passed() { "PASS" } else { "FAIL" },
        r.violations.len(),
        r.checked_count,
        r.per_axiom.len()
    );
    out
}

pub fn report_json(r: &CheckReport, names: &Names) -> String {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom_id": v.axiom_id,
                "severity": v.severity,
                "bindings": v.bindings.iter().map(|(k, val)| json!([k, val])).collect::<Vec<_>>(),
                "cells": v.cells.iter().map(|&x| names.name(x)).collect::<Vec<_>>(),
                "lhs": v.lhs.map(|x| names.name(x)),
                "rhs": v.rhs.map(|x| names.name(x)),
            })
        })
        .collect();
    let doc = json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "passed": r.passed(),
        "checked_count": r.checked_count,
        "per_axiom": r.per_axiom,
        "violations": violations,
        "notes": r.notes,
        "skipped": r.skipped,
    });
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

pub fn certificate_text(c: &InverseCertificate, s: &SingleSetStructure) -> String {
    let [d1, e1, d2, e2] = c.evidence;
    format!(
        "direction {}\ncell {}\ninverse {}\nevidence x∘y defined={d1} x∘y=δ⁻x {e1} y∘x defined={d2} y∘x=δ⁺x {e2}\n",
        c.direction,
        s.name(c.cell),
        s.name(c.inverse)
    )
}

pub fn certificate_json(c: &InverseCertificate, s: &SingleSetStructure) -> String {
    serde_json::to_string_pretty(&json!({
        "direction": c.direction,
        "cell": s.name(c.cell),
        "inverse": s.name(c.inverse),
        "evidence": c.evidence,
        "complete": c.is_complete(),
    }))
    .expect("certificates serialize")
}

/// All fixed-point sets `S^I` and the one-direction inclusions `S^J ⊆ S^I` for `J = I ∪ {j}`.
pub struct Lattice {
    nodes: Vec<(DirectionSet, Vec<String>)>,
    edges: Vec<(usize, usize, bool)>,
}

impl Lattice {
    pub fn new(s: &SingleSetStructure) -> Self {
        let sets = s.fixed_point_lattice();
        let mut edges = Vec::new();
        for (a, (i, si)) in sets.iter().enumerate() {
            for (b, (j, sj)) in sets.iter().enumerate() {
                if j.len() == i.len() + 1 && j.is_superset(i) {
                    edges.push((b, a, sj.iter().all(|x| si.contains(x))));
                }
            }
        }
        let nodes = sets.into_iter().map(|(i, set)| (i, set.into_iter().map(|x| s.name(x).to_string()).collect())).collect();
        Lattice { nodes, edges }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, set) in &self.nodes {
            let _ = writeln!(out, "S^{i} {}", set.len());
        }
        for &(j, i, holds) in &self.edges {
            let rel = if holds { "⊆" } else { "⊈" };
            let _ = writeln!(out, "S^{} {rel} S^{}", self.nodes[j].0, self.nodes[i].0);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let label = |k: usize| self.nodes[k].0.members().collect::<Vec<_>>();
        let doc = json!({
            "sets": self.nodes.iter().map(|(i, set)| json!({
                "directions": i.members().collect::<Vec<_>>(),
                "size": set.len(),
                "cells": set,
            })).collect::<Vec<_>>(),
            "inclusions": self.edges.iter().map(|&(j, i, holds)| json!({
                "sub": label(j),
                "sup": label(i),
                "holds": holds,
            })).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).expect("lattices serialize")
    }
}
