//! JSON and text renderings of orbits, duals and limit decompositions.
//!
//! JSON keys are sorted, so equal inputs give byte-identical output.

use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::crystal::{Character, CrystalGroup, Orbit};
use crate::error::Result;
use crate::group90::{classify_orbit_type_90, is_group90, subgroup_label};
use crate::mackey::{OrbitDual, Rep};
use crate::numerics::{format_entry, CMatrix, C};
use crate::topology::{dual_labels, DecompositionReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn number(x: f64) -> Value {
    // −0.0 and 0.0 print differently; keep a single zero.
    json!(if x == 0.0 { 0.0 } else { x })
}

fn entry(z: C) -> Value {
    Value::Array(vec![number(z.re), number(z.im)])
}

/// Rows of [re, im] pairs.
pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|&z| entry(z)).collect())).collect())
}

pub fn meta_json(g: &CrystalGroup, character: &str, seed: u64) -> Value {
    json!({ "group": g.name(), "character": character, "seed": seed, "version": VERSION })
}

pub fn orbit_json(g: &CrystalGroup, chi: &Character, orbit: &Orbit) -> Result<Value> {
    let stab: Vec<&str> = orbit.stabilizer.elements().iter().map(|&d| g.point().name(d)).collect();
    let reps: Vec<&str> = orbit.reps.iter().map(|&d| g.point().name(d)).collect();
    let mut out = Map::new();
    out.insert("character".into(), json!(chi.to_string()));
    out.insert("size".into(), json!(orbit.size()));
    out.insert("characters".into(), json!(orbit.characters.iter().map(ToString::to_string).collect::<Vec<_>>()));
    out.insert("coset_representatives".into(), json!(reps));
    out.insert("stabilizer".into(), json!(stab));
    if is_group90(g) {
        out.insert("type".into(), json!(classify_orbit_type_90(g, chi)?.label()));
        out.insert("stabilizer_label".into(), json!(subgroup_label(g, &orbit.stabilizer)));
    }
    Ok(Value::Object(out))
}

pub fn rep_json(g: &CrystalGroup, label: &str, rep: &dyn Rep) -> Value {
    let generators: Map<String, Value> =
        g.generators().iter().map(|(name, x)| (name.clone(), matrix_json(&rep.eval(x)))).collect();
    json!({ "label": label, "dim": rep.dim(), "generators": generators })
}

/// Full output of the `orbit` command.
pub fn orbit_document(g: &CrystalGroup, chi: &Character, seed: u64) -> Result<Value> {
    let orbit = g.orbit_stabilizer(chi)?;
    Ok(json!({
        "meta": meta_json(g, &chi.to_string(), seed),
        "orbit": orbit_json(g, chi, &orbit)?,
        "reps": [],
        "report": {},
    }))
}

/// Full output of the `irreps` command.
pub fn irreps_document(g: &Arc<CrystalGroup>, dual: &OrbitDual, seed: u64) -> Result<Value> {
    let labels = dual_labels(g, dual)?;
    let reps: Vec<Value> = labels.iter().map(|(i, l)| rep_json(g, l, &dual.reps[*i])).collect();
    Ok(json!({
        "meta": meta_json(g, &dual.chi.to_string(), seed),
        "orbit": orbit_json(g, &dual.chi, &dual.orbit)?,
        "reps": reps,
        "report": {
            "count": dual.reps.len(),
            "dimension_sum": dual.dimension_sum(),
            "extension_order": dual.extension.group.order(),
            "finitization_order": dual.pipeline.finitized.n,
        },
    }))
}

pub fn decomposition_json(r: &DecompositionReport) -> Value {
    let constituents: Vec<Value> = r
        .constituents
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "stabilizer_dim": c.stab_dim,
                "dim": c.dim,
                "inner_product": number(c.inner),
                "multiplicity": c.multiplicity,
            })
        })
        .collect();
    let multiplicities: Map<String, Value> =
        r.constituents.iter().filter(|c| c.multiplicity > 0).map(|c| (c.label.clone(), json!(c.multiplicity))).collect();
    let mut out = json!({
        "path": r.path.to_string(),
        "samples": r.path.samples,
        "source": r.source.to_string(),
        "target": r.target.to_string(),
        "branch": r.branch,
        "source_stabilizer": r.source_stabilizer,
        "target_stabilizer": r.target_stabilizer,
        "limit_dim": r.limit_dim,
        "constituents": constituents,
        "multiplicities": multiplicities,
        "rounding_residual": number(r.residual),
        "stabilizer_self_inner_product": number(r.self_inner),
        "transversal_shift": number(r.transversal_shift),
        "cauchy_rate": number(r.cauchy_rate),
        "witness_spread": number(r.witness_spread),
        "closed_form_witnesses": r.closed_form_witnesses,
        "limit_relator_defect": number(r.limit_relator_defect),
    });
    if let Some(bd) = &r.block_diagonalization {
        let blocks: Vec<Value> = bd.blocks.iter().map(|(l, s)| json!({ "label": l, "size": s })).collect();
        out["block_diagonalization"] =
            json!({ "unitary": matrix_json(&bd.unitary), "blocks": blocks, "leakage": number(bd.leakage) });
    }
    out
}

/// Full output of the `limit` command; `limit` is the entrywise limit L.
pub fn limit_document(g: &CrystalGroup, r: &DecompositionReport, limit: &dyn Rep, seed: u64) -> Result<Value> {
    let orbit = g.orbit_stabilizer(&r.target)?;
    Ok(json!({
        "meta": meta_json(g, &r.target.to_string(), seed),
        "orbit": orbit_json(g, &r.target, &orbit)?,
        "reps": [rep_json(g, &format!("L({})", r.branch), limit)],
        "report": decomposition_json(r),
    }))
}

fn pretty_matrix(out: &mut String, m: &CMatrix, indent: &str) {
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|&z| format_entry(z)).collect();
        let _ = writeln!(out, "{indent}[{}]", cells.join(", "));
    }
}

fn pretty_orbit(out: &mut String, orbit: &Value) {
    let _ = writeln!(out, "orbit of {}: size {}", orbit["character"].as_str().unwrap_or(""), orbit["size"]);
    if let Some(t) = orbit["type"].as_str() {
        let _ = writeln!(out, "  type {t}, stabilizer {}", orbit["stabilizer_label"].as_str().unwrap_or(""));
    }
    let _ = writeln!(out, "  stabilizer {}", orbit["stabilizer"]);
    let _ = writeln!(out, "  characters {}", orbit["characters"]);
}

/// Human-readable rendering of a document; matrix entries are exact when they are small roots of unity.
pub fn pretty(g: &CrystalGroup, doc: &Value, reps: &[(String, &dyn Rep)]) -> String {
    let mut out = String::new();
    let meta = &doc["meta"];
    let _ = writeln!(out, "group {}  seed {}  version {}", meta["group"].as_str().unwrap_or(""), meta["seed"], VERSION);
    pretty_orbit(&mut out, &doc["orbit"]);
    for (label, rep) in reps {
        let _ = writeln!(out, "{label} (dim {})", rep.dim());
        for (name, x) in g.generators() {
            let _ = writeln!(out, "  {name}:");
            pretty_matrix(&mut out, &rep.eval(x), "    ");
        }
    }
    let report = &doc["report"];
    if let Some(cs) = report["constituents"].as_array() {
        let _ = writeln!(
            out,
            "limit of branch {} along {} -> {} (dim {})",
            report["branch"].as_str().unwrap_or(""),
            report["path"].as_str().unwrap_or(""),
            report["target"].as_str().unwrap_or(""),
            report["limit_dim"]
        );
        for c in cs {
            let _ = writeln!(
                out,
                "  {:<8} dim {:<2} multiplicity {}  (inner product {:.9})",
                c["label"].as_str().unwrap_or(""),
                c["dim"],
                c["multiplicity"],
                c["inner_product"].as_f64().unwrap_or(f64::NAN)
            );
        }
        let _ = writeln!(out, "  rounding residual {:.3e}", report["rounding_residual"].as_f64().unwrap_or(f64::NAN));
        if let Some(bd) = report.get("block_diagonalization") {
            let blocks: Vec<String> = bd["blocks"]
                .as_array()
                .map(|b| b.iter().map(|x| format!("{}[{}]", x["label"].as_str().unwrap_or(""), x["size"])).collect())
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  blocks {}  leakage {:.3e}",
                blocks.join(" + "),
                bd["leakage"].as_f64().unwrap_or(f64::NAN)
            );
        }
    } else if let Some(map) = report.as_object() {
        for (k, v) in map {
            let _ = writeln!(out, "{k}: {v}");
        }
    }
    out
}
