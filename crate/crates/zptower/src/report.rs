//! Machine-readable outputs: level emission (JSON and DOT) and the
//! verification report schema.  All big integers are serialized as
//! decimal strings since they routinely exceed double precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, SerreGraph};
use crate::input::Document;
use crate::iwasawa::VerifyOutcome;
use crate::tower::LevelGraph;

#[derive(Debug, Serialize, Deserialize)]
struct LevelJson {
    level: u32,
    p: u64,
    group_order: u64,
    vertices: Vec<LevelVertexJson>,
    edges: Vec<LevelEdgeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LevelVertexJson {
    base: String,
    residue: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct LevelEdgeJson {
    base: String,
    reversed: bool,
    sigma: u64,
    origin: usize,
    terminus: usize,
    inverse: usize,
}

fn level_json(level: &LevelGraph, doc: &Document) -> LevelJson {
    let base = doc.vg.base();
    let vertices = level
        .vertex_labels()
        .iter()
        .map(|&(v, r)| LevelVertexJson {
            base: base.vertex_name(v).to_string(),
            residue: r,
        })
        .collect();
    let edges = level
        .edge_labels()
        .iter()
        .enumerate()
        .map(|(i, &(e, sigma))| {
            let de = &level.graph().edges()[i];
            LevelEdgeJson {
                base: doc.edge_ids[e / 2].clone(),
                reversed: e % 2 == 1,
                sigma,
                origin: de.origin,
                terminus: de.terminus,
                inverse: de.inverse,
            }
        })
        .collect();
    LevelJson {
        level: level.level(),
        p: level.prime(),
        group_order: level.group_order(),
        vertices,
        edges,
    }
}

/// Serializes one tower level with its labels.
pub fn level_to_json(level: &LevelGraph, doc: &Document) -> serde_json::Value {
    serde_json::to_value(level_json(level, doc)).expect("level serialization cannot fail")
}

/// A level read back from its JSON emission.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedLevel {
    pub level: u32,
    pub p: u64,
    pub group_order: u64,
    pub graph: SerreGraph,
    pub vertex_labels: Vec<(String, u64)>,
    pub edge_labels: Vec<(String, bool, u64)>,
}

/// Re-parses an emitted level and re-validates the graph axioms.
pub fn level_from_json(value: &serde_json::Value) -> Result<ParsedLevel> {
    let raw: LevelJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Input(format!("level document: {e}")))?;
    let names = raw
        .vertices
        .iter()
        .map(|v| format!("{}:{}", v.base, v.residue))
        .collect();
    let edges = raw
        .edges
        .iter()
        .map(|e| DirectedEdge {
            origin: e.origin,
            terminus: e.terminus,
            inverse: e.inverse,
        })
        .collect();
    let graph = SerreGraph::from_raw_parts(names, edges);
    let violations = graph.validate();
    if !violations.is_empty() {
        return Err(Error::Input(format!(
            "emitted level is not a graph: {}",
            violations.join("; ")
        )));
    }
    Ok(ParsedLevel {
        level: raw.level,
        p: raw.p,
        group_order: raw.group_order,
        graph,
        vertex_labels: raw
            .vertices
            .into_iter()
            .map(|v| (v.base, v.residue))
            .collect(),
        edge_labels: raw
            .edges
            .into_iter()
            .map(|e| (e.base, e.reversed, e.sigma))
            .collect(),
    })
}

/// DOT rendering for human inspection: vertices are `base:residue`, one
/// line per undirected edge labelled `base-id:sigma`.
pub fn level_to_dot(level: &LevelGraph, doc: &Document) -> String {
    let g = level.graph();
    let mut out = format!("graph \"level_{}\" {{\n", level.level());
    for v in 0..g.num_vertices() {
        out.push_str(&format!("  \"{}\";\n", g.vertex_name(v)));
    }
    for (i, &(e, sigma)) in level.edge_labels().iter().enumerate() {
        if i > g.inverse(i) {
            continue; // one line per geometric edge
        }
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}:{}\"];\n",
            g.vertex_name(g.origin(i)),
            g.vertex_name(g.terminus(i)),
            doc.edge_ids[e / 2],
            sigma
        ));
    }
    out.push_str("}\n");
    out
}

/// Human-readable polynomial in `T` from exact coefficients, with an
/// optional `O(T^m)` tail marker.
pub fn format_t_series(coeffs: &[BigInt], tail_order: Option<usize>) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{i}"),
        };
        let abs = c.abs();
        let body = if abs.is_one() && i > 0 {
            mono
        } else if mono.is_empty() {
            abs.to_string()
        } else {
            format!("{abs}{mono}")
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() {
                format!("-{body}")
            } else {
                body
            });
        } else {
            parts.push(format!(
                "{} {body}",
                if c.is_negative() { "-" } else { "+" }
            ));
        }
    }
    if let Some(m) = tail_order {
        let tail = format!("O(T^{m})");
        if parts.is_empty() {
            parts.push(tail);
        } else {
            parts.push(format!("+ {tail}"));
        }
    } else if parts.is_empty() {
        parts.push("0".to_string());
    }
    parts.join(" ")
}

/// The verification report as JSON, following the documented schema.
pub fn verify_outcome_to_json(outcome: &VerifyOutcome) -> serde_json::Value {
    let report = &outcome.report;
    let f = &report.f;
    let (unit_shift, poly) = match f.exact_normalized() {
        Some((shift, terms)) => {
            let poly: Vec<serde_json::Value> = terms
                .iter()
                .map(|(exp, coeff)| serde_json::json!([exp, coeff.to_string()]))
                .collect();
            (serde_json::json!(shift), serde_json::json!(poly))
        }
        None => (serde_json::Value::Null, serde_json::Value::Null),
    };
    let series: Vec<String> = match &f.exact_coeffs {
        Some(coeffs) => coeffs.iter().map(|c| c.to_string()).collect(),
        None => (0..f.series.t_precision())
            .map(|i| f.series.signed_coeff(i).to_string())
            .collect(),
    };
    let levels: Vec<serde_json::Value> = report
        .levels
        .iter()
        .map(|l| {
            serde_json::json!({
                "n": l.n,
                "vertices": l.vertices,
                "edges": l.undirected_edges,
                "kappa": l.kappa.to_string(),
                "ordp": l.ordp,
            })
        })
        .collect();
    let criterion = match report.criterion_connected {
        Some(b) => serde_json::json!(b),
        None => serde_json::json!("indeterminate"),
    };
    serde_json::json!({
        "p": report.p,
        "f": {
            "unit_shift": unit_shift,
            "poly": poly,
            "series": series,
        },
        "mu": report.mu,
        "lambda_f": report.lambda_f,
        "lambda_pic": report.lambda_pic,
        "certified": report.certified,
        "nu": report.nu,
        "n0": report.n0,
        "growth_ok": report.growth_ok,
        "levels": levels,
        "checks": {
            "cover_axioms": outcome.checks.cover_axioms,
            "laplacian_compatibility": outcome.checks.laplacian_compatibility,
            "kappa_divisibility": outcome.checks.kappa_divisibility,
            "f_vanishes_at_origin": outcome.checks.f_vanishes_at_origin,
            "factorization": outcome.checks.factorization,
            "connectedness_criterion": criterion,
            "growth_ok": report.growth_ok,
            "certified": report.certified,
        },
        "warnings": report.warnings,
    })
}
