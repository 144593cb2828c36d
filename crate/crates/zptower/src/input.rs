//! The JSON input document describing a tower: base graph, prime,
//! voltages and ramification.
//!
//! ```json
//! {
//!   "p": 3,
//!   "vertices": ["v1", "v2"],
//!   "edges": [
//!     {"id": "s1", "from": "v1", "to": "v1", "voltage": 1},
//!     {"id": "s2", "from": "v1", "to": "v2", "voltage": 0},
//!     {"id": "s3", "from": "v2", "to": "v2", "voltage": "11"}
//!   ],
//!   "ramification": {"v2": 1}
//! }
//! ```
//!
//! Each undirected edge is listed once with a chosen orientation; the
//! reverse direction implicitly carries the negated voltage.  Voltages
//! may be JSON integers, decimal strings (for magnitudes beyond 2^53),
//! or truncated p-adics `{"digits": [d0, d1, ...], "precision": N}`
//! meaning `sum d_i p^i` known mod `p^N`.  Vertices absent from
//! `ramification` are unramified.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::SerreGraph;
use crate::padic::PadicScalar;
use crate::tower::{Ramification, VoltageGraph};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    p: u64,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    ramification: BTreeMap<String, u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    from: String,
    to: String,
    voltage: RawVoltage,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawVoltage {
    Int(i64),
    Big(String),
    Truncated { digits: Vec<u64>, precision: u32 },
}

/// A parsed document: the voltage data plus the edge names used for
/// emission.
#[derive(Clone, Debug)]
pub struct Document {
    pub vg: VoltageGraph,
    /// One id per undirected edge, in input order.
    pub edge_ids: Vec<String>,
}

/// Parses and semantically validates a document.  Syntax errors carry
/// serde's line/column positions; semantic errors carry a JSON-pointer
/// style path.
pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("parse error: {e}")))?;
    build_document(raw)
}

fn build_document(raw: RawDocument) -> Result<Document> {
    let p = raw.p;
    if !crate::matrix::is_prime(p) {
        return Err(Error::Input(format!("at /p: {p} is not prime")));
    }
    let mut index_of = BTreeMap::new();
    for (i, name) in raw.vertices.iter().enumerate() {
        if index_of.insert(name.clone(), i).is_some() {
            return Err(Error::Input(format!(
                "at /vertices/{i}: duplicate vertex name {name:?}"
            )));
        }
    }
    let mut pairs = Vec::with_capacity(raw.edges.len());
    let mut voltages = Vec::with_capacity(raw.edges.len());
    let mut edge_ids = Vec::with_capacity(raw.edges.len());
    let mut seen_ids = BTreeMap::new();
    for (i, edge) in raw.edges.iter().enumerate() {
        if seen_ids.insert(edge.id.clone(), i).is_some() {
            return Err(Error::Input(format!(
                "at /edges/{i}/id: duplicate edge id {:?}",
                edge.id
            )));
        }
        let from = *index_of.get(&edge.from).ok_or_else(|| {
            Error::Input(format!(
                "at /edges/{i}/from: unknown vertex {:?}",
                edge.from
            ))
        })?;
        let to = *index_of.get(&edge.to).ok_or_else(|| {
            Error::Input(format!("at /edges/{i}/to: unknown vertex {:?}", edge.to))
        })?;
        pairs.push((from, to));
        voltages.push(parse_voltage(&edge.voltage, p, i)?);
        edge_ids.push(edge.id.clone());
    }
    let mut ramification = vec![Ramification::Unramified; raw.vertices.len()];
    for (name, &k) in &raw.ramification {
        let v = *index_of
            .get(name)
            .ok_or_else(|| Error::Input(format!("at /ramification/{name}: unknown vertex")))?;
        ramification[v] = Ramification::Ramified(k);
    }
    let base = SerreGraph::new(raw.vertices, &pairs)?;
    let vg = VoltageGraph::new(base, p, voltages, ramification)?;
    Ok(Document { vg, edge_ids })
}

fn parse_voltage(raw: &RawVoltage, p: u64, edge_index: usize) -> Result<PadicScalar> {
    match raw {
        RawVoltage::Int(v) => Ok(PadicScalar::exact(p, *v)),
        RawVoltage::Big(text) => {
            let value: BigInt = text.trim().parse().map_err(|_| {
                Error::Input(format!(
                    "at /edges/{edge_index}/voltage: {text:?} is not a decimal integer"
                ))
            })?;
            Ok(PadicScalar::exact(p, value))
        }
        RawVoltage::Truncated { digits, precision } => {
            if *precision == 0 {
                return Err(Error::Input(format!(
                    "at /edges/{edge_index}/voltage/precision: must be positive"
                )));
            }
            if digits.len() > *precision as usize {
                return Err(Error::Input(format!(
                    "at /edges/{edge_index}/voltage: {} digits exceed precision {precision}",
                    digits.len()
                )));
            }
            let mut value = BigUint::zero();
            let mut power = BigUint::from(1u32);
            for (j, &d) in digits.iter().enumerate() {
                if d >= p {
                    return Err(Error::Input(format!(
                        "at /edges/{edge_index}/voltage/digits/{j}: digit {d} not in [0, {p})"
                    )));
                }
                value += &power * BigUint::from(d);
                power *= BigUint::from(p);
            }
            Ok(PadicScalar::truncated(p, value, *precision))
        }
    }
}
