//! JSON documents for weightings, lists and labelings.
//!
//! Rationals travel as `"p/q"` strings (integers as `"p"`), edges as `"u-v"`
//! keys and orientations as `"tail>head"`. Writers emit keys in ascending
//! vertex or edge order, so equal values give byte-identical output.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::labeling::{Labeling, ListAssignment, Orientation, Weighting};
use crate::pipeline::{SolveResult, Variant};
use crate::scalar::Scalar;
use crate::verify::VerifyReport;
use crate::Rational;

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(value: &Value, path: &str) -> Result<Rational> {
    match value {
        Value::String(s) => {
            Rational::from_str(s.trim()).map_err(|_| schema(path, format!("not a rational: {s:?}")))
        }
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_int(i)),
            None => Err(schema(path, format!("non-integer number {n}; write rationals as \"p/q\""))),
        },
        other => Err(schema(path, format!("expected a rational string, found {other}"))),
    }
}

fn parse_document(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(schema("$", "expected a JSON object")),
        Err(e) => Err(schema("$", e.to_string())),
    }
}

fn object<'a>(doc: &'a Map<String, Value>, key: &str) -> Result<&'a Map<String, Value>> {
    match doc.get(key) {
        Some(Value::Object(m)) => Ok(m),
        Some(_) => Err(schema(format!("$.{key}"), "expected an object")),
        None => Err(schema("$", format!("missing key {key:?}"))),
    }
}

fn edge_key(key: &str, path: &str) -> Result<Edge> {
    Edge::parse_key(key).ok_or_else(|| schema(path, format!("invalid edge key {key:?}")))
}

pub fn read_weighting(text: &str, g: &Graph) -> Result<Weighting<Rational>> {
    let doc = parse_document(text)?;
    let mut weights = BTreeMap::new();
    for (key, value) in object(&doc, "weights")? {
        let path = format!("$.weights.{key}");
        let v: VertexId = key
            .trim()
            .parse()
            .map_err(|_| schema(&path, format!("invalid vertex id {key:?}")))?;
        if !g.has_vertex(v) {
            return Err(schema(&path, format!("vertex {v} is not in the graph")));
        }
        weights.insert(v, parse_rational(value, &path)?);
    }
    Ok(Weighting::from_map(weights))
}

pub fn read_lists(text: &str, g: &Graph) -> Result<ListAssignment<Rational>> {
    let doc = parse_document(text)?;
    let mut lists = BTreeMap::new();
    for (key, value) in object(&doc, "lists")? {
        let path = format!("$.lists.{key}");
        let e = edge_key(key, &path)?;
        if !g.has_edge(e) {
            return Err(schema(&path, format!("edge {e} is not in the graph")));
        }
        let Value::Array(items) = value else {
            return Err(schema(&path, "expected an array"));
        };
        let mut set = BTreeSet::new();
        for (i, item) in items.iter().enumerate() {
            let item_path = format!("{path}[{i}]");
            let r = parse_rational(item, &item_path)?;
            if !set.insert(r.clone()) {
                return Err(schema(item_path, format!("value {r} repeats in the list")));
            }
        }
        if lists.insert(e, set).is_some() {
            return Err(schema(&path, format!("edge {e} listed twice")));
        }
    }
    Ok(ListAssignment::from_map(lists))
}

/// A labeling document. `k` and `variant` are informational; unknown
/// top-level keys such as `report` and `trace` are ignored on read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelingDocument<S> {
    pub labeling: Labeling<S>,
    pub k: Option<u64>,
    pub variant: Option<Variant>,
}

pub fn read_labeling(text: &str, g: &Graph) -> Result<LabelingDocument<Rational>> {
    let doc = parse_document(text)?;
    let mut labels = BTreeMap::new();
    for (key, value) in object(&doc, "labels")? {
        let path = format!("$.labels.{key}");
        let e = edge_key(key, &path)?;
        if !g.has_edge(e) {
            return Err(schema(&path, format!("edge {e} is not in the graph")));
        }
        labels.insert(e, parse_rational(value, &path)?);
    }
    let mut labeling = Labeling::from_map(labels);

    if let Some(value) = doc.get("orientation").filter(|v| !v.is_null()) {
        let Value::Object(map) = value else {
            return Err(schema("$.orientation", "expected an object"));
        };
        let mut orientation = Orientation::default();
        for (key, value) in map {
            let path = format!("$.orientation.{key}");
            let e = edge_key(key, &path)?;
            let (tail, head) = value
                .as_str()
                .and_then(|s| s.split_once('>'))
                .and_then(|(t, h)| Some((t.trim().parse::<VertexId>().ok()?, h.trim().parse::<VertexId>().ok()?)))
                .ok_or_else(|| schema(&path, "expected \"tail>head\""))?;
            if Edge::try_new(tail, head) != Some(e) {
                return Err(schema(&path, format!("{tail}>{head} does not orient {e}")));
            }
            orientation.set(tail, head)?;
        }
        labeling.set_orientation(Some(orientation));
    }

    let k = match doc.get("k") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| schema("$.k", "expected a non-negative integer"))?),
    };
    let variant = match doc.get("variant") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_str()
                .and_then(Variant::parse)
                .ok_or_else(|| schema("$.variant", "expected \"weighted-list\" or \"oriented\""))?,
        ),
    };
    Ok(LabelingDocument { labeling, k, variant })
}

pub fn weighting_json<S: Scalar>(w: &Weighting<S>) -> Value {
    let weights: Map<String, Value> = w
        .entries()
        .map(|(v, x)| (v.to_string(), Value::String(x.to_string())))
        .collect();
    let mut doc = Map::new();
    doc.insert("weights".into(), Value::Object(weights));
    Value::Object(doc)
}

pub fn lists_json<S: Scalar>(lists: &ListAssignment<S>) -> Value {
    let map: Map<String, Value> = lists
        .entries()
        .map(|(e, l)| {
            let items = l.iter().map(|x| Value::String(x.to_string())).collect();
            (e.to_string(), Value::Array(items))
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("lists".into(), Value::Object(map));
    Value::Object(doc)
}

pub fn labeling_json<S: Scalar>(f: &Labeling<S>, k: Option<u64>, variant: Option<Variant>) -> Value {
    let mut doc = Map::new();
    if let Some(variant) = variant {
        doc.insert("variant".into(), Value::String(variant.name().into()));
    }
    if let Some(k) = k {
        doc.insert("k".into(), Value::from(k));
    }
    let labels: Map<String, Value> = f
        .entries()
        .map(|(e, l)| (e.to_string(), Value::String(l.to_string())))
        .collect();
    doc.insert("labels".into(), Value::Object(labels));
    if let Some(o) = f.orientation() {
        let map: Map<String, Value> = o
            .entries()
            .map(|(e, head)| {
                let tail = e.other(head).expect("head lies on its edge");
                (e.to_string(), Value::String(format!("{tail}>{head}")))
            })
            .collect();
        doc.insert("orientation".into(), Value::Object(map));
    }
    Value::Object(doc)
}

pub fn report_json<S: Scalar>(report: &VerifyReport<S>) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

/// The labeling document plus its verify report, and the trace on request.
pub fn solve_result_json<S: Scalar>(result: &SolveResult<S>, with_trace: bool) -> Value {
    let mut doc = labeling_json(&result.labeling, Some(result.k), Some(result.variant));
    let map = doc.as_object_mut().expect("labeling documents are objects");
    map.insert("report".into(), report_json(&result.report));
    if with_trace {
        map.insert(
            "trace".into(),
            serde_json::to_value(&result.trace).expect("trace events serialize"),
        );
    }
    doc
}

/// Pretty-printed with a trailing newline.
pub fn to_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}
