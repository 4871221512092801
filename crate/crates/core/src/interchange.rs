//! JSON graph interchange: `{"vertices":[labels], "unit":index, "edges":[[src,dst,"p/q"],...]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{GrowthProblem, Truncation};
use crate::error::{Error, Result};
use crate::weight::{format_rational, parse_rational};

/// Serialized fusion graph. Edge endpoints are vertex indices; weights are exact rational strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphInterchange {
    pub vertices: Vec<String>,
    pub unit: usize,
    pub edges: Vec<(usize, usize, String)>,
}

impl GraphInterchange {
    /// Dumps a truncation with labels rendered by the problem's rule.
    pub fn from_truncation(gp: &GrowthProblem, t: &Truncation) -> Self {
        let vertices = t.vertices.iter().map(|k| gp.label(k)).collect();
        let mut edges = Vec::with_capacity(t.matrix.nnz());
        for (j, col) in t.matrix.columns.iter().enumerate() {
            for (i, w) in col {
                edges.push((j, *i, format_rational(w)));
            }
        }
        GraphInterchange { vertices, unit: 0, edges }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Parsed interchange with endpoints resolved to indices; accepts label or index endpoints and
/// numeric or string weights.
pub(crate) fn parse_interchange(value: &Value) -> Result<GraphInterchange> {
    let obj = value.as_object().ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"vertices\" array".into()))?
        .iter()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    let unit = match obj.get("unit") {
        None => 0,
        Some(u) => u
            .as_u64()
            .ok_or_else(|| Error::Malformed("\"unit\" must be a nonnegative index".into()))? as usize,
    };
    let resolve = |v: &Value| -> Result<usize> {
        match v {
            Value::Number(n) => n
                .as_u64()
                .map(|i| i as usize)
                .filter(|&i| i < vertices.len())
                .ok_or_else(|| Error::Malformed(format!("edge endpoint {n} out of range"))),
            Value::String(s) => vertices
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Malformed(format!("unknown vertex label {s:?}"))),
            other => Err(Error::Malformed(format!("bad edge endpoint {other}"))),
        }
    };
    let mut edges = Vec::new();
    for e in obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing \"edges\" array".into()))?
    {
        let triple = e
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Malformed(format!("edge {e} is not [src, dst, weight]")))?;
        let weight = parse_rational(&weight_text(&triple[2])?)?;
        if weight < num_rational::BigRational::from_integer(0.into()) {
            return Err(Error::NegativeWeight(format_rational(&weight)));
        }
        edges.push((resolve(&triple[0])?, resolve(&triple[1])?, format_rational(&weight)));
    }
    Ok(GraphInterchange { vertices, unit, edges })
}

pub(crate) fn weight_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("weight {other} is not a number or string"))),
    }
}
