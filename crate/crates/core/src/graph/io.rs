//! JSON graph files:
//! `{"variables": ["z1"], "vertices": ["v0","v1"], "arrows": [{"from": "v0", "to": "v1", "weight": "z1"}]}`.
//! An arrow `from -> to` with weight `w` sets `A[to][from] = w`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Arrow, GraphError, WeightedDigraph};
use crate::laurent::LaurentPoly;

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    #[serde(default)]
    variables: Vec<String>,
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ArrowFile {
    from: String,
    to: String,
    weight: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<i64>,
}

impl WeightedDigraph {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| {
            // serde_json appends the location itself.
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            GraphError::Json {
                line: e.line(),
                column: e.column(),
                message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
            }
        })?;
        let mut arrows = Vec::with_capacity(file.arrows.len());
        for (index, a) in file.arrows.iter().enumerate() {
            let lookup = |s: &str| {
                file.vertices
                    .iter()
                    .position(|v| v == s)
                    .ok_or_else(|| GraphError::UnknownVertex(s.to_string()))
            };
            let text = match &a.weight {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => other.to_string(),
            };
            let weight = LaurentPoly::parse(&text, &file.variables)
                .map_err(|source| GraphError::BadWeight {
                    index,
                    text: text.clone(),
                    source,
                })?;
            arrows.push(Arrow {
                from: lookup(&a.from)?,
                to: lookup(&a.to)?,
                weight,
                color: a.color,
            });
        }
        WeightedDigraph::new(file.variables, file.vertices, arrows)
    }

    pub fn to_json_value(&self) -> Value {
        let file = GraphFile {
            variables: self.variables.clone(),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    from: self.vertices[a.from].clone(),
                    to: self.vertices[a.to].clone(),
                    weight: Value::String(a.weight.to_string_with(&self.variables)),
                    color: a.color,
                })
                .collect(),
        };
        serde_json::to_value(file).expect("graph serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("graph serializes")
    }
}
