//! Graph files: a versioned header line followed by one JSON object.
//!
//! ```text
//! atcert-graph 1
//! {
//!   "vertices": ["a","b","c"],
//!   "edges": [["a","b"],["a","c"],["b","c"]],
//!   "outer_cycle": ["a","b","c"],
//!   "distinguished_edge": ["a","b"]
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};

pub const GRAPH_HEADER: &str = "atcert-graph 1";

/// Graph description as stored on disk, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_cycle: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_edge: Option<[String; 2]>,
    /// `[red, green]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<[String; 2]>>,
}

impl RawGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Self {
        RawGraph {
            vertices: vertices.iter().map(|s| s.as_ref().to_string()).collect(),
            edges: edges.iter().map(|(u, v)| [u.as_ref().to_string(), v.as_ref().to_string()]).collect(),
            ..Default::default()
        }
    }

    pub fn with_outer<S: AsRef<str>>(mut self, cycle: &[S], distinguished: (S, S)) -> Self {
        self.outer_cycle = Some(cycle.iter().map(|s| s.as_ref().to_string()).collect());
        self.distinguished_edge = Some([distinguished.0.as_ref().to_string(), distinguished.1.as_ref().to_string()]);
        self
    }

    pub fn graph(&self) -> Result<Graph> {
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        Graph::from_names(&self.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &edges)
    }

    pub fn to_text(&self) -> String {
        let mut fields =
            vec![format!("  \"vertices\": {}", json(&self.vertices)), format!("  \"edges\": {}", json(&self.edges))];
        if let Some(c) = &self.outer_cycle {
            fields.push(format!("  \"outer_cycle\": {}", json(c)));
        }
        if let Some(e) = &self.distinguished_edge {
            fields.push(format!("  \"distinguished_edge\": {}", json(e)));
        }
        if let Some(m) = &self.matching {
            fields.push(format!("  \"matching\": {}", json(m)));
        }
        format!("{GRAPH_HEADER}\n{{\n{}\n}}\n", fields.join(",\n"))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let body = match text.split_once('\n') {
            Some((first, rest)) if first.trim() == GRAPH_HEADER => rest,
            _ => {
                return Err(Error::Parse(format!("missing header line {GRAPH_HEADER:?}")));
            }
        };
        serde_json::from_str(body).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}
