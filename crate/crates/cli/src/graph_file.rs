//! Graph JSON: `{"M": <int>, "edges": [[a, b], ...]}` with 0-based labels, or
//! 1-based when `"labels_base": 1` is present.

use std::path::Path;

use digraph_ed_core::{AntiparallelPolicy, DirectedGraph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("edges[{index}]: {msg}")]
    Field { index: usize, msg: String },
    #[error("labels_base must be 0 or 1, got {0}")]
    LabelsBase(u64),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    #[serde(rename = "M")]
    m: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels_base: Option<u64>,
}

pub fn parse_graph_str(
    text: &str,
    policy: AntiparallelPolicy,
) -> Result<DirectedGraph, GraphFileError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphFileError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let base = file.labels_base.unwrap_or(0);
    if base > 1 {
        return Err(GraphFileError::LabelsBase(base));
    }
    let base = base as usize;
    let edges = file
        .edges
        .iter()
        .enumerate()
        .map(|(index, &[a, b])| {
            if a < base || b < base {
                Err(GraphFileError::Field {
                    index,
                    msg: "label 0 with labels_base 1".into(),
                })
            } else {
                Ok((a - base, b - base))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DirectedGraph::with_policy(file.m, edges, policy)?)
}

pub fn parse_graph_file(
    path: &Path,
    policy: AntiparallelPolicy,
) -> Result<DirectedGraph, GraphFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph_str(&text, policy)
}

/// Serializes with 0-based labels.
pub fn graph_json(g: &DirectedGraph) -> String {
    let file = GraphFile {
        m: g.num_vertices(),
        edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        labels_base: None,
    };
    serde_json::to_string(&file).expect("graph serializes") + "\n"
}
