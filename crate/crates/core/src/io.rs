//! Graph file formats.
//!
//! JSON: `{"vertices": [..], "edges": [[u, w], ..], "non_voting_edges": [..]}`
//! with `non_voting_edges` optional. Pairs are written ascending and arrays
//! sorted. Vertex roles and extra constraints are not part of the format.
//!
//! Edge list: one `u w` pair per line, `#` starts a comment, and a line with
//! a single integer declares a (possibly isolated) vertex.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_voting_edges: Vec<[u32; 2]>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        let pair = |(a, b): (VertexId, VertexId)| [a.0.min(b.0), a.0.max(b.0)];
        let mut edges: Vec<_> = g.voting_edges().map(pair).collect();
        let mut non_voting_edges: Vec<_> = g.non_voting_edges().map(pair).collect();
        edges.sort_unstable();
        non_voting_edges.sort_unstable();
        GraphDoc {
            vertices: g.vertices().map(|v| v.0).collect(),
            edges,
            non_voting_edges,
        }
    }
}

impl TryFrom<&GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: &GraphDoc) -> Result<Graph> {
        Graph::from_parts(
            doc.vertices.iter().copied(),
            doc.edges.iter().map(|e| (e[0], e[1])),
            doc.non_voting_edges.iter().map(|e| (e[0], e[1])),
        )
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from(g)).expect("plain data")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    Graph::try_from(&doc)
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>().map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("'{t}': {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match nums.as_slice() {
            [v] => {
                vertices.insert(*v);
            }
            [a, b] => {
                vertices.insert(*a);
                vertices.insert(*b);
                edges.push((*a, *b));
            }
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected 1 or 2 integers, found {}", nums.len()),
                })
            }
        }
    }
    Graph::from_parts(vertices, edges, std::iter::empty())
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        if g.voting_degree(v).unwrap_or(0) == 0 {
            out.push_str(&format!("{v}\n"));
        }
    }
    for (a, b) in g.voting_edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// JSON if the first non-blank character is `{`, edge list otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}
