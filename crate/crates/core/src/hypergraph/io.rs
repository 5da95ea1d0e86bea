//! Hypergraph serialization: a line-oriented text format and a JSON
//! equivalent. Both round-trip bit-exactly through the canonical writer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Hypergraph, VertexId};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("line {line}: {message}")]
    BadEdgeLine { line: usize, message: String },
    #[error("header declares rank {declared} but edges have rank {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error("header declares max degree {declared} but edges give {actual}")]
    DegreeMismatch { declared: usize, actual: usize },
    #[error("invalid hypergraph: {0}")]
    Structure(#[from] super::HypergraphError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Hypergraph {
    /// Canonical text form: header `n r Δ`, then one edge per line as
    /// space-separated vertex IDs.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.vertex_count(),
            self.rank(),
            self.max_degree()
        );
        for edge in self.edges() {
            let line: Vec<String> = edge.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Hypergraph, FormatError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(FormatError::MissingHeader)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(FormatError::BadHeader(format!(
                "expected `n r max_degree`, got {header:?}"
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| FormatError::BadHeader(format!("{s:?}: {e}")))
        };
        let n = parse(fields[0])?;
        let declared_rank = parse(fields[1])?;
        let declared_degree = parse(fields[2])?;

        let mut edges = Vec::new();
        for (line, body) in lines {
            if body.trim().is_empty() {
                continue;
            }
            let edge: Result<Vec<VertexId>, _> = body
                .split_whitespace()
                .map(|s| {
                    s.parse::<VertexId>().map_err(|e| FormatError::BadEdgeLine {
                        line: line + 1,
                        message: format!("{s:?}: {e}"),
                    })
                })
                .collect();
            edges.push(edge?);
        }

        let h = Hypergraph::new(n, edges)?;
        if h.rank() != declared_rank {
            return Err(FormatError::RankMismatch {
                declared: declared_rank,
                actual: h.rank(),
            });
        }
        if h.max_degree() != declared_degree {
            return Err(FormatError::DegreeMismatch {
                declared: declared_degree,
                actual: h.max_degree(),
            });
        }
        Ok(h)
    }

    /// JSON equivalent of the text format.
    pub fn to_json(&self) -> String {
        let file = HypergraphFile {
            n: self.vertex_count(),
            rank: self.rank(),
            max_degree: self.max_degree(),
            edges: self.edges().to_vec(),
        };
        serde_json::to_string(&file).expect("serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Hypergraph, FormatError> {
        let file: HypergraphFile = serde_json::from_str(json)?;
        let h = Hypergraph::new(file.n, file.edges)?;
        if h.rank() != file.rank {
            return Err(FormatError::RankMismatch {
                declared: file.rank,
                actual: h.rank(),
            });
        }
        if h.max_degree() != file.max_degree {
            return Err(FormatError::DegreeMismatch {
                declared: file.max_degree,
                actual: h.max_degree(),
            });
        }
        Ok(h)
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphFile {
    n: usize,
    rank: usize,
    max_degree: usize,
    edges: Vec<Vec<VertexId>>,
}
