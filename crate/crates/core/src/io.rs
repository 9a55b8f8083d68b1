//! Graph file formats: the canonical JSON schema, content hashes, and graph6.
//!
//! JSON objects look like `{"kind":"graph","n":4,"edges":[[0,1],[1,2]]}`; two-part kinds
//! (`bipartite`, `semibipartite3`) carry `"m"` before `"n"`. Edges are written sorted and the
//! encoding is compact, so equal structures serialize to equal bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha1::{Digest, Sha1};
use thiserror::Error;

use crate::hypergraph::{BipartiteGraph, Graph, GraphError, SemibipartiteThreeGraph, ThreeGraph};
use crate::patterns::{library::two_colour, PatternError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("kind {0:?} needs field {1:?}")]
    MissingField(String, &'static str),
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("edge {edge:?} should have {expected} entries")]
    EdgeArity { edge: Vec<u32>, expected: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Graph(Graph),
    Bipartite(BipartiteGraph),
    Three(ThreeGraph),
    Semibipartite(SemibipartiteThreeGraph),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    m: Option<usize>,
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Graph(g)
    }
}
impl From<BipartiteGraph> for AnyGraph {
    fn from(g: BipartiteGraph) -> Self {
        AnyGraph::Bipartite(g)
    }
}
impl From<ThreeGraph> for AnyGraph {
    fn from(g: ThreeGraph) -> Self {
        AnyGraph::Three(g)
    }
}
impl From<SemibipartiteThreeGraph> for AnyGraph {
    fn from(g: SemibipartiteThreeGraph) -> Self {
        AnyGraph::Semibipartite(g)
    }
}

fn arity<const R: usize>(edges: Vec<Vec<u32>>) -> Result<Vec<[u32; R]>, IoError> {
    edges
        .into_iter()
        .map(|e| {
            <[u32; R]>::try_from(e.as_slice()).map_err(|_| IoError::EdgeArity {
                edge: e.clone(),
                expected: R,
            })
        })
        .collect()
}

impl AnyGraph {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyGraph::Graph(_) => "graph",
            AnyGraph::Bipartite(_) => "bipartite",
            AnyGraph::Three(_) => "3graph",
            AnyGraph::Semibipartite(_) => "semibipartite3",
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            AnyGraph::Graph(g) => g.edge_count(),
            AnyGraph::Bipartite(g) => g.edge_count(),
            AnyGraph::Three(g) => g.edge_count(),
            AnyGraph::Semibipartite(g) => g.edge_count(),
        }
    }

    fn to_file(&self) -> GraphFile {
        let (m, n, edges): (Option<usize>, usize, Vec<Vec<u32>>) = match self {
            AnyGraph::Graph(g) => (None, g.n(), g.edges().iter().map(|e| e.to_vec()).collect()),
            AnyGraph::Bipartite(g) => (
                Some(g.left_size()),
                g.right_size(),
                g.edges().iter().map(|e| e.to_vec()).collect(),
            ),
            AnyGraph::Three(g) => (None, g.n(), g.edges().iter().map(|e| e.to_vec()).collect()),
            AnyGraph::Semibipartite(g) => (
                Some(g.first_size()),
                g.second_size(),
                g.edges().iter().map(|e| e.to_vec()).collect(),
            ),
        };
        GraphFile {
            kind: self.kind().to_string(),
            m,
            n,
            edges,
        }
    }

    fn from_file(f: GraphFile) -> Result<Self, IoError> {
        let need_m = |f: &GraphFile| f.m.ok_or_else(|| IoError::MissingField(f.kind.clone(), "m"));
        Ok(match f.kind.as_str() {
            "graph" => AnyGraph::Graph(Graph::new(f.n, arity::<2>(f.edges)?.into_iter().map(|[a, b]| (a, b)))?),
            "bipartite" => {
                let m = need_m(&f)?;
                AnyGraph::Bipartite(BipartiteGraph::new(
                    m,
                    f.n,
                    arity::<2>(f.edges)?.into_iter().map(|[a, b]| (a, b)),
                )?)
            }
            "3graph" => AnyGraph::Three(ThreeGraph::new(f.n, arity::<3>(f.edges)?)?),
            "semibipartite3" => {
                let m = need_m(&f)?;
                AnyGraph::Semibipartite(SemibipartiteThreeGraph::new(m, f.n, arity::<3>(f.edges)?)?)
            }
            other => return Err(IoError::UnknownKind(other.to_string())),
        })
    }

    /// Canonical compact JSON (no trailing newline).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Git blob id of the canonical JSON bytes.
    pub fn content_hash(&self) -> String {
        content_hash(self.to_json().as_bytes())
    }
}

/// `sha1("blob <len>\0" ++ bytes)` in lowercase hex, as `git hash-object` computes it.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha1::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Pattern from a JSON file: `bipartite` keeps its parts, `graph` is two-coloured.
pub fn read_pattern_file(path: &Path) -> Result<BipartiteGraph, PatternError> {
    let file_err = |e: IoError| PatternError::File(format!("{}: {e}", path.display()));
    match AnyGraph::read(path).map_err(file_err)? {
        AnyGraph::Bipartite(b) => Ok(b),
        AnyGraph::Graph(g) => Ok(two_colour(&g)?.0),
        other => Err(PatternError::File(format!(
            "{}: a {} cannot be a pattern",
            path.display(),
            other.kind()
        ))),
    }
}

/// Standard graph6 encoding (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n as u32 {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for k in 0..6 {
            v = (v << 1) | u8::from(chunk.get(k).copied().unwrap_or(false));
        }
        out.push(v + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph, IoError> {
    let bytes = text.trim_end().as_bytes();
    let bad = |msg: &str| IoError::Graph6(msg.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, rest) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, tail @ ..] if tail.len() >= 6 => (six(&tail[..6]), &tail[6..]),
        [126, tail @ ..] if tail.len() >= 3 => (six(&tail[..3]), &tail[3..]),
        [126, ..] => return Err(bad("truncated size")),
        [b, tail @ ..] => ((b - 63) as usize, tail),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            if (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges)?)
}
