//! Forbidden patterns: bipartite graphs with an ordered bipartition, their expansions, and
//! exact containment search in graphs, ordered bipartite graphs and 3-graphs.
//!
//! Text syntax accepted by [`PatternSpec::parse`]:
//!
//! ```text
//! spec      := base [ "+" ] [ " " placement ]
//! base      := "K{" s "," t "}" | "C" len | "theta{" a "," b "," c "}" | "grid2x2" | "@" path
//! placement := "ordered" | "core-in-V1" | "unordered"
//! ```
//!
//! `+` turns the bipartite base into its expansion. `@path` reads a graph JSON file of kind
//! `bipartite` (parts kept) or `graph` (two-coloured).

pub mod embed;
pub mod expansion;
pub mod library;

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::hypergraph::{BipartiteGraph, Graph};
use embed::{Host, PatternPlan};
pub use expansion::{
    distinct_apexes, expand, expand_bipartite, expansion_through_edge, find_expansion, greedy_extend, Expanded,
    ExpansionHost, ExpansionWitness,
};
pub use library::{complete_bipartite, even_cycle, grid2x2, theta, two_colour};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("cannot parse pattern {0:?}")]
    Syntax(String),
    #[error("bad pattern parameters: {0}")]
    BadParameters(String),
    #[error("pattern graph is not bipartite")]
    NotBipartite,
    #[error("placement {0} needs a host with two parts")]
    PlacementIncompatible(Placement),
    #[error("pattern kind does not fit this host: {0}")]
    WrongHost(String),
    #[error("witness has sides {got:?}, expected {expected:?}")]
    WitnessShape {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("pair {pair:?} has codegree {degree}, greedy extension needs {required}")]
    CodegreeTooSmall {
        pair: [u32; 2],
        degree: usize,
        required: usize,
    },
    #[error("greedy extension ran out of apexes at pair {pair:?}")]
    GreedyFailed { pair: [u32; 2] },
    #[error("reading pattern file: {0}")]
    File(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    Unordered,
    /// First side into the host's first part, second side into its second part.
    Ordered,
    /// Entire core inside the host's first part.
    CoreInV1,
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::Unordered => "unordered",
            Placement::Ordered => "ordered",
            Placement::CoreInV1 => "core-in-V1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternKind {
    CompleteBipartite { s: usize, t: usize },
    Bipartite(BipartiteGraph),
    Expansion(BipartiteGraph),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub placement: Placement,
    /// Base name without placement, e.g. `K{2,3}+` or `C8`.
    pub name: String,
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.placement {
            Placement::Unordered => f.write_str(&self.name),
            p => write!(f, "{} {}", self.name, p),
        }
    }
}

fn parse_numbers(body: &str, count: usize, whole: &str) -> Result<Vec<usize>, PatternError> {
    let nums: Result<Vec<usize>, _> = body.split(',').map(|x| x.trim().parse::<usize>()).collect();
    match nums {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(PatternError::Syntax(whole.to_string())),
    }
}

impl PatternSpec {
    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        Self {
            kind: PatternKind::CompleteBipartite { s, t },
            placement: Placement::Unordered,
            name: format!("K{{{s},{t}}}"),
        }
    }

    pub fn kst_expansion(s: usize, t: usize, placement: Placement) -> Self {
        Self {
            kind: PatternKind::Expansion(complete_bipartite(s, t)),
            placement,
            name: format!("K{{{s},{t}}}+"),
        }
    }

    pub fn bipartite(name: impl Into<String>, graph: BipartiteGraph) -> Self {
        Self {
            kind: PatternKind::Bipartite(graph),
            placement: Placement::Unordered,
            name: name.into(),
        }
    }

    pub fn with_placement(mut self, placement: Placement) -> Self {
        self.placement = placement;
        self
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let text = text.trim();
        let (base, placement) = match text.rsplit_once(char::is_whitespace) {
            Some((b, "ordered")) => (b.trim(), Placement::Ordered),
            Some((b, "core-in-V1")) => (b.trim(), Placement::CoreInV1),
            Some((b, "unordered")) => (b.trim(), Placement::Unordered),
            Some(_) => return Err(PatternError::Syntax(text.to_string())),
            None => (text, Placement::Unordered),
        };
        if let Some(path) = base.strip_prefix('@') {
            let graph = crate::io::read_pattern_file(Path::new(path))?;
            return Ok(Self::bipartite(base, graph).with_placement(placement));
        }
        let (core_text, expanded) = match base.strip_suffix('+') {
            Some(c) => (c, true),
            None => (base, false),
        };
        let syntax = || PatternError::Syntax(text.to_string());
        let (core, complete) = if let Some(body) = core_text.strip_prefix("K{").and_then(|r| r.strip_suffix('}')) {
            let v = parse_numbers(body, 2, text)?;
            if v[0] == 0 || v[1] == 0 {
                return Err(PatternError::BadParameters(format!("{core_text}: s, t >= 1")));
            }
            (complete_bipartite(v[0], v[1]), Some((v[0], v[1])))
        } else if let Some(body) = core_text.strip_prefix("theta{").and_then(|r| r.strip_suffix('}')) {
            let v = parse_numbers(body, 3, text)?;
            (theta(v[0], v[1], v[2])?, None)
        } else if core_text == "grid2x2" {
            (grid2x2(), None)
        } else if let Some(len) = core_text.strip_prefix('C') {
            let len: usize = len.parse().map_err(|_| syntax())?;
            (even_cycle(len)?, None)
        } else {
            return Err(syntax());
        };
        let kind = match (expanded, complete) {
            (true, _) => PatternKind::Expansion(core),
            (false, Some((s, t))) => PatternKind::CompleteBipartite { s, t },
            (false, None) => PatternKind::Bipartite(core),
        };
        Ok(Self {
            kind,
            placement,
            name: base.to_string(),
        })
    }

    pub fn is_expansion(&self) -> bool {
        matches!(self.kind, PatternKind::Expansion(_))
    }

    /// The bipartite graph itself, or the core of an expansion.
    pub fn core(&self) -> BipartiteGraph {
        match &self.kind {
            PatternKind::CompleteBipartite { s, t } => complete_bipartite(*s, *t),
            PatternKind::Bipartite(g) | PatternKind::Expansion(g) => g.clone(),
        }
    }

    /// Vertex count of the forbidden graph (core plus apexes for expansions).
    pub fn vertex_count(&self) -> usize {
        let core = self.core();
        let base = core.left_size() + core.right_size();
        if self.is_expansion() {
            base + core.edge_count()
        } else {
            base
        }
    }

    pub fn edge_count(&self) -> usize {
        self.core().edge_count()
    }

    /// Connected in the sense of the 2-shadow being connected (isolated vertices excluded).
    pub fn is_connected(&self) -> bool {
        let g = self.core().to_graph();
        let n = g.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// `true` if the graph (or core) has no cycle.
    pub fn is_forest(&self) -> bool {
        let g = self.core().to_graph();
        let mut parent: Vec<usize> = (0..g.n()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        for &[a, b] in g.edges() {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// Copy of `pattern` in `g` with `pattern`'s first side inside `U1` and second side inside
/// `U2`, as `(first-side images in U1, second-side images in U2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteWitness {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

fn complete_symmetry(plan: &mut PatternPlan, f: &BipartiteGraph, swap_ok: bool) {
    if f.edge_count() != f.left_size() * f.right_size() {
        return;
    }
    let a = f.left_size();
    let k = a + f.right_size();
    for v in 1..a {
        plan.require_less(v - 1, v);
    }
    for v in a + 1..k {
        plan.require_less(v - 1, v);
    }
    if swap_ok && a == f.right_size() && a > 0 {
        plan.require_less(0, a);
    }
}

/// Plan for an ordered search in a flattened bipartite host with parts `(m, n)`.
pub fn ordered_plan(f: &BipartiteGraph, m: usize, n: usize) -> PatternPlan {
    let mut plan = PatternPlan::from_bipartite(f);
    let total = m + n;
    let first = crate::bitset::Bitset::from_indices(total, 0..m);
    let second = crate::bitset::Bitset::from_indices(total, m..total);
    let a = f.left_size();
    for v in 0..a + f.right_size() {
        plan.restrict(v, if v < a { first.clone() } else { second.clone() });
    }
    plan
}

/// Exact search for an ordered copy of `f` in `g`; `None` iff `g` is ordered-`f`-free.
pub fn find_ordered_bipartite(g: &BipartiteGraph, f: &BipartiteGraph) -> Option<BipartiteWitness> {
    let m = g.left_size() as u32;
    if f.left_size() > g.left_size() || f.right_size() > g.right_size() {
        return None;
    }
    let host = Host::from_bipartite(g);
    let mut plan = ordered_plan(f, g.left_size(), g.right_size());
    complete_symmetry(&mut plan, f, false);
    embed::find_copy(&host, &plan).map(|map| {
        let a = f.left_size();
        BipartiteWitness {
            left: map[..a].to_vec(),
            right: map[a..].iter().map(|&x| x - m).collect(),
        }
    })
}

/// Any copy of `f` in `g` (as a flattened pattern map), ignoring the bipartition order.
pub fn find_in_graph(g: &Graph, f: &BipartiteGraph) -> Option<Vec<u32>> {
    if f.left_size() + f.right_size() > g.n() {
        return None;
    }
    let host = Host::from_graph(g);
    let mut plan = PatternPlan::from_bipartite(f);
    complete_symmetry(&mut plan, f, true);
    embed::find_copy(&host, &plan)
}

/// Does the graph host contain the (non-expansion) pattern?
pub fn graph_contains(g: &Graph, spec: &PatternSpec) -> Result<bool, PatternError> {
    match (&spec.kind, spec.placement) {
        (PatternKind::Expansion(_), _) => Err(PatternError::WrongHost("expansion in a graph".into())),
        (_, Placement::Unordered) => Ok(find_in_graph(g, &spec.core()).is_some()),
        (_, p) => Err(PatternError::PlacementIncompatible(p)),
    }
}

/// Does the bipartite host contain the pattern under its placement (unordered = either way)?
pub fn bipartite_contains(g: &BipartiteGraph, spec: &PatternSpec) -> Result<bool, PatternError> {
    match (&spec.kind, spec.placement) {
        (PatternKind::Expansion(_), _) => Err(PatternError::WrongHost("expansion in a graph".into())),
        (_, Placement::Ordered) => Ok(find_ordered_bipartite(g, &spec.core()).is_some()),
        (_, Placement::Unordered) => Ok(find_in_graph(&g.to_graph(), &spec.core()).is_some()),
        (_, p) => Err(PatternError::PlacementIncompatible(p)),
    }
}

/// Does the 3-graph host contain the expansion pattern under its placement?
pub fn three_graph_contains(h: &ExpansionHost, spec: &PatternSpec) -> Result<bool, PatternError> {
    match &spec.kind {
        PatternKind::Expansion(core) => Ok(find_expansion(h, core, spec.placement)?.is_some()),
        _ => Err(PatternError::WrongHost("graph pattern in a 3-graph".into())),
    }
}
