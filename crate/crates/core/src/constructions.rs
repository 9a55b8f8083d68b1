//! Explicit constructions: projective norm graphs, their bipartite double, the composed
//! semibipartite 3-graph built from two norm-graph layers, norm-ratio counts, and the
//! random-deletion lower bound.
//!
//! `PG(q, s)` has vertex set `GF(q^(s-1)) x GF(q)^*`; `(X, x)` gets label
//! `idx(X) * (q - 1) + idx(x) - 1`, and distinct `(X, x)`, `(Y, y)` are adjacent iff
//! `N(X + Y) = xy`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::ff::{prime_power, FieldError, NormMap};
use crate::hypergraph::{BipartiteGraph, Graph, SemibipartiteThreeGraph};
use crate::par;
use crate::patterns::embed::{Host, PatternPlan, Search};

/// Largest `q^s` accepted by the norm-graph constructors.
pub const MAX_NORM_GRAPH_ORDER: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("q^s = {0} exceeds the cap of 2^22")]
    TooLarge(u64),
}

/// `(q, s)` plus the norm map used to build `PG(q, s)`.
pub struct NormGraphParams {
    pub q: u32,
    pub s: u32,
    pub norm: NormMap,
}

impl NormGraphParams {
    pub fn new(q: u32, s: u32) -> Result<Self, ConstructionError> {
        if s < 2 {
            return Err(ConstructionError::BadParameters(format!("s = {s}, need s >= 2")));
        }
        prime_power(q as u64)?;
        let order = (q as u64).checked_pow(s).unwrap_or(u64::MAX);
        if order > MAX_NORM_GRAPH_ORDER {
            return Err(ConstructionError::TooLarge(order));
        }
        Ok(Self {
            q,
            s,
            norm: NormMap::new(q, s)?,
        })
    }

    pub fn vertex_count(&self) -> usize {
        (self.q as usize).pow(self.s) - (self.q as usize).pow(self.s - 1)
    }

    pub fn label(&self, big: u32, small: u32) -> u32 {
        big * (self.q - 1) + small - 1
    }

    pub fn unlabel(&self, v: u32) -> (u32, u32) {
        (v / (self.q - 1), v % (self.q - 1) + 1)
    }

    /// Neighbours `(Y, y)` of `(X, x)` including `(X, x)` itself when `N(2X) = x^2`.
    fn neighbours_with_loop(&self, v: u32) -> Vec<u32> {
        let (x_big, x_small) = self.unlabel(v);
        let big = self.norm.big_field();
        let small = self.norm.small_field();
        let x_inv = small.inv(x_small).expect("x is nonzero");
        let mut out = Vec::with_capacity(big.order() as usize);
        for y_big in 0..big.order() {
            let nv = self.norm.norm_index(big.add(x_big, y_big));
            if nv != 0 {
                out.push(self.label(y_big, small.mul(nv, x_inv)));
            }
        }
        out
    }

    fn neighbour_lists(&self) -> Vec<Vec<u32>> {
        par::map((0..self.vertex_count() as u32).collect(), |v| {
            let mut nb = self.neighbours_with_loop(v);
            nb.retain(|&u| u != v);
            nb.sort_unstable();
            nb
        })
    }
}

fn graph_from_lists(n: usize, lists: &[Vec<u32>]) -> Graph {
    let edges = lists
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v as usize > u).map(move |&v| [u as u32, v]))
        .collect();
    Graph::from_sorted(n, edges)
}

/// The projective norm graph `PG(q, s)`.
pub fn norm_graph(q: u32, s: u32) -> Result<Graph, ConstructionError> {
    let params = NormGraphParams::new(q, s)?;
    let lists = params.neighbour_lists();
    Ok(graph_from_lists(params.vertex_count(), &lists))
}

/// Bipartite double of `PG(q, s)`: `(X, x)` on the left joined to `(Y, y)` on the right iff
/// they are distinct and `N(X + Y) = xy`.
pub fn bipartite_norm_graph(q: u32, s: u32) -> Result<BipartiteGraph, ConstructionError> {
    let params = NormGraphParams::new(q, s)?;
    let n = params.vertex_count();
    let lists = params.neighbour_lists();
    let edges = lists
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().map(move |&v| [u as u32, v]))
        .collect();
    Ok(BipartiteGraph::from_sorted(n, n, edges))
}

/// The composed semibipartite 3-graph together with the two layers it was built from.
#[derive(Clone, Debug)]
pub struct Composed {
    pub q: u32,
    pub q_tilde: u32,
    /// Size of each part.
    pub n: usize,
    pub hypergraph: SemibipartiteThreeGraph,
    /// `PG(q_tilde, s2)` on `V1` (padded with isolated vertices up to `n`).
    pub inner: Graph,
    /// Bipartite double of `PG(q, s1)` between `V1` and `V2` (padded up to `(n, n)`).
    pub cross: BipartiteGraph,
}

/// Triangles across the layers: `{u, v, w}` with `uv` in `PG(q_tilde, s2)` on `V1` and
/// `uw`, `vw` in the bipartite double of `PG(q, s1)`, where `q = p^s2`, `q_tilde = p^s1`.
pub fn composed_construction(p: u32, s1: u32, s2: u32) -> Result<Composed, ConstructionError> {
    if s1 < 3 || s2 < 3 {
        return Err(ConstructionError::BadParameters(format!(
            "s1 = {s1}, s2 = {s2}; both must be at least 3"
        )));
    }
    let q = p
        .checked_pow(s2)
        .ok_or_else(|| ConstructionError::BadParameters("p^s2 overflows".into()))?;
    let q_tilde = p
        .checked_pow(s1)
        .ok_or_else(|| ConstructionError::BadParameters("p^s1 overflows".into()))?;
    let inner_params = NormGraphParams::new(q_tilde, s2)?;
    let cross_params = NormGraphParams::new(q, s1)?;
    let n = inner_params.vertex_count().max(cross_params.vertex_count());

    let inner_lists = inner_params.neighbour_lists();
    let inner = graph_from_lists(n, &inner_lists);
    let cross_lists = cross_params.neighbour_lists();
    let cross_edges = cross_lists
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().map(move |&v| [u as u32, v]))
        .collect();
    let cross = BipartiteGraph::from_sorted(n, n, cross_edges);

    let rows: Vec<Bitset> = (0..n as u32)
        .map(|u| Bitset::from_indices(n, cross.left_neighbors(u).iter().map(|&w| w as usize)))
        .collect();
    let per_vertex = par::map((0..n as u32).collect(), |u| {
        let mut out = Vec::new();
        for &v in inner.neighbors(u).iter().filter(|&&v| v > u) {
            let (a, b) = (rows[u as usize].words(), rows[v as usize].words());
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                let mut w = x & y;
                while w != 0 {
                    out.push([u, v, (i * 64) as u32 + w.trailing_zeros()]);
                    w &= w - 1;
                }
            }
        }
        out
    });
    let edges = per_vertex.into_iter().flatten().collect();
    Ok(Composed {
        q,
        q_tilde,
        n,
        hypergraph: SemibipartiteThreeGraph::from_sorted(n, n, edges),
        inner,
        cross,
    })
}

/// Number of `Z` in `GF(q^(s-1))`, `Z != -Y`, with `N((X + Z) / (Y + Z)) = x`.
/// `X`, `Y` are big-field indices and `x` a nonzero `GF(q)` index.
pub fn norm_ratio_count(q: u32, s: u32, x_big: u32, y_big: u32, x: u32) -> Result<u64, ConstructionError> {
    if s < 3 {
        return Err(ConstructionError::BadParameters(format!("s = {s}, need s >= 3")));
    }
    let norm = NormMap::new(q, s)?;
    norm_ratio_count_with(&norm, x_big, y_big, x)
}

/// As [`norm_ratio_count`], reusing a prepared norm map.
pub fn norm_ratio_count_with(norm: &NormMap, x_big: u32, y_big: u32, x: u32) -> Result<u64, ConstructionError> {
    let big = norm.big_field();
    let order = big.order();
    if x_big >= order || y_big >= order || x >= norm.q() {
        return Err(ConstructionError::BadParameters("element index out of range".into()));
    }
    if x_big == y_big {
        return Err(ConstructionError::BadParameters("X = Y".into()));
    }
    if x == 0 {
        return Err(ConstructionError::BadParameters("x = 0".into()));
    }
    let count = (0..order)
        .filter(|&z| {
            let den = big.add(y_big, z);
            den != 0 && norm.norm_index(big.mul(big.add(x_big, z), big.inv(den).unwrap())) == x
        })
        .count();
    Ok(count as u64)
}

/// Common-neighbour counts below `threshold`: for each vertex, how many other vertices share
/// fewer than `threshold` neighbours with it.
pub fn low_codegree_counts(g: &Graph, threshold: usize) -> Vec<usize> {
    let rows = g.adjacency_bitsets();
    par::map((0..g.n()).collect(), |u| {
        (0..g.n())
            .filter(|&v| v != u && rows[u].intersection_count(&rows[v]) < threshold)
            .count()
    })
}

/// A left `s`-set whose rows share at least `t` columns, with `t` of those columns.
/// `rows[i]` is the neighbourhood of left vertex `i`; for a graph, pass its adjacency rows.
/// Subsets are enumerated in increasing order with the running intersection as the bound.
pub fn find_common_neighbourhood(rows: &[Bitset], s: usize, t: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    fn grow(rows: &[Bitset], s: usize, t: usize, chosen: &mut Vec<u32>, common: &Bitset) -> Option<Vec<u32>> {
        if chosen.len() == s {
            return Some(common.iter().take(t).map(|c| c as u32).collect());
        }
        let start = *chosen.last().unwrap() as usize + 1;
        for next in start..rows.len() {
            if rows.len() - next < s - chosen.len() {
                break;
            }
            let mut c = common.clone();
            c.intersect_with(&rows[next]);
            if c.count() >= t {
                chosen.push(next as u32);
                if let Some(cols) = grow(rows, s, t, chosen, &c) {
                    return Some(cols);
                }
                chosen.pop();
            }
        }
        None
    }
    if s == 0 {
        return None;
    }
    par::find_map_any(0..rows.len(), |first| {
        if rows[first].count() < t {
            return None;
        }
        let mut chosen = vec![first as u32];
        grow(rows, s, t, &mut chosen, &rows[first]).map(|cols| (chosen, cols))
    })
}

/// `K_{s,t}` in a graph (sides may be given in either order: both `(s, t)` and `(t, s)` work
/// because any copy yields an `s`-set with `t` common neighbours).
pub fn find_kst(g: &Graph, s: usize, t: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    find_common_neighbourhood(&g.adjacency_bitsets(), s, t)
}

/// Ordered `K_{s,t}` with the `s`-side in the first part.
pub fn find_ordered_kst(g: &BipartiteGraph, s: usize, t: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let rows: Vec<Bitset> = (0..g.left_size() as u32)
        .map(|u| Bitset::from_indices(g.right_size(), g.left_neighbors(u).iter().map(|&w| w as usize)))
        .collect();
    find_common_neighbourhood(&rows, s, t)
}

pub fn factorial(n: u32) -> usize {
    (1..=n as usize).product()
}

/// Edge probability `½ n^{-(v(F) - 2) / (|F| - 1)}` of the deletion method.
pub fn deletion_probability(n: usize, f: &BipartiteGraph) -> f64 {
    let v = (f.left_size() + f.right_size()) as f64;
    let e = f.edge_count() as f64;
    0.5 * (n as f64).powf(-(v - 2.0) / (e - 1.0))
}

/// Random graph with edge probability [`deletion_probability`], then one edge deleted from
/// every remaining copy of `F`: copies are visited in lexicographic order of their sorted
/// edge sets, and the smallest edge of each still-intact copy is removed. Pairs are sampled
/// in lexicographic order from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn random_deletion_lower_bound(n: usize, f: &BipartiteGraph, seed: u64) -> Result<Graph, ConstructionError> {
    let pattern = f.to_graph();
    let is_forest = {
        let mut parent: Vec<usize> = (0..pattern.n()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        pattern.edges().iter().all(|&[a, b]| {
            let (ra, rb) = (root(&mut parent, a as usize), root(&mut parent, b as usize));
            parent[ra] = rb;
            ra != rb
        })
    };
    if is_forest {
        return Err(ConstructionError::BadParameters("F is a forest".into()));
    }
    if n < pattern.n() {
        return Err(ConstructionError::BadParameters(format!(
            "n = {n} < v(F) = {}",
            pattern.n()
        )));
    }
    let prob = deletion_probability(n, f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut host = Host::new(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen::<f64>() < prob {
                host.add_edge(a, b);
            }
        }
    }
    let plan = PatternPlan::new(&pattern);
    let mut copies: BTreeSet<Vec<[u32; 2]>> = BTreeSet::new();
    let _ = Search::new(&host, &plan, &[]).for_each(|map| {
        let mut edges: Vec<[u32; 2]> = pattern
            .edges()
            .iter()
            .map(|&[a, b]| {
                let (x, y) = (map[a as usize], map[b as usize]);
                [x.min(y), x.max(y)]
            })
            .collect();
        edges.sort_unstable();
        copies.insert(edges);
        ControlFlow::Continue(())
    });
    for copy in &copies {
        if copy.iter().all(|&[a, b]| host.has_edge(a, b)) {
            host.remove_edge(copy[0][0], copy[0][1]);
        }
    }
    let edges = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .filter(|&(a, b)| host.has_edge(a, b));
    Ok(Graph::new(n, edges).expect("host rows are simple"))
}
