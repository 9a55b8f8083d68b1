//! Graphs, ordered bipartite graphs, 3-graphs and semibipartite 3-graphs.
//!
//! Vertices are dense integers `0..n`. Edges are stored sorted (each edge sorted internally,
//! the edge list sorted lexicographically) and duplicate input is rejected rather than merged.

use std::collections::HashMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::bitset::Bitset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {0:?} repeats a vertex")]
    Loop(Vec<u32>),
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: u32, n: usize },
    #[error("duplicate edge {0:?}")]
    Duplicate(Vec<u32>),
    #[error("shadow index must be 1 or 2, got {0}")]
    BadShadowIndex(usize),
    #[error("link sets must have 1 or 2 vertices, got {0}")]
    BadLinkSize(usize),
}

/// Common view used by degree statistics, fullness extraction and serialization.
pub trait UniformHypergraph {
    fn rank(&self) -> usize;
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    /// Edges over the global vertex labelling `0..vertex_count()`, each sorted.
    fn edge_list(&self) -> Vec<Vec<u32>>;
}

fn check_range(v: u32, n: usize) -> Result<(), GraphError> {
    if (v as usize) < n {
        Ok(())
    } else {
        Err(GraphError::OutOfRange { vertex: v, n })
    }
}

fn sorted_unique<const R: usize>(mut edges: Vec<[u32; R]>) -> Result<Vec<[u32; R]>, GraphError> {
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::Duplicate(w[0].to_vec()));
    }
    Ok(edges)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<[u32; 2]>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            check_range(a, n)?;
            check_range(b, n)?;
            if a == b {
                return Err(GraphError::Loop(vec![a, b]));
            }
            list.push([a.min(b), a.max(b)]);
        }
        Ok(Self::from_sorted(n, sorted_unique(list)?))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<[u32; 2]>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &[a, b] in &edges {
            debug_assert!(a < b && (b as usize) < n);
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        (u as usize) < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn adjacency_bitsets(&self) -> Vec<Bitset> {
        self.adj
            .iter()
            .map(|nb| Bitset::from_indices(self.n, nb.iter().map(|&v| v as usize)))
            .collect()
    }

    /// `G[S]`, relabelled densely in the order of `vertices`; returns the label map
    /// (new label -> old vertex).
    pub fn induced(&self, vertices: &[u32]) -> (Graph, Vec<u32>) {
        let mut new_label = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_label[v as usize] = i as u32;
        }
        let mut edges: Vec<[u32; 2]> = self
            .edges
            .iter()
            .filter_map(|&[a, b]| {
                let (x, y) = (new_label[a as usize], new_label[b as usize]);
                (x != u32::MAX && y != u32::MAX).then(|| [x.min(y), x.max(y)])
            })
            .collect();
        edges.sort_unstable();
        (Graph::from_sorted(vertices.len(), edges), vertices.to_vec())
    }

    /// `G[S, T]` with `S` as the first part; `S` and `T` must be disjoint.
    pub fn bipartite_between(&self, left: &[u32], right: &[u32]) -> BipartiteGraph {
        let mut pos = vec![None; self.n];
        for (i, &v) in right.iter().enumerate() {
            pos[v as usize] = Some(i as u32);
        }
        let mut edges = Vec::new();
        for (i, &u) in left.iter().enumerate() {
            for &w in self.neighbors(u) {
                if let Some(j) = pos[w as usize] {
                    edges.push([i as u32, j]);
                }
            }
        }
        edges.sort_unstable();
        BipartiteGraph::from_sorted(left.len(), right.len(), edges)
    }
}

impl UniformHypergraph for Graph {
    fn rank(&self) -> usize {
        2
    }
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_list(&self) -> Vec<Vec<u32>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }
}

/// A bipartite graph with ordered parts `U1 = 0..m` and `U2 = 0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    edges: Vec<[u32; 2]>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            check_range(a, m)?;
            check_range(b, n)?;
            list.push([a, b]);
        }
        Ok(Self::from_sorted(m, n, sorted_unique(list)?))
    }

    pub(crate) fn from_sorted(m: usize, n: usize, edges: Vec<[u32; 2]>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut left = vec![Vec::new(); m];
        let mut right = vec![Vec::new(); n];
        for &[a, b] in &edges {
            left[a as usize].push(b);
            right[b as usize].push(a);
        }
        for list in left.iter_mut().chain(right.iter_mut()) {
            list.sort_unstable();
        }
        Self {
            m,
            n,
            edges,
            left,
            right,
        }
    }

    pub fn left_size(&self) -> usize {
        self.m
    }

    pub fn right_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn left_neighbors(&self, u: u32) -> &[u32] {
        &self.left[u as usize]
    }

    pub fn right_neighbors(&self, w: u32) -> &[u32] {
        &self.right[w as usize]
    }

    pub fn has_edge(&self, u: u32, w: u32) -> bool {
        (u as usize) < self.m && self.left[u as usize].binary_search(&w).is_ok()
    }

    /// The same graph with the parts swapped.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut edges: Vec<[u32; 2]> = self.edges.iter().map(|&[a, b]| [b, a]).collect();
        edges.sort_unstable();
        BipartiteGraph::from_sorted(self.n, self.m, edges)
    }

    /// Flattens onto `m + n` vertices with the second part shifted by `m`.
    pub fn to_graph(&self) -> Graph {
        let m = self.m as u32;
        Graph::from_sorted(self.m + self.n, self.edges.iter().map(|&[a, b]| [a, b + m]).collect())
    }

    /// Removes one vertex of the given side, keeping part order (`F[V1,V2] - v`).
    pub fn remove_vertex(&self, left_side: bool, v: u32) -> BipartiteGraph {
        let shift = |x: u32| if x > v { x - 1 } else { x };
        let edges: Vec<[u32; 2]> = self
            .edges
            .iter()
            .filter(|&&[a, b]| if left_side { a != v } else { b != v })
            .map(|&[a, b]| if left_side { [shift(a), b] } else { [a, shift(b)] })
            .collect();
        let (m, n) = if left_side {
            (self.m - 1, self.n)
        } else {
            (self.m, self.n - 1)
        };
        let mut edges = edges;
        edges.sort_unstable();
        BipartiteGraph::from_sorted(m, n, edges)
    }
}

impl UniformHypergraph for BipartiteGraph {
    fn rank(&self) -> usize {
        2
    }
    fn vertex_count(&self) -> usize {
        self.m + self.n
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_list(&self) -> Vec<Vec<u32>> {
        let m = self.m as u32;
        self.edges.iter().map(|&[a, b]| vec![a, b + m]).collect()
    }
}

/// Result of a link query: a graph for a single vertex, a vertex set for a pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Link {
    Pairs(Vec<[u32; 2]>),
    Vertices(Vec<u32>),
}

impl Link {
    pub fn degree(&self) -> usize {
        match self {
            Link::Pairs(p) => p.len(),
            Link::Vertices(v) => v.len(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeGraph {
    n: usize,
    edges: Vec<[u32; 3]>,
}

impl ThreeGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = [u32; 3]>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for mut e in edges {
            for &v in &e {
                check_range(v, n)?;
            }
            e.sort_unstable();
            if e[0] == e[1] || e[1] == e[2] {
                return Err(GraphError::Loop(e.to_vec()));
            }
            list.push(e);
        }
        Ok(Self {
            n,
            edges: sorted_unique(list)?,
        })
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<[u32; 3]>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e[0] < e[1] && e[1] < e[2] && (e[2] as usize) < n));
        Self { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Every triple on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        let mut edges = Vec::new();
        for a in 0..n32 {
            for b in a + 1..n32 {
                for c in b + 1..n32 {
                    edges.push([a, b, c]);
                }
            }
        }
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, mut e: [u32; 3]) -> bool {
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// `∂_1 H`: all pairs covered by an edge.
    pub fn pair_shadow(&self) -> Vec<[u32; 2]> {
        let mut pairs: Vec<[u32; 2]> = self
            .edges
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]])
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// `∂_2 H`: all vertices covered by an edge.
    pub fn vertex_shadow(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.edges.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// `∂_i H` for `i` in `{1, 2}`, as sorted `(3 - i)`-sets.
    pub fn shadow(&self, i: usize) -> Result<Vec<Vec<u32>>, GraphError> {
        match i {
            1 => Ok(self.pair_shadow().iter().map(|p| p.to_vec()).collect()),
            2 => Ok(self.vertex_shadow().into_iter().map(|v| vec![v]).collect()),
            _ => Err(GraphError::BadShadowIndex(i)),
        }
    }

    pub fn link(&self, t: &[u32]) -> Result<Link, GraphError> {
        for &v in t {
            check_range(v, self.n)?;
        }
        match *t {
            [v] => {
                let mut pairs: Vec<[u32; 2]> = self
                    .edges
                    .iter()
                    .filter(|e| e.contains(&v))
                    .map(|e| {
                        let rest: Vec<u32> = e.iter().copied().filter(|&x| x != v).collect();
                        [rest[0], rest[1]]
                    })
                    .collect();
                pairs.sort_unstable();
                Ok(Link::Pairs(pairs))
            }
            [a, b] if a != b => {
                let mut vs: Vec<u32> = self
                    .edges
                    .iter()
                    .filter(|e| e.contains(&a) && e.contains(&b))
                    .map(|e| *e.iter().find(|&&x| x != a && x != b).unwrap())
                    .collect();
                vs.sort_unstable();
                Ok(Link::Vertices(vs))
            }
            _ => Err(GraphError::BadLinkSize(t.len())),
        }
    }

    /// Link and degree of `T`, `|T|` in `{1, 2}`.
    pub fn link_degree(&self, t: &[u32]) -> Result<(Link, usize), GraphError> {
        let link = self.link(t)?;
        let d = link.degree();
        Ok((link, d))
    }

    pub fn vertex_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Map from each shadow pair to the sorted list of vertices completing it to an edge.
    pub fn pair_links(&self) -> HashMap<[u32; 2], Vec<u32>> {
        let mut links: HashMap<[u32; 2], Vec<u32>> = HashMap::new();
        for &[a, b, c] in &self.edges {
            links.entry([a, b]).or_default().push(c);
            links.entry([a, c]).or_default().push(b);
            links.entry([b, c]).or_default().push(a);
        }
        for list in links.values_mut() {
            list.sort_unstable();
        }
        links
    }

    pub fn codegree(&self, u: u32, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(&u) && e.contains(&v)).count()
    }

    /// `H[S]` relabelled densely in the order of `vertices`, plus the label map.
    pub fn induced(&self, vertices: &[u32]) -> (ThreeGraph, Vec<u32>) {
        let mut new_label = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_label[v as usize] = i as u32;
        }
        let mut edges: Vec<[u32; 3]> = self
            .edges
            .iter()
            .filter_map(|e| {
                let mut m = [0u32; 3];
                for (slot, &v) in m.iter_mut().zip(e) {
                    *slot = new_label[v as usize];
                    if *slot == u32::MAX {
                        return None;
                    }
                }
                m.sort_unstable();
                Some(m)
            })
            .collect();
        edges.sort_unstable();
        (ThreeGraph::from_sorted(vertices.len(), edges), vertices.to_vec())
    }

    /// Edges with exactly two vertices in `first` and one in `second` (both lists disjoint),
    /// as a semibipartite 3-graph `G[first, second]` with local labels.
    pub fn semibipartite_between(&self, first: &[u32], second: &[u32]) -> SemibipartiteThreeGraph {
        let mut side = vec![None; self.n];
        for (i, &v) in first.iter().enumerate() {
            side[v as usize] = Some((0u8, i as u32));
        }
        for (i, &v) in second.iter().enumerate() {
            side[v as usize] = Some((1u8, i as u32));
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let mut ones = Vec::with_capacity(3);
            let mut twos = Vec::with_capacity(3);
            for &v in e {
                match side[v as usize] {
                    Some((0, i)) => ones.push(i),
                    Some((_, i)) => twos.push(i),
                    None => {}
                }
            }
            if ones.len() == 2 && twos.len() == 1 {
                edges.push([ones[0].min(ones[1]), ones[0].max(ones[1]), twos[0]]);
            }
        }
        edges.sort_unstable();
        SemibipartiteThreeGraph::from_sorted(first.len(), second.len(), edges)
    }
}

impl UniformHypergraph for ThreeGraph {
    fn rank(&self) -> usize {
        3
    }
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_list(&self) -> Vec<Vec<u32>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }
}

/// A 3-graph on `V1 = 0..m`, `V2 = 0..n` whose edges `[a, b, w]` have `a < b` in `V1`
/// and `w` in `V2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemibipartiteThreeGraph {
    m: usize,
    n: usize,
    edges: Vec<[u32; 3]>,
}

impl SemibipartiteThreeGraph {
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = [u32; 3]>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for [a, b, w] in edges {
            check_range(a, m)?;
            check_range(b, m)?;
            check_range(w, n)?;
            if a == b {
                return Err(GraphError::Loop(vec![a, b, w]));
            }
            list.push([a.min(b), a.max(b), w]);
        }
        Ok(Self {
            m,
            n,
            edges: sorted_unique(list)?,
        })
    }

    pub(crate) fn from_sorted(m: usize, n: usize, edges: Vec<[u32; 3]>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { m, n, edges }
    }

    pub fn first_size(&self) -> usize {
        self.m
    }

    pub fn second_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The underlying 3-graph on `m + n` vertices, `V2` shifted by `m`.
    pub fn to_three_graph(&self) -> ThreeGraph {
        let m = self.m as u32;
        let mut edges: Vec<[u32; 3]> = self.edges.iter().map(|&[a, b, w]| [a, b, w + m]).collect();
        edges.sort_unstable();
        ThreeGraph::from_sorted(self.m + self.n, edges)
    }
}

impl UniformHypergraph for SemibipartiteThreeGraph {
    fn rank(&self) -> usize {
        3
    }
    fn vertex_count(&self) -> usize {
        self.m + self.n
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_list(&self) -> Vec<Vec<u32>> {
        let m = self.m as u32;
        self.edges.iter().map(|&[a, b, w]| vec![a, b, w + m]).collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeStats {
    pub max: u64,
    pub min: u64,
    pub average: Ratio<u64>,
    pub degrees: Vec<u64>,
}

pub fn degree_stats<H: UniformHypergraph + ?Sized>(h: &H) -> DegreeStats {
    let mut degrees = vec![0u64; h.vertex_count()];
    for e in h.edge_list() {
        for v in e {
            degrees[v as usize] += 1;
        }
    }
    let total: u64 = degrees.iter().sum();
    debug_assert_eq!(total, (h.rank() * h.edge_count()) as u64, "handshake");
    let n = degrees.len() as u64;
    DegreeStats {
        max: degrees.iter().copied().max().unwrap_or(0),
        min: degrees.iter().copied().min().unwrap_or(0),
        average: if n == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(total, n)
        },
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triples() -> ThreeGraph {
        ThreeGraph::new(4, [[0, 1, 2], [0, 1, 3]]).unwrap()
    }

    #[test]
    fn shadows() {
        let single = ThreeGraph::new(3, [[2, 0, 1]]).unwrap();
        assert_eq!(single.shadow(1).unwrap(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(single.shadow(2).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(two_triples().pair_shadow().len(), 5);
        assert_eq!(single.shadow(3).unwrap_err(), GraphError::BadShadowIndex(3));
    }

    #[test]
    fn links() {
        let h = two_triples();
        assert_eq!(h.link_degree(&[0, 1]).unwrap(), (Link::Vertices(vec![2, 3]), 2));
        assert_eq!(h.link_degree(&[2]).unwrap(), (Link::Pairs(vec![[0, 1]]), 1));
        assert_eq!(h.link_degree(&[0]).unwrap(), (Link::Pairs(vec![[1, 2], [1, 3]]), 2));
        assert_eq!(h.link(&[0, 1, 2]).unwrap_err(), GraphError::BadLinkSize(3));
        assert_eq!(h.link(&[]).unwrap_err(), GraphError::BadLinkSize(0));
    }

    #[test]
    fn stats() {
        let s = degree_stats(&two_triples());
        assert_eq!((s.max, s.min), (2, 1));
        assert_eq!(s.average, Ratio::new(6, 4));
        let e = degree_stats(&Graph::empty(5));
        assert_eq!((e.max, e.min, e.average), (0, 0, Ratio::from_integer(0)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::new(3, [(1, 1)]).unwrap_err(), GraphError::Loop(vec![1, 1]));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::Duplicate(vec![0, 1])
        );
        assert_eq!(
            Graph::new(3, [(0, 3)]).unwrap_err(),
            GraphError::OutOfRange { vertex: 3, n: 3 }
        );
        assert!(ThreeGraph::new(4, [[0, 1, 1]]).is_err());
        assert!(ThreeGraph::new(4, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(BipartiteGraph::new(2, 2, [(2, 0)]).is_err());
        assert!(SemibipartiteThreeGraph::new(2, 1, [[0, 0, 0]]).is_err());
    }

    #[test]
    fn induced_and_between() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let (sub, map) = g.induced(&[4, 0, 1]);
        assert_eq!(map, vec![4, 0, 1]);
        assert_eq!(sub.edges(), &[[0, 1], [1, 2]]);
        let b = g.bipartite_between(&[0, 2], &[1, 3, 4]);
        assert_eq!(b.edges(), &[[0, 0], [0, 2], [1, 0], [1, 1]]);
        assert_eq!(b.transpose().edges(), &[[0, 0], [0, 1], [1, 1], [2, 0]]);
    }

    #[test]
    fn semibipartite_round_trip() {
        let h = SemibipartiteThreeGraph::new(3, 2, [[1, 0, 1], [0, 2, 0]]).unwrap();
        assert_eq!(h.edges(), &[[0, 1, 1], [0, 2, 0]]);
        let flat = h.to_three_graph();
        assert_eq!(flat.edges(), &[[0, 1, 4], [0, 2, 3]]);
        let back = flat.semibipartite_between(&[0, 1, 2], &[3, 4]);
        assert_eq!(back, h);
    }

    #[test]
    fn remove_vertex_keeps_order() {
        let k22 = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let minus = k22.remove_vertex(false, 1);
        assert_eq!((minus.left_size(), minus.right_size()), (2, 1));
        assert_eq!(minus.edge_count(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_three_graph() -> impl Strategy<Value = ThreeGraph> {
            (3usize..9).prop_flat_map(|n| {
                proptest::collection::btree_set((0..n as u32, 0..n as u32, 0..n as u32), 0..30).prop_map(move |set| {
                    let mut edges: Vec<[u32; 3]> = set
                        .into_iter()
                        .filter(|&(a, b, c)| a < b && b < c)
                        .map(|(a, b, c)| [a, b, c])
                        .collect();
                    edges.sort_unstable();
                    edges.dedup();
                    ThreeGraph::new(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn handshake_and_shadow(h in arb_three_graph()) {
                let s = degree_stats(&h);
                prop_assert_eq!(s.degrees.iter().sum::<u64>(), 3 * h.edge_count() as u64);
                prop_assert!(s.min as u128 * h.n() as u128 <= *s.average.numer() as u128 * h.n() as u128 / *s.average.denom() as u128 + 1);
                prop_assert!(h.pair_shadow().len() <= 3 * h.edge_count());
                let links = h.pair_links();
                for [u, v] in h.pair_shadow() {
                    let (_, d) = h.link_degree(&[u, v]).unwrap();
                    prop_assert_eq!(d, h.codegree(u, v));
                    prop_assert_eq!(d, links[&[u, v]].len());
                }
            }
        }
    }
}
