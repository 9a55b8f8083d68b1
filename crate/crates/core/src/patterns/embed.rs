//! Backtracking search for (non-induced) copies of a small pattern graph in a bitset host.
//!
//! Pattern vertices are placed so that each new vertex has as many already-placed neighbours
//! as possible; its candidates are the intersection of the host rows of those neighbours,
//! restricted to an optional per-vertex allowed set and filtered by host degree.

use std::ops::ControlFlow;

use crate::bitset::{iter_words, words_for, Bitset};
use crate::hypergraph::{BipartiteGraph, Graph};

/// Host adjacency as one bitset row per vertex.
#[derive(Clone, Debug)]
pub struct Host {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    degree: Vec<u32>,
}

impl Host {
    pub fn new(n: usize) -> Self {
        let words = words_for(n).max(1);
        Self {
            n,
            words,
            rows: vec![0; n * words],
            degree: vec![0; n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = [u32; 2]>) -> Self {
        let mut h = Self::new(n);
        for [a, b] in pairs {
            h.add_edge(a, b);
        }
        h
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::from_pairs(g.n(), g.edges().iter().copied())
    }

    /// Flattened bipartite host: first part `0..m`, second part `m..m+n`.
    pub fn from_bipartite(g: &BipartiteGraph) -> Self {
        let m = g.left_size() as u32;
        Self::from_pairs(
            g.left_size() + g.right_size(),
            g.edges().iter().map(|&[a, b]| [a, b + m]),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: u32) -> &[u64] {
        let s = v as usize * self.words;
        &self.rows[s..s + self.words]
    }

    #[inline]
    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.row(a)[b as usize / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        if self.has_edge(a, b) {
            return;
        }
        let w = self.words;
        self.rows[a as usize * w + b as usize / 64] |= 1 << (b % 64);
        self.rows[b as usize * w + a as usize / 64] |= 1 << (a % 64);
        self.degree[a as usize] += 1;
        self.degree[b as usize] += 1;
    }

    pub fn remove_edge(&mut self, a: u32, b: u32) {
        if !self.has_edge(a, b) {
            return;
        }
        let w = self.words;
        self.rows[a as usize * w + b as usize / 64] &= !(1 << (b % 64));
        self.rows[b as usize * w + a as usize / 64] &= !(1 << (a % 64));
        self.degree[a as usize] -= 1;
        self.degree[b as usize] -= 1;
    }
}

/// A pattern prepared for search: adjacency lists plus per-vertex constraints.
#[derive(Clone, Debug)]
pub struct PatternPlan {
    k: usize,
    adj: Vec<Vec<usize>>,
    allowed: Vec<Option<Bitset>>,
    /// `(u, v)` requires `map[u] < map[v]`.
    less_than: Vec<(usize, usize)>,
}

impl PatternPlan {
    pub fn new(pattern: &Graph) -> Self {
        let k = pattern.n();
        let adj = (0..k as u32)
            .map(|v| pattern.neighbors(v).iter().map(|&u| u as usize).collect())
            .collect();
        Self {
            k,
            adj,
            allowed: vec![None; k],
            less_than: Vec::new(),
        }
    }

    /// Flattened bipartite pattern (`left` then `right`), optionally pinned to host parts.
    pub fn from_bipartite(pattern: &BipartiteGraph) -> Self {
        Self::new(&pattern.to_graph())
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn restrict(&mut self, vertex: usize, allowed: Bitset) {
        self.allowed[vertex] = Some(allowed);
    }

    pub fn require_less(&mut self, u: usize, v: usize) {
        self.less_than.push((u, v));
    }

    pub fn clear_order_constraints(&mut self) {
        self.less_than.clear();
    }

    fn placement_order(&self, anchored: &[usize]) -> Vec<usize> {
        let mut placed = vec![false; self.k];
        let mut order = Vec::with_capacity(self.k);
        for &a in anchored {
            if !placed[a] {
                placed[a] = true;
                order.push(a);
            }
        }
        while order.len() < self.k {
            let next = (0..self.k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = self.adj[v].iter().filter(|&&u| placed[u]).count();
                    // max_by_key keeps the last maximum; reverse index to prefer small labels
                    (back, self.adj[v].len(), usize::MAX - v)
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        order
    }
}

/// Search state for one (host, plan, anchors) triple.
pub struct Search<'a> {
    host: &'a Host,
    plan: &'a PatternPlan,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    anchors: Vec<Option<u32>>,
}

struct Scratch {
    map: Vec<u32>,
    used: Vec<u64>,
    cand: Vec<u64>,
}

impl<'a> Search<'a> {
    pub fn new(host: &'a Host, plan: &'a PatternPlan, anchors: &[(usize, u32)]) -> Self {
        let anchored: Vec<usize> = anchors.iter().map(|&(v, _)| v).collect();
        let order = plan.placement_order(&anchored);
        let mut pos = vec![0; plan.k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| plan.adj[v].iter().copied().filter(|&u| pos[u] < i).collect())
            .collect();
        let mut anchor_of = vec![None; plan.k];
        for &(v, h) in anchors {
            anchor_of[v] = Some(h);
        }
        Self {
            host,
            plan,
            order,
            back,
            anchors: anchor_of,
        }
    }

    fn scratch(&self) -> Scratch {
        let w = self.host.words;
        Scratch {
            map: vec![u32::MAX; self.plan.k],
            used: vec![0; w],
            cand: vec![0; (self.plan.k + 1) * w],
        }
    }

    fn admissible(&self, s: &Scratch, v: usize, c: u32) -> bool {
        if self.host.degree[c as usize] < self.plan.adj[v].len() as u32 {
            return false;
        }
        for &(a, b) in &self.plan.less_than {
            if a == v && s.map[b] != u32::MAX && c >= s.map[b] {
                return false;
            }
            if b == v && s.map[a] != u32::MAX && c <= s.map[a] {
                return false;
            }
        }
        true
    }

    /// Candidate host vertices for position `pos`, written into the scratch slot.
    fn fill_candidates(&self, s: &mut Scratch, pos: usize) {
        let w = self.host.words;
        let v = self.order[pos];
        let (_, rest) = s.cand.split_at_mut(pos * w);
        let slot = &mut rest[..w];
        match self.anchors[v] {
            Some(a) => {
                slot.fill(0);
                if (a as usize) < self.host.n {
                    slot[a as usize / 64] = 1 << (a % 64);
                }
            }
            None => {
                slot.fill(!0);
                let tail = self.host.n % 64;
                if tail != 0 {
                    slot[w - 1] = (1u64 << tail) - 1;
                }
                if self.host.n == 0 {
                    slot.fill(0);
                }
            }
        }
        if let Some(allowed) = &self.plan.allowed[v] {
            for (x, y) in slot.iter_mut().zip(allowed.words()) {
                *x &= y;
            }
        }
        for &u in &self.back[pos] {
            let row = self.host.row(s.map[u]);
            for (x, y) in slot.iter_mut().zip(row) {
                *x &= y;
            }
        }
        for (x, y) in slot.iter_mut().zip(&s.used) {
            *x &= !y;
        }
    }

    fn rec<F>(&self, s: &mut Scratch, pos: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if pos == self.plan.k {
            return visit(&s.map);
        }
        self.fill_candidates(s, pos);
        let w = self.host.words;
        let v = self.order[pos];
        let cands: Vec<usize> = iter_words(&s.cand[pos * w..(pos + 1) * w]).collect();
        self.try_candidates(s, pos, v, cands.into_iter(), visit)
    }

    fn try_candidates<F, I>(&self, s: &mut Scratch, pos: usize, v: usize, cands: I, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
        I: Iterator<Item = usize>,
    {
        for c in cands {
            let c = c as u32;
            if !self.admissible(s, v, c) {
                continue;
            }
            s.map[v] = c;
            s.used[c as usize / 64] |= 1 << (c % 64);
            let flow = self.rec(s, pos + 1, visit);
            s.used[c as usize / 64] &= !(1 << (c % 64));
            s.map[v] = u32::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Host vertices eligible for the first placed pattern vertex, by ascending host degree.
    pub fn first_candidates(&self) -> Vec<u32> {
        if self.plan.k == 0 {
            return Vec::new();
        }
        let mut s = self.scratch();
        self.fill_candidates(&mut s, 0);
        let w = self.host.words;
        let mut c: Vec<u32> = iter_words(&s.cand[..w]).map(|x| x as u32).collect();
        c.sort_by_key(|&x| (self.host.degree[x as usize], x));
        c
    }

    /// Visits every embedding (pattern vertex -> host vertex) until `visit` breaks.
    pub fn for_each<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let mut s = self.scratch();
        if self.plan.k == 0 {
            return visit(&s.map);
        }
        let first = self.first_candidates();
        let v = self.order[0];
        self.try_candidates(&mut s, 0, v, first.into_iter().map(|c| c as usize), &mut visit)
    }

    /// Visits embeddings whose first placed vertex is `first`.
    pub fn for_each_from<F>(&self, first: u32, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let mut s = self.scratch();
        let v = self.order[0];
        self.try_candidates(&mut s, 0, v, std::iter::once(first as usize), &mut visit)
    }

    /// First value produced by `probe` over all embeddings; the first level is split
    /// across workers when the `parallel` feature is on (any witness may win).
    pub fn find_map<T, F>(&self, probe: F) -> Option<T>
    where
        T: Send,
        F: Fn(&[u32]) -> Option<T> + Sync,
    {
        if self.plan.k == 0 {
            return probe(&[]);
        }
        let run = |first: u32| {
            let mut found = None;
            let _ = self.for_each_from(first, |m| match probe(m) {
                Some(t) => {
                    found = Some(t);
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            });
            found
        };
        crate::par::find_map_any(self.first_candidates(), run)
    }

    pub fn exists(&self) -> bool {
        self.find_map(|m| Some(m.to_vec())).is_some()
    }
}

/// Any copy of `pattern` in `host`, as a map from flattened pattern vertices to host vertices.
pub fn find_copy(host: &Host, plan: &PatternPlan) -> Option<Vec<u32>> {
    Search::new(host, plan, &[]).find_map(|m| Some(m.to_vec()))
}

/// Does some copy of the pattern use the host edge `{a, b}`?
pub fn copy_through_edge(host: &Host, plan: &PatternPlan, a: u32, b: u32) -> bool {
    if !host.has_edge(a, b) {
        return false;
    }
    for (x, y) in plan.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let search = Search::new(host, plan, &[(x, u), (y, v)]);
            let mut hit = false;
            let _ = search.for_each(|_| {
                hit = true;
                ControlFlow::Break(())
            });
            if hit {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        Graph::new(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn finds_c4_in_k4_not_in_c6() {
        let c4 = PatternPlan::new(&cycle(4));
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let m = find_copy(&Host::from_graph(&k4), &c4).unwrap();
        for (u, v) in c4.edges() {
            assert!(k4.has_edge(m[u], m[v]));
        }
        assert!(find_copy(&Host::from_graph(&cycle(6)), &c4).is_none());
    }

    #[test]
    fn counts_all_embeddings() {
        // C4 in K4: 3 distinct 4-cycles, 8 automorphisms each.
        let c4 = PatternPlan::new(&cycle(4));
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let host = Host::from_graph(&k4);
        let mut count = 0;
        let _ = Search::new(&host, &c4, &[]).for_each(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 24);
    }

    #[test]
    fn edge_anchor() {
        let c4 = PatternPlan::new(&cycle(4));
        // C4 0-1-2-3 plus pendant 3-4
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let host = Host::from_graph(&g);
        assert!(copy_through_edge(&host, &c4, 0, 1));
        assert!(!copy_through_edge(&host, &c4, 3, 4));
        assert!(!copy_through_edge(&host, &c4, 1, 3));
    }

    #[test]
    fn order_constraints_break_symmetry() {
        let mut c4 = PatternPlan::new(&cycle(4));
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let host = Host::from_graph(&k4);
        c4.require_less(0, 2);
        c4.require_less(1, 3);
        c4.require_less(0, 1);
        let mut count = 0;
        let _ = Search::new(&host, &c4, &[]).for_each(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 3);
    }
}
