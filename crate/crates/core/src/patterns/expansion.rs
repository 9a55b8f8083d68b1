//! Expansions `F+` inside 3-graphs: the expansion operator, exact containment search
//! (core embedding into the shadow, then distinct apexes by bipartite matching) and the
//! greedy apex assignment for high-codegree cores.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::bitset::Bitset;
use crate::hypergraph::{BipartiteGraph, Graph, SemibipartiteThreeGraph, ThreeGraph};
use crate::patterns::embed::{Host, PatternPlan, Search};
use crate::patterns::{PatternError, Placement};

/// `F+` together with the bookkeeping needed to recover the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expanded {
    pub graph: ThreeGraph,
    /// Core vertices are `0..core_vertices`; apex of core edge `i` is `core_vertices + i`.
    pub core_vertices: usize,
    pub core_edges: Vec<[u32; 2]>,
}

pub fn expand(core: &Graph) -> Expanded {
    let k = core.n() as u32;
    let edges: Vec<[u32; 3]> = core
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &[a, b])| [a, b, k + i as u32])
        .collect();
    Expanded {
        graph: ThreeGraph::new(core.n() + core.edge_count(), edges).expect("expansion is simple"),
        core_vertices: core.n(),
        core_edges: core.edges().to_vec(),
    }
}

pub fn expand_bipartite(core: &BipartiteGraph) -> Expanded {
    expand(&core.to_graph())
}

#[derive(Clone, Debug)]
enum Links {
    /// Apex bitmask per ordered pair, for hosts on at most 64 vertices.
    Dense {
        n: usize,
        masks: Vec<u64>,
    },
    Sparse(HashMap<[u32; 2], Vec<u32>>),
}

/// A 3-graph prepared for expansion search: its pair shadow as a bitset host, the pair
/// links, and (for semibipartite hosts) the two parts.
#[derive(Clone, Debug)]
pub struct ExpansionHost {
    shadow: Host,
    links: Links,
    parts: Option<(Bitset, Bitset)>,
    edge_count: usize,
}

impl ExpansionHost {
    pub fn from_three_graph(h: &ThreeGraph) -> Self {
        let n = h.n();
        let mut host = if n <= 64 {
            Self::empty_dense(n)
        } else {
            let links = h.pair_links();
            let shadow = Host::from_pairs(n, links.keys().copied());
            Self {
                shadow,
                links: Links::Sparse(links),
                parts: None,
                edge_count: h.edge_count(),
            }
        };
        if n <= 64 {
            for &e in h.edges() {
                host.add_edge(e);
            }
        }
        host
    }

    /// Semibipartite host flattened as `V1 = 0..m`, `V2 = m..m+n`.
    pub fn from_semibipartite(h: &SemibipartiteThreeGraph) -> Self {
        let mut host = Self::from_three_graph(&h.to_three_graph());
        let total = h.first_size() + h.second_size();
        host.parts = Some((
            Bitset::from_indices(total, 0..h.first_size()),
            Bitset::from_indices(total, h.first_size()..total),
        ));
        host
    }

    /// Mutable dense host on `n <= 64` vertices (used by the exact solvers).
    pub fn empty_dense(n: usize) -> Self {
        assert!(n <= 64, "dense expansion hosts are limited to 64 vertices");
        Self {
            shadow: Host::new(n),
            links: Links::Dense {
                n,
                masks: vec![0; n * n],
            },
            parts: None,
            edge_count: 0,
        }
    }

    pub fn with_parts(mut self, first: Bitset, second: Bitset) -> Self {
        self.parts = Some((first, second));
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.shadow.n()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn shadow(&self) -> &Host {
        &self.shadow
    }

    pub fn parts(&self) -> Option<&(Bitset, Bitset)> {
        self.parts.as_ref()
    }

    /// Vertices `w` with `{u, v, w}` an edge.
    pub fn apexes(&self, u: u32, v: u32) -> Vec<u32> {
        match &self.links {
            Links::Dense { n, masks } => {
                let mut m = masks[u as usize * n + v as usize];
                let mut out = Vec::with_capacity(m.count_ones() as usize);
                while m != 0 {
                    out.push(m.trailing_zeros());
                    m &= m - 1;
                }
                out
            }
            Links::Sparse(map) => map.get(&[u.min(v), u.max(v)]).cloned().unwrap_or_default(),
        }
    }

    pub fn codegree(&self, u: u32, v: u32) -> usize {
        match &self.links {
            Links::Dense { n, masks } => masks[u as usize * n + v as usize].count_ones() as usize,
            Links::Sparse(map) => map.get(&[u.min(v), u.max(v)]).map_or(0, Vec::len),
        }
    }

    fn dense_masks(&mut self) -> (usize, &mut Vec<u64>) {
        match &mut self.links {
            Links::Dense { n, masks } => (*n, masks),
            Links::Sparse(_) => panic!("only dense hosts are mutable"),
        }
    }

    pub fn add_edge(&mut self, [a, b, c]: [u32; 3]) {
        let (n, masks) = self.dense_masks();
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            masks[x as usize * n + y as usize] |= 1 << z;
            masks[y as usize * n + x as usize] |= 1 << z;
        }
        for (x, y) in [(a, b), (a, c), (b, c)] {
            self.shadow.add_edge(x, y);
        }
        self.edge_count += 1;
    }

    pub fn remove_edge(&mut self, [a, b, c]: [u32; 3]) {
        let (n, masks) = self.dense_masks();
        let mut emptied = Vec::new();
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            masks[x as usize * n + y as usize] &= !(1 << z);
            masks[y as usize * n + x as usize] &= !(1 << z);
            if masks[x as usize * n + y as usize] == 0 {
                emptied.push((x, y));
            }
        }
        for (x, y) in emptied {
            self.shadow.remove_edge(x, y);
        }
        self.edge_count -= 1;
    }
}

/// A copy of `F+`: the core map (flattened core vertex -> host vertex) and one apex per
/// core edge, in the core's sorted edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionWitness {
    pub core_map: Vec<u32>,
    pub core_edges: Vec<[u32; 2]>,
    pub apexes: Vec<u32>,
}

impl ExpansionWitness {
    /// Host triples used by the copy.
    pub fn triples(&self) -> Vec<[u32; 3]> {
        self.core_edges
            .iter()
            .zip(&self.apexes)
            .map(|(&[a, b], &w)| {
                let mut t = [self.core_map[a as usize], self.core_map[b as usize], w];
                t.sort_unstable();
                t
            })
            .collect()
    }
}

/// Distinct representatives by augmenting paths: `options[i]` lists admissible apexes for
/// core edge `i`. Returns one apex per edge, or `None` if no system exists.
pub fn distinct_apexes(options: &[Vec<u32>]) -> Option<Vec<u32>> {
    fn augment(i: usize, options: &[Vec<u32>], owner: &mut HashMap<u32, usize>, seen: &mut Vec<u32>) -> bool {
        for &w in &options[i] {
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            match owner.get(&w).copied() {
                None => {
                    owner.insert(w, i);
                    return true;
                }
                Some(j) => {
                    if augment(j, options, owner, seen) {
                        owner.insert(w, i);
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut owner: HashMap<u32, usize> = HashMap::new();
    for i in 0..options.len() {
        let mut seen = Vec::new();
        if !augment(i, options, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut result = vec![0; options.len()];
    for (w, i) in owner {
        result[i] = w;
    }
    Some(result)
}

fn plan_for(host: &ExpansionHost, core: &BipartiteGraph, placement: Placement) -> Result<PatternPlan, PatternError> {
    let mut plan = PatternPlan::from_bipartite(core);
    let a = core.left_size();
    let k = a + core.right_size();
    match placement {
        Placement::Unordered => {}
        Placement::Ordered | Placement::CoreInV1 => {
            let (v1, v2) = host.parts().ok_or(PatternError::PlacementIncompatible(placement))?;
            for v in 0..k {
                let target = if placement == Placement::Ordered && v >= a {
                    v2
                } else {
                    v1
                };
                plan.restrict(v, target.clone());
            }
        }
    }
    if is_complete(core) {
        // Vertices within a side of K_{s,t} are interchangeable.
        for v in 1..a {
            plan.require_less(v - 1, v);
        }
        for v in a + 1..k {
            plan.require_less(v - 1, v);
        }
        if placement != Placement::Ordered && a == core.right_size() && a > 0 {
            plan.require_less(0, a);
        }
    }
    Ok(plan)
}

fn is_complete(core: &BipartiteGraph) -> bool {
    core.edge_count() == core.left_size() * core.right_size()
}

fn apex_system(
    host: &ExpansionHost,
    core_edges: &[[u32; 2]],
    map: &[u32],
    forced: Option<(usize, u32)>,
) -> Option<Vec<u32>> {
    let options: Vec<Vec<u32>> = core_edges
        .iter()
        .enumerate()
        .map(|(i, &[a, b])| match forced {
            Some((j, w)) if j == i => vec![w],
            _ => host
                .apexes(map[a as usize], map[b as usize])
                .into_iter()
                .filter(|w| !map.contains(w) && forced.is_none_or(|(_, f)| f != *w))
                .collect(),
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    distinct_apexes(&options)
}

/// Exact search for a copy of `core+` respecting `placement`:
/// `Ordered` sends the core's first side into `V1` and second side into `V2`;
/// `CoreInV1` sends the whole core into `V1`; `Unordered` puts no constraint.
pub fn find_expansion(
    host: &ExpansionHost,
    core: &BipartiteGraph,
    placement: Placement,
) -> Result<Option<ExpansionWitness>, PatternError> {
    let plan = plan_for(host, core, placement)?;
    let core_edges = core.to_graph().edges().to_vec();
    let search = Search::new(&host.shadow, &plan, &[]);
    Ok(search.find_map(|map| {
        apex_system(host, &core_edges, map, None).map(|apexes| ExpansionWitness {
            core_map: map.to_vec(),
            core_edges: core_edges.clone(),
            apexes,
        })
    }))
}

/// Whether some copy of `core+` uses the host edge `triple` (the host must already contain it).
/// Only core embeddings sending a core edge onto one of the triple's pairs are explored, with
/// that core edge's apex pinned to the triple's third vertex.
pub fn expansion_through_edge(
    host: &ExpansionHost,
    core: &BipartiteGraph,
    placement: Placement,
    triple: [u32; 3],
) -> Result<bool, PatternError> {
    let mut plan = plan_for(host, core, placement)?;
    plan.clear_order_constraints();
    let core_edges = core.to_graph().edges().to_vec();
    let [a, b, c] = triple;
    for (x, y, apex) in [(a, b, c), (a, c, b), (b, c, a)] {
        for (idx, &[pu, pv]) in core_edges.iter().enumerate() {
            for (u, v) in [(x, y), (y, x)] {
                let search = Search::new(&host.shadow, &plan, &[(pu as usize, u), (pv as usize, v)]);
                let mut hit = false;
                let _ = search.for_each(|map| {
                    if map.contains(&apex) {
                        return ControlFlow::Continue(());
                    }
                    if apex_system(host, &core_edges, map, Some((idx, apex))).is_some() {
                        hit = true;
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                if hit {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Assigns apexes greedily to a `K_{s,t}` core given by its two sides, scanning core edges
/// in `(left, right)` order and always taking the smallest admissible apex.
///
/// Requires every core pair to have codegree at least `st + s + t`; then at most
/// `s + t + st - 1` vertices are ever forbidden, so each step succeeds.
pub fn greedy_extend(
    h: &ThreeGraph,
    left: &[u32],
    right: &[u32],
    s: usize,
    t: usize,
) -> Result<ExpansionWitness, PatternError> {
    if left.len() != s || right.len() != t {
        return Err(PatternError::WitnessShape {
            expected: (s, t),
            got: (left.len(), right.len()),
        });
    }
    let links = h.pair_links();
    let needed = s * t + s + t;
    let mut core_map: Vec<u32> = left.to_vec();
    core_map.extend_from_slice(right);
    let mut sorted = core_map.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PatternError::WitnessShape {
            expected: (s, t),
            got: (left.len(), right.len()),
        });
    }
    let mut core_edges = Vec::with_capacity(s * t);
    for (i, &u) in left.iter().enumerate() {
        for (j, &w) in right.iter().enumerate() {
            let d = links.get(&[u.min(w), u.max(w)]).map_or(0, Vec::len);
            if d < needed {
                return Err(PatternError::CodegreeTooSmall {
                    pair: [u, w],
                    degree: d,
                    required: needed,
                });
            }
            core_edges.push([i as u32, (s + j) as u32]);
        }
    }
    let mut apexes = Vec::with_capacity(core_edges.len());
    for &[i, j] in &core_edges {
        let (u, w) = (core_map[i as usize], core_map[j as usize]);
        let pick = links[&[u.min(w), u.max(w)]]
            .iter()
            .copied()
            .find(|x| !core_map.contains(x) && !apexes.contains(x))
            .ok_or(PatternError::GreedyFailed { pair: [u, w] })?;
        apexes.push(pick);
    }
    Ok(ExpansionWitness {
        core_map,
        core_edges,
        apexes,
    })
}
