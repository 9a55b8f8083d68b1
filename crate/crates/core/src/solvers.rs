//! Exact extremal numbers at desk scale, and the explicit upper-bound formulas they are
//! checked against.
//!
//! All solvers run the same include-first depth-first branch and bound over a candidate
//! edge list in lexicographic order. The first optimal edge set reached is therefore the
//! lexicographically smallest one. The tree is cut at a fixed depth into subtrees that run
//! on worker threads. An atomic incumbent prunes only subtrees whose bound is strictly below
//! it, so every subtree still reports its own first optimum, and the result does not depend
//! on scheduling.
//!
//! Graphs and bipartite graphs branch on the maximum degree `Δ`. Vertex `0` (left vertex `0`)
//! is fixed as a vertex of degree `Δ` with neighbourhood `{1..Δ}` (right `{0..Δ-1}`), and every
//! degree is capped at `Δ`. The lexicographically smallest extremal graph has this shape for
//! the largest `Δ` among extremal graphs, so scanning `Δ` downwards and keeping the first
//! branch that reaches the optimum keeps that witness.
//!
//! 3-graph and semibipartite problems have no such normal form. They use the bound
//! `|H| <= ex(n - 1) + d(v)` for every vertex `v`, with `ex(n - 1)` solved first.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::hypergraph::{BipartiteGraph, Graph, SemibipartiteThreeGraph, ThreeGraph};
use crate::io::AnyGraph;
use crate::par;
use crate::patterns::embed::{copy_through_edge, Host, PatternPlan};
use crate::patterns::{
    expansion_through_edge, ordered_plan, ExpansionHost, PatternError, PatternKind, PatternSpec, Placement,
};

pub const MAX_GRAPH_N: usize = 10;
pub const MAX_THREE_GRAPH_N: usize = 8;
pub const MAX_Z_CELLS: usize = 30;
pub const MAX_ZEXP_SIDE: usize = 4;

/// Decisions made sequentially before the tree is handed to workers.
const SPLIT_DEPTH: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance exceeds the solver cap: {0}")]
    CapExceeded(String),
    #[error("no host satisfies the constraints: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HostKind {
    Graph,
    ThreeGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    /// Lexicographically smallest extremal host.
    pub witness: AnyGraph,
    pub nodes_explored: u64,
}

// ---------------------------------------------------------------------------------------
// Generic engine

trait Problem: Sync {
    type State: Clone + Send;
    fn universe_len(&self) -> usize;
    /// Adds candidate `e`; returns `false` (state unchanged) if that breaks a constraint.
    fn try_add(&self, st: &mut Self::State, e: usize) -> bool;
    fn remove(&self, st: &mut Self::State, e: usize);
    /// Upper bound on the final edge count when candidates `next..` are undecided, or `None`
    /// if no completion is feasible.
    fn bound(&self, st: &Self::State, next: usize, cur: usize) -> Option<usize>;
    fn accepts(&self, _st: &Self::State) -> bool {
        true
    }
}

struct Task<S> {
    state: S,
    next: usize,
    chosen: Vec<usize>,
}

struct Runner<'a, P: Problem> {
    problem: &'a P,
    incumbent: &'a AtomicUsize,
    nodes: &'a AtomicU64,
}

impl<P: Problem> Runner<'_, P> {
    fn split(
        &self,
        st: &mut P::State,
        next: usize,
        chosen: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Task<P::State>>,
    ) {
        if depth == SPLIT_DEPTH || next == self.problem.universe_len() {
            out.push(Task {
                state: st.clone(),
                next,
                chosen: chosen.clone(),
            });
            return;
        }
        if self.problem.bound(st, next, chosen.len()).is_none() {
            return;
        }
        if self.problem.try_add(st, next) {
            chosen.push(next);
            self.split(st, next + 1, chosen, depth + 1, out);
            chosen.pop();
            self.problem.remove(st, next);
        }
        self.split(st, next + 1, chosen, depth + 1, out);
    }

    fn dfs(
        &self,
        st: &mut P::State,
        next: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
        local_nodes: &mut u64,
    ) {
        *local_nodes += 1;
        let cur = chosen.len();
        if best.as_ref().is_none_or(|(v, _)| cur > *v) && self.problem.accepts(st) {
            *best = Some((cur, chosen.clone()));
            self.incumbent.fetch_max(cur, Ordering::Relaxed);
        }
        if next == self.problem.universe_len() {
            return;
        }
        let Some(ub) = self.problem.bound(st, next, cur) else {
            return;
        };
        if best.as_ref().is_some_and(|(v, _)| ub <= *v) || ub < self.incumbent.load(Ordering::Relaxed) {
            return;
        }
        if self.problem.try_add(st, next) {
            chosen.push(next);
            self.dfs(st, next + 1, chosen, best, local_nodes);
            chosen.pop();
            self.problem.remove(st, next);
        }
        self.dfs(st, next + 1, chosen, best, local_nodes);
    }

    /// Best `(value, chosen candidates)` reachable from `root`, lexicographically first.
    fn run(&self, mut root: P::State) -> Option<(usize, Vec<usize>)> {
        let mut tasks = Vec::new();
        self.split(&mut root, 0, &mut Vec::new(), 0, &mut tasks);
        let results = par::map(tasks, |mut task| {
            let mut best = None;
            let mut nodes = 0;
            self.dfs(&mut task.state, task.next, &mut task.chosen, &mut best, &mut nodes);
            self.nodes.fetch_add(nodes, Ordering::Relaxed);
            best
        });
        // max value, earliest task on ties
        results
            .into_iter()
            .flatten()
            .fold(None, |acc: Option<(usize, Vec<usize>)>, r| match acc {
                Some(a) if a.0 >= r.0 => Some(a),
                _ => Some(r),
            })
    }
}

/// Number of candidates at index `>= i` touching each vertex, for every `i`.
fn suffix_incidence(universe: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]; universe.len() + 1];
    for i in (0..universe.len()).rev() {
        out[i] = out[i + 1].clone();
        for &v in &universe[i] {
            out[i][v as usize] += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------------------
// Graphs

struct GraphProblem<'a> {
    universe: Vec<[u32; 2]>,
    avail: Vec<Vec<u32>>,
    plans: &'a [PatternPlan],
    cap: u32,
    n: usize,
}

impl Problem for GraphProblem<'_> {
    type State = Host;

    fn universe_len(&self) -> usize {
        self.universe.len()
    }

    fn try_add(&self, h: &mut Host, e: usize) -> bool {
        let [a, b] = self.universe[e];
        if h.degree(a) >= self.cap || h.degree(b) >= self.cap {
            return false;
        }
        h.add_edge(a, b);
        if self.plans.iter().any(|p| copy_through_edge(h, p, a, b)) {
            h.remove_edge(a, b);
            return false;
        }
        true
    }

    fn remove(&self, h: &mut Host, e: usize) {
        let [a, b] = self.universe[e];
        h.remove_edge(a, b);
    }

    fn bound(&self, h: &Host, next: usize, cur: usize) -> Option<usize> {
        let avail = &self.avail[next];
        let spare: u32 = (0..self.n).map(|v| (self.cap - h.degree(v as u32)).min(avail[v])).sum();
        Some(cur + ((self.universe.len() - next).min(spare as usize / 2)))
    }
}

fn graph_plans(patterns: &[PatternSpec]) -> Result<Vec<PatternPlan>, SolveError> {
    patterns
        .iter()
        .map(|p| match (&p.kind, p.placement) {
            (PatternKind::Expansion(_), _) => {
                Err(PatternError::WrongHost("expansion pattern in a graph host".into()).into())
            }
            (_, Placement::Unordered) => Ok(PatternPlan::from_bipartite(&p.core())),
            (_, other) => Err(PatternError::PlacementIncompatible(other).into()),
        })
        .collect()
}

fn solve_graph(n: usize, patterns: &[PatternSpec], floor: usize) -> Result<SolveResult, SolveError> {
    let plans = graph_plans(patterns)?;
    if n == 0 {
        if floor > 0 {
            return Err(SolveError::Infeasible("no vertices".into()));
        }
        return Ok(SolveResult {
            value: 0,
            witness: AnyGraph::Graph(Graph::empty(0)),
            nodes_explored: 1,
        });
    }
    let universe: Vec<[u32; 2]> = (1..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| [a, b]))
        .collect();
    let lists: Vec<Vec<u32>> = universe.iter().map(|e| e.to_vec()).collect();
    let avail = suffix_incidence(&lists, n);
    let nodes = AtomicU64::new(0);
    let mut best: Option<(usize, Vec<[u32; 2]>)> = None;
    for delta in (floor..n).rev() {
        // a branch with maximum degree delta has at most n*delta/2 edges
        if best.as_ref().is_some_and(|(v, _)| n * delta / 2 <= *v) {
            break;
        }
        let mut root = Host::new(n);
        let star_ok = (1..=delta as u32).all(|v| {
            root.add_edge(0, v);
            !plans.iter().any(|p| copy_through_edge(&root, p, 0, v))
        });
        nodes.fetch_add(1, Ordering::Relaxed);
        if !star_ok {
            continue;
        }
        let problem = GraphProblem {
            universe: universe.clone(),
            avail: avail.clone(),
            plans: &plans,
            cap: delta as u32,
            n,
        };
        // counts inside a branch exclude the delta pivot edges; only a strict improvement
        // on an earlier (larger) delta matters
        let incumbent = AtomicUsize::new(best.as_ref().map_or(0, |(b, _)| (b + 1).saturating_sub(delta)));
        let runner = Runner {
            problem: &problem,
            incumbent: &incumbent,
            nodes: &nodes,
        };
        if let Some((v, chosen)) = runner.run(root) {
            let value = v + delta;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                let mut edges: Vec<[u32; 2]> = (1..=delta as u32).map(|u| [0, u]).collect();
                edges.extend(chosen.iter().map(|&i| universe[i]));
                best = Some((value, edges));
            }
        }
    }
    let (value, edges) =
        best.ok_or_else(|| SolveError::Infeasible(format!("no pattern-free graph with Δ >= {floor}")))?;
    Ok(SolveResult {
        value,
        witness: AnyGraph::Graph(Graph::from_sorted(n, edges)),
        nodes_explored: nodes.into_inner(),
    })
}

// ---------------------------------------------------------------------------------------
// 3-graphs

struct ThreeProblem<'a> {
    universe: Vec<[u32; 3]>,
    avail: Vec<Vec<u32>>,
    cores: &'a [crate::hypergraph::BipartiteGraph],
    n: usize,
    /// `ex(n - 1)`.
    smaller: usize,
    floor: usize,
}

#[derive(Clone)]
struct ThreeState {
    host: ExpansionHost,
    degree: Vec<u32>,
}

impl Problem for ThreeProblem<'_> {
    type State = ThreeState;

    fn universe_len(&self) -> usize {
        self.universe.len()
    }

    fn try_add(&self, st: &mut ThreeState, e: usize) -> bool {
        let t = self.universe[e];
        st.host.add_edge(t);
        let hit = self.cores.iter().any(|c| {
            expansion_through_edge(&st.host, c, Placement::Unordered, t).expect("unordered placement fits any host")
        });
        if hit {
            st.host.remove_edge(t);
            return false;
        }
        for v in t {
            st.degree[v as usize] += 1;
        }
        true
    }

    fn remove(&self, st: &mut ThreeState, e: usize) {
        let t = self.universe[e];
        st.host.remove_edge(t);
        for v in t {
            st.degree[v as usize] -= 1;
        }
    }

    fn bound(&self, st: &ThreeState, next: usize, cur: usize) -> Option<usize> {
        let avail = &self.avail[next];
        let reach = (0..self.n).map(|v| (st.degree[v] + avail[v]) as usize);
        if reach.clone().max().unwrap_or(0) < self.floor {
            return None;
        }
        let by_vertex = reach.min().map_or(usize::MAX, |d| self.smaller + d);
        Some((cur + self.universe.len() - next).min(by_vertex))
    }

    fn accepts(&self, st: &ThreeState) -> bool {
        self.floor == 0 || st.degree.iter().any(|&d| d as usize >= self.floor)
    }
}

fn three_cores(patterns: &[PatternSpec]) -> Result<Vec<BipartiteGraph>, SolveError> {
    patterns
        .iter()
        .map(|p| match (&p.kind, p.placement) {
            (PatternKind::Expansion(core), Placement::Unordered) => Ok(core.clone()),
            (PatternKind::Expansion(_), other) => Err(PatternError::PlacementIncompatible(other).into()),
            _ => Err(PatternError::WrongHost("graph pattern in a 3-graph host".into()).into()),
        })
        .collect()
}

fn solve_three(
    n: usize,
    cores: &[BipartiteGraph],
    floor: usize,
    memo: &mut HashMap<usize, usize>,
    nodes: &AtomicU64,
) -> Result<(usize, Vec<[u32; 3]>), SolveError> {
    let smaller = if n == 0 {
        0
    } else if let Some(&v) = memo.get(&(n - 1)) {
        v
    } else {
        let v = solve_three(n - 1, cores, 0, memo, nodes)?.0;
        memo.insert(n - 1, v);
        v
    };
    let universe: Vec<[u32; 3]> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).flat_map(move |b| (b + 1..n as u32).map(move |c| [a, b, c])))
        .collect();
    let lists: Vec<Vec<u32>> = universe.iter().map(|e| e.to_vec()).collect();
    let problem = ThreeProblem {
        avail: suffix_incidence(&lists, n),
        universe,
        cores,
        n,
        smaller,
        floor,
    };
    let incumbent = AtomicUsize::new(0);
    let runner = Runner {
        problem: &problem,
        incumbent: &incumbent,
        nodes,
    };
    let root = ThreeState {
        host: ExpansionHost::empty_dense(n),
        degree: vec![0; n],
    };
    let (value, chosen) = runner
        .run(root)
        .ok_or_else(|| SolveError::Infeasible(format!("no pattern-free 3-graph with Δ >= {floor}")))?;
    if floor == 0 {
        memo.insert(n, value);
    }
    Ok((value, chosen.iter().map(|&i| problem.universe[i]).collect()))
}

/// `ex(n, patterns)`; with `degree_floor`, the maximum over hosts with `Δ >= degree_floor`.
///
/// Graph hosts take unordered bipartite patterns; 3-graph hosts take unordered expansions.
/// All listed patterns are forbidden simultaneously.
pub fn ex_exact(
    n: usize,
    patterns: &[PatternSpec],
    host: HostKind,
    degree_floor: Option<usize>,
) -> Result<SolveResult, SolveError> {
    let floor = degree_floor.unwrap_or(0);
    match host {
        HostKind::Graph => {
            if n > MAX_GRAPH_N {
                return Err(SolveError::CapExceeded(format!(
                    "graph host with n = {n} > {MAX_GRAPH_N}"
                )));
            }
            if floor > n.saturating_sub(1) {
                return Err(SolveError::Infeasible(format!("degree floor {floor} > n - 1")));
            }
            solve_graph(n, patterns, floor)
        }
        HostKind::ThreeGraph => {
            if n > MAX_THREE_GRAPH_N {
                return Err(SolveError::CapExceeded(format!(
                    "3-graph host with n = {n} > {MAX_THREE_GRAPH_N}"
                )));
            }
            let cap = n.saturating_sub(1) * n.saturating_sub(2) / 2;
            if floor > cap {
                return Err(SolveError::Infeasible(format!("degree floor {floor} > C(n-1, 2)")));
            }
            let cores = three_cores(patterns)?;
            let nodes = AtomicU64::new(0);
            let (value, edges) = solve_three(n, &cores, floor, &mut HashMap::new(), &nodes)?;
            Ok(SolveResult {
                value,
                witness: AnyGraph::Three(ThreeGraph::from_sorted(n, edges)),
                nodes_explored: nodes.into_inner(),
            })
        }
    }
}

// ---------------------------------------------------------------------------------------
// Ordered bipartite hosts

struct ZProblem<'a> {
    universe: Vec<[u32; 2]>,
    avail: Vec<Vec<u32>>,
    plan: &'a PatternPlan,
    m: usize,
    cap: u32,
}

impl Problem for ZProblem<'_> {
    type State = Host;

    fn universe_len(&self) -> usize {
        self.universe.len()
    }

    fn try_add(&self, h: &mut Host, e: usize) -> bool {
        let [a, b] = self.universe[e];
        if h.degree(a) >= self.cap {
            return false;
        }
        h.add_edge(a, b);
        if copy_through_edge(h, self.plan, a, b) {
            h.remove_edge(a, b);
            return false;
        }
        true
    }

    fn remove(&self, h: &mut Host, e: usize) {
        let [a, b] = self.universe[e];
        h.remove_edge(a, b);
    }

    fn bound(&self, h: &Host, next: usize, cur: usize) -> Option<usize> {
        let avail = &self.avail[next];
        let spare: u32 = (0..self.m).map(|u| (self.cap - h.degree(u as u32)).min(avail[u])).sum();
        Some(cur + (self.universe.len() - next).min(spare as usize))
    }
}

/// `Z(m, n, F)`: most edges in an `(m, n)` bipartite host with no ordered copy of `F`
/// (first side of `F` in the first part).
pub fn z_exact(m: usize, n: usize, f: &BipartiteGraph) -> Result<SolveResult, SolveError> {
    if m * n > MAX_Z_CELLS {
        return Err(SolveError::CapExceeded(format!("m * n = {} > {MAX_Z_CELLS}", m * n)));
    }
    let nodes = AtomicU64::new(0);
    let empty = || SolveResult {
        value: 0,
        witness: AnyGraph::Bipartite(BipartiteGraph::from_sorted(m, n, Vec::new())),
        nodes_explored: 1,
    };
    if m == 0 || n == 0 {
        return Ok(empty());
    }
    let mut plan = ordered_plan(f, m, n);
    plan.clear_order_constraints();
    let mu = m as u32;
    let universe: Vec<[u32; 2]> = (1..mu).flat_map(|a| (0..n as u32).map(move |b| [a, b + mu])).collect();
    let lists: Vec<Vec<u32>> = universe.iter().map(|e| e.to_vec()).collect();
    let avail = suffix_incidence(&lists, m + n);
    let mut best: Option<(usize, Vec<[u32; 2]>)> = None;
    for delta in (0..=n).rev() {
        if best.as_ref().is_some_and(|(v, _)| m * delta <= *v) {
            break;
        }
        let mut root = Host::new(m + n);
        let star_ok = (0..delta as u32).all(|b| {
            root.add_edge(0, b + mu);
            !copy_through_edge(&root, &plan, 0, b + mu)
        });
        nodes.fetch_add(1, Ordering::Relaxed);
        if !star_ok {
            continue;
        }
        let problem = ZProblem {
            universe: universe.clone(),
            avail: avail.clone(),
            plan: &plan,
            m,
            cap: delta as u32,
        };
        // counts inside a branch exclude the delta pivot edges; only a strict improvement
        // on an earlier (larger) delta matters
        let incumbent = AtomicUsize::new(best.as_ref().map_or(0, |(b, _)| (b + 1).saturating_sub(delta)));
        let runner = Runner {
            problem: &problem,
            incumbent: &incumbent,
            nodes: &nodes,
        };
        if let Some((v, chosen)) = runner.run(root) {
            let value = v + delta;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                let mut edges: Vec<[u32; 2]> = (0..delta as u32).map(|b| [0, b]).collect();
                edges.extend(chosen.iter().map(|&i| [universe[i][0], universe[i][1] - mu]));
                best = Some((value, edges));
            }
        }
    }
    let (value, edges) = best.expect("the empty host is always feasible");
    Ok(SolveResult {
        value,
        witness: AnyGraph::Bipartite(BipartiteGraph::from_sorted(m, n, edges)),
        nodes_explored: nodes.into_inner(),
    })
}

// ---------------------------------------------------------------------------------------
// Semibipartite 3-graphs

struct ZexpProblem<'a> {
    universe: Vec<[u32; 3]>,
    avail: Vec<Vec<u32>>,
    ordered: &'a BipartiteGraph,
    inner: &'a BipartiteGraph,
    m: usize,
    n: usize,
    /// `(Z(m - 1, n), Z(m, n - 1))`.
    smaller: (usize, usize),
}

impl Problem for ZexpProblem<'_> {
    type State = ThreeState;

    fn universe_len(&self) -> usize {
        self.universe.len()
    }

    fn try_add(&self, st: &mut ThreeState, e: usize) -> bool {
        let t = self.universe[e];
        st.host.add_edge(t);
        let hit = expansion_through_edge(&st.host, self.ordered, Placement::Ordered, t).expect("host has parts")
            || expansion_through_edge(&st.host, self.inner, Placement::CoreInV1, t).expect("host has parts");
        if hit {
            st.host.remove_edge(t);
            return false;
        }
        for v in t {
            st.degree[v as usize] += 1;
        }
        true
    }

    fn remove(&self, st: &mut ThreeState, e: usize) {
        let t = self.universe[e];
        st.host.remove_edge(t);
        for v in t {
            st.degree[v as usize] -= 1;
        }
    }

    fn bound(&self, st: &ThreeState, next: usize, cur: usize) -> Option<usize> {
        let avail = &self.avail[next];
        let reach = |v: usize| (st.degree[v] + avail[v]) as usize;
        let first = (0..self.m).map(reach).min().map_or(usize::MAX, |d| self.smaller.0 + d);
        let second = (self.m..self.m + self.n)
            .map(reach)
            .min()
            .map_or(usize::MAX, |d| self.smaller.1 + d);
        Some((cur + self.universe.len() - next).min(first).min(second))
    }
}

fn solve_zexp(
    m: usize,
    n: usize,
    ordered: &BipartiteGraph,
    inner: &BipartiteGraph,
    memo: &mut HashMap<(usize, usize), usize>,
    nodes: &AtomicU64,
) -> (usize, Vec<[u32; 3]>) {
    if m < 2 || n == 0 {
        memo.insert((m, n), 0);
        return (0, Vec::new());
    }
    let smaller = |mm: usize, nn: usize, memo: &mut HashMap<(usize, usize), usize>| match memo.get(&(mm, nn)) {
        Some(&v) => v,
        None => solve_zexp(mm, nn, ordered, inner, memo, nodes).0,
    };
    let below = (smaller(m - 1, n, memo), smaller(m, n - 1, memo));
    let mu = m as u32;
    let universe: Vec<[u32; 3]> = (0..mu)
        .flat_map(|a| (a + 1..mu).flat_map(move |b| (0..n as u32).map(move |w| [a, b, w + mu])))
        .collect();
    let lists: Vec<Vec<u32>> = universe.iter().map(|e| e.to_vec()).collect();
    let problem = ZexpProblem {
        avail: suffix_incidence(&lists, m + n),
        universe,
        ordered,
        inner,
        m,
        n,
        smaller: below,
    };
    let total = m + n;
    let host = ExpansionHost::empty_dense(total)
        .with_parts(Bitset::from_indices(total, 0..m), Bitset::from_indices(total, m..total));
    let incumbent = AtomicUsize::new(0);
    let runner = Runner {
        problem: &problem,
        incumbent: &incumbent,
        nodes,
    };
    let (value, chosen) = runner
        .run(ThreeState {
            host,
            degree: vec![0; total],
        })
        .expect("the empty host is always feasible");
    memo.insert((m, n), value);
    let edges = chosen
        .iter()
        .map(|&i| {
            let [a, b, w] = problem.universe[i];
            [a, b, w - mu]
        })
        .collect();
    (value, edges)
}

/// `Z(m, n, P1+, P2+)` over semibipartite hosts: no ordered copy of `ordered_core+` and no
/// copy of `inner_core+` with its core inside the first part.
pub fn z_expansion_exact(
    m: usize,
    n: usize,
    ordered_core: &BipartiteGraph,
    inner_core: &BipartiteGraph,
) -> Result<SolveResult, SolveError> {
    if m > MAX_ZEXP_SIDE || n > MAX_ZEXP_SIDE {
        return Err(SolveError::CapExceeded(format!(
            "parts ({m}, {n}) exceed {MAX_ZEXP_SIDE} per side"
        )));
    }
    let nodes = AtomicU64::new(0);
    let (value, edges) = solve_zexp(m, n, ordered_core, inner_core, &mut HashMap::new(), &nodes);
    Ok(SolveResult {
        value,
        witness: AnyGraph::Semibipartite(SemibipartiteThreeGraph::from_sorted(m, n, edges)),
        nodes_explored: nodes.into_inner(),
    })
}

/// [`z_expansion_exact`] taking pattern specs: the first must be an `ordered` expansion and
/// the second a `core-in-V1` expansion.
pub fn z_expansion_exact_specs(
    m: usize,
    n: usize,
    p1: &PatternSpec,
    p2: &PatternSpec,
) -> Result<SolveResult, SolveError> {
    let core_of = |p: &PatternSpec, want: Placement| match (&p.kind, p.placement) {
        (PatternKind::Expansion(c), pl) if pl == want => Ok(c.clone()),
        (PatternKind::Expansion(_), pl) => Err(SolveError::Pattern(PatternError::PlacementIncompatible(pl))),
        _ => Err(SolveError::Pattern(PatternError::WrongHost(
            "expected an expansion pattern".into(),
        ))),
    };
    z_expansion_exact(
        m,
        n,
        &core_of(p1, Placement::Ordered)?,
        &core_of(p2, Placement::CoreInV1)?,
    )
}

// ---------------------------------------------------------------------------------------
// Bound formulas

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    /// `ex(n, K_{s,t}) <= (t-1)^{1/s}/2 n^{2-1/s} + (s-1)/2 n`.
    KstEx,
    /// `Z(m, n, K_{s,t}) <= (t-1)^{1/s} m n^{1-1/s} + (s-1) n`.
    KstZ,
    /// `Z(m, n, C_{2k})`, with separate odd and even `k` forms.
    NvCycle,
    /// `Z(m, n, K_{s1,t1}+, K_{s2,t2}+) <= 2f + r`.
    ZExpI,
    /// `Z(m, n, K_{t1,s1}+, K_{s2,t2}+) <= 2f + r`.
    ZExpII,
}

impl BoundId {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "kst_ex" => Self::KstEx,
            "kst_z" => Self::KstZ,
            "nv_cycle" => Self::NvCycle,
            "z_exp_i" => Self::ZExpI,
            "z_exp_ii" => Self::ZExpII,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::KstEx => "kst_ex",
            Self::KstZ => "kst_z",
            Self::NvCycle => "nv_cycle",
            Self::ZExpI => "z_exp_i",
            Self::ZExpII => "z_exp_ii",
        }
    }

    /// Parameter names in the order [`eval_bound`] expects them.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Self::KstEx => &["n", "s", "t"],
            Self::KstZ => &["m", "n", "s", "t"],
            Self::NvCycle => &["m", "n", "k"],
            Self::ZExpI | Self::ZExpII => &["m", "n", "s1", "t1", "s2", "t2"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub bound_id: BoundId,
    pub parameters: Vec<(String, u64)>,
    pub value: f64,
    /// Which case of the formula applied, plus the named intermediate terms.
    pub branch: String,
    pub terms: Vec<(String, f64)>,
}

/// Slack allowed when an exact integer is compared with a bound value.
pub const DOMINANCE_SLACK: f64 = 1e-6;

impl BoundCertificate {
    /// `exact <= value` up to [`DOMINANCE_SLACK`].
    pub fn dominates(&self, exact: usize) -> bool {
        exact as f64 <= self.value + DOMINANCE_SLACK
    }
}

fn pw(base: u64, exp: f64) -> f64 {
    (base as f64).powf(exp)
}

/// Evaluates one of the explicit upper bounds. Every term is a sum of positive products of
/// `powf` values, so the relative error stays within a few ulps (far below `1e-9`).
pub fn eval_bound(id: BoundId, params: &[u64]) -> Result<BoundCertificate, SolveError> {
    let names = id.parameter_names();
    if params.len() != names.len() {
        return Err(SolveError::BadParameters(format!(
            "{} takes ({}), got {} values",
            id.name(),
            names.join(", "),
            params.len()
        )));
    }
    let bad = |msg: &str| Err(SolveError::BadParameters(format!("{}: {msg}", id.name())));
    let parameters = names.iter().zip(params).map(|(k, &v)| (k.to_string(), v)).collect();
    let (value, branch, terms) = match id {
        BoundId::KstEx => {
            let (n, s, t) = (params[0], params[1], params[2]);
            if n < 1 || s < 1 || t < 1 {
                return bad("need n, s, t >= 1");
            }
            let sf = s as f64;
            let a = pw(t - 1, 1.0 / sf) / 2.0 * pw(n, 2.0 - 1.0 / sf);
            let b = (s - 1) as f64 / 2.0 * n as f64;
            (a + b, "ex".to_string(), vec![("main".into(), a), ("linear".into(), b)])
        }
        BoundId::KstZ => {
            let (m, n, s, t) = (params[0], params[1], params[2], params[3]);
            if m < 1 || n < 1 || s < 1 || t < 1 {
                return bad("need m, n, s, t >= 1");
            }
            let sf = s as f64;
            let a = pw(t - 1, 1.0 / sf) * m as f64 * pw(n, 1.0 - 1.0 / sf);
            let b = (s - 1) as f64 * n as f64;
            (a + b, "z".to_string(), vec![("main".into(), a), ("linear".into(), b)])
        }
        BoundId::NvCycle => {
            let (m, n, k) = (params[0], params[1], params[2]);
            if m < 2 || n < 2 || k < 2 {
                return bad("need m, n, k >= 2");
            }
            let kf = k as f64;
            let (main, branch) = if k % 2 == 1 {
                (pw(m, 0.5 + 0.5 / kf) * pw(n, 0.5 + 0.5 / kf), "k odd")
            } else {
                (pw(m, 0.5 + 1.0 / kf) * pw(n, 0.5), "k even")
            };
            let value = (2 * k - 3) as f64 * (main + (m + n) as f64);
            (value, branch.to_string(), vec![("main".into(), main)])
        }
        BoundId::ZExpI | BoundId::ZExpII => {
            let (m, n) = (params[0], params[1]);
            let (s1, t1, s2, t2) = (params[2], params[3], params[4], params[5]);
            if m < 1 || n < 1 {
                return bad("need m, n >= 1");
            }
            if !(t1 >= s1 && s1 >= 2 && t2 >= s2 && s2 >= 2) {
                return bad("need t1 >= s1 >= 2 and t2 >= s2 >= 2");
            }
            let (mf, nf) = (m as f64, n as f64);
            let (s1f, t1f, s2f, t2f) = (s1 as f64, t1 as f64, s2 as f64, t2 as f64);
            let r = (s1f + 1.0) * (t1f + 1.0) * mf * nf + (s2f + 1.0) * (t2f + 1.0) * mf * mf;
            let h = 0.5 * (s2f + t2f) * pw(m, 2.0 - 1.0 / s2f);
            let (f, g, branch) = if id == BoundId::ZExpI {
                let f = (s1f + t1f).powi(2) * (s2f + t2f) * pw(m, 2.0 - 1.0 / s2f) * pw(n, 1.0 - 2.0 / s1f)
                    + 2.0 * t1f * mf * nf
                    + 2.0 * s1f * pw(n, 1.0 + 1.0 / s1f);
                let g = t1f * mf * pw(n, 1.0 - 1.0 / s1f) + s1f * nf;
                (f, g, "ordered K_{s1,t1}+")
            } else {
                let f = 2.0
                    * (s1f + t1f)
                    * (s2f + t2f)
                    * (t1f * pw(m, 2.0 - 1.0 / s1f - 2.0 / s2f + 1.0 / (s1f * s2f)) * nf
                        + s1f * pw(m, 2.0 + 1.0 / s1f - 1.0 / s2f));
                let g = t1f * nf * pw(m, 1.0 - 1.0 / s1f) + s1f * mf;
                (f, g, "ordered K_{t1,s1}+")
            };
            (
                2.0 * f + r,
                branch.to_string(),
                vec![("f".into(), f), ("g".into(), g), ("h".into(), h), ("r".into(), r)],
            )
        }
    };
    Ok(BoundCertificate {
        bound_id: id,
        parameters,
        value,
        branch,
        terms,
    })
}

// ---------------------------------------------------------------------------------------
// Naive oracles (full enumeration), shared with the integration tests

/// `ex(n, F)` by enumerating all `2^{C(n,2)}` graphs; `n <= 7`.
pub fn naive_ex(n: usize, f: &BipartiteGraph, degree_floor: usize) -> Option<usize> {
    assert!(n <= 7, "naive enumeration is limited to n <= 7");
    let pairs: Vec<[u32; 2]> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| [a, b]))
        .collect();
    let plan = PatternPlan::from_bipartite(f);
    let total = 1u64 << pairs.len();
    let chunks = 64u64.min(total);
    par::map((0..chunks).collect(), |c| {
        let mut local = None::<usize>;
        let mut mask = c;
        while mask < total {
            let count = mask.count_ones() as usize;
            if local.is_none_or(|l| count > l) {
                let host = Host::from_pairs(n, (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]));
                let max_deg = (0..n as u32).map(|v| host.degree(v) as usize).max().unwrap_or(0);
                if max_deg >= degree_floor && crate::patterns::embed::find_copy(&host, &plan).is_none() {
                    local = Some(count);
                }
            }
            mask += chunks;
        }
        local
    })
    .into_iter()
    .flatten()
    .max()
}

/// `Z(m, n, F)` by enumerating all `2^{mn}` hosts; `mn <= 20`.
pub fn naive_z(m: usize, n: usize, f: &BipartiteGraph) -> usize {
    assert!(m * n <= 20, "naive enumeration is limited to mn <= 20");
    let cells = m * n;
    let mut best = 0;
    for mask in 0u64..1 << cells {
        let count = mask.count_ones() as usize;
        if count <= best {
            continue;
        }
        let g = BipartiteGraph::from_sorted(
            m,
            n,
            (0..cells)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| [(i / n) as u32, (i % n) as u32])
                .collect(),
        );
        if crate::patterns::find_ordered_bipartite(&g, f).is_none() {
            best = count;
        }
    }
    best
}

/// Witness re-check with the independent containment search.
pub fn witness_is_free(result: &SolveResult, patterns: &[PatternSpec]) -> Result<bool, PatternError> {
    for p in patterns {
        let hit = match &result.witness {
            AnyGraph::Graph(g) => crate::patterns::graph_contains(g, p)?,
            AnyGraph::Bipartite(b) => crate::patterns::bipartite_contains(b, p)?,
            AnyGraph::Three(h) => crate::patterns::three_graph_contains(&ExpansionHost::from_three_graph(h), p)?,
            AnyGraph::Semibipartite(h) => {
                crate::patterns::three_graph_contains(&ExpansionHost::from_semibipartite(h), p)?
            }
        };
        if hit {
            return Ok(false);
        }
    }
    Ok(result.witness.edge_count() == result.value)
}

/// Lexicographically smallest edge set among `sets` of maximum size (test helper).
#[doc(hidden)]
pub fn lex_first_max<T: Ord + Clone>(sets: impl IntoIterator<Item = Vec<T>>) -> Option<Vec<T>> {
    let mut best: Option<Vec<T>> = None;
    for s in sets {
        let better = match &best {
            None => true,
            Some(b) => s.len() > b.len() || (s.len() == b.len() && s < *b),
        };
        if better {
            best = Some(s);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{complete_bipartite, PatternSpec};

    fn c4() -> PatternSpec {
        PatternSpec::parse("C4").unwrap()
    }

    #[test]
    fn c4_values() {
        for (n, v) in [(4, 4), (5, 6), (6, 7), (7, 9)] {
            let r = ex_exact(n, &[c4()], HostKind::Graph, None).unwrap();
            assert_eq!(r.value, v, "ex({n}, C4)");
            assert!(witness_is_free(&r, &[c4()]).unwrap());
        }
    }

    #[test]
    fn naive_agrees_small() {
        let k22 = complete_bipartite(2, 2);
        for n in 1..=5 {
            let r = ex_exact(n, &[c4()], HostKind::Graph, None).unwrap();
            assert_eq!(Some(r.value), naive_ex(n, &k22, 0), "n = {n}");
        }
        assert_eq!(naive_z(2, 2, &k22), 3);
    }

    #[test]
    fn lex_smallest_witness_matches_enumeration() {
        // Oracle: all graphs on 5 vertices, C4-free ones, pick the lex-first maximum set.
        let pairs: Vec<[u32; 2]> = (0..5u32).flat_map(|a| (a + 1..5).map(move |b| [a, b])).collect();
        let k22 = complete_bipartite(2, 2);
        let free_sets = (0u32..1 << 10).filter_map(|mask| {
            let set: Vec<[u32; 2]> = (0..10).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Graph::new(5, set.iter().map(|&[a, b]| (a, b))).unwrap();
            crate::patterns::find_in_graph(&g, &k22).is_none().then_some(set)
        });
        let expected = lex_first_max(free_sets).unwrap();
        let r = ex_exact(5, &[c4()], HostKind::Graph, None).unwrap();
        match r.witness {
            AnyGraph::Graph(g) => assert_eq!(g.edges(), expected.as_slice()),
            _ => panic!("graph witness expected"),
        }
    }

    #[test]
    fn degree_floor() {
        let r = ex_exact(6, &[c4()], HostKind::Graph, Some(5)).unwrap();
        // universal vertex: the other 5 vertices induce a matching
        assert_eq!(r.value, 7);
        assert_eq!(naive_ex(6, &complete_bipartite(2, 2), 5), Some(7));
        assert!(ex_exact(6, &[c4()], HostKind::Graph, Some(6)).is_err());
    }

    #[test]
    fn zarankiewicz_values() {
        let k22 = complete_bipartite(2, 2);
        assert_eq!(z_exact(2, 2, &k22).unwrap().value, 3);
        assert_eq!(z_exact(3, 3, &k22).unwrap().value, 6);
        assert_eq!(z_exact(1, 5, &k22).unwrap().value, 5);
        assert_eq!(naive_z(3, 3, &k22), 6);
        // ordered semantics: K_{1,2} with one vertex on the left is a left vertex of degree 2
        assert_eq!(z_exact(3, 2, &complete_bipartite(1, 2)).unwrap().value, 3);
        assert_eq!(z_exact(3, 2, &complete_bipartite(2, 1)).unwrap().value, 2);
        assert!(z_exact(6, 6, &k22).is_err());
    }

    #[test]
    fn three_graph_small() {
        let single = PatternSpec::parse("K{1,1}+").unwrap();
        assert_eq!(ex_exact(5, &[single], HostKind::ThreeGraph, None).unwrap().value, 0);
        let k22p = PatternSpec::parse("K{2,2}+").unwrap();
        let r = ex_exact(7, std::slice::from_ref(&k22p), HostKind::ThreeGraph, None).unwrap();
        assert_eq!(r.value, 35);
        assert!(ex_exact(9, &[k22p], HostKind::ThreeGraph, None).is_err());
    }

    #[test]
    fn zexp_small() {
        let k11 = complete_bipartite(1, 1);
        let k22 = complete_bipartite(2, 2);
        assert_eq!(z_expansion_exact(3, 3, &k11, &k22).unwrap().value, 0);
        assert_eq!(z_expansion_exact(2, 2, &k22, &k22).unwrap().value, 2);
        assert!(z_expansion_exact(5, 2, &k22, &k22).is_err());
    }

    #[test]
    fn bound_examples() {
        let z = eval_bound(BoundId::KstZ, &[3, 3, 2, 2]).unwrap();
        assert!((z.value - (3.0 * 3f64.sqrt() + 3.0)).abs() < 1e-12);
        let nv = eval_bound(BoundId::NvCycle, &[4, 4, 2]).unwrap();
        assert!((nv.value - 16.0).abs() < 1e-12);
        assert_eq!(nv.branch, "k even");
        let zi = eval_bound(BoundId::ZExpI, &[4, 4, 2, 2, 2, 2]).unwrap();
        assert!((zi.value - 1504.0).abs() < 1e-9);
        assert!(eval_bound(BoundId::ZExpI, &[4, 4, 3, 2, 2, 2]).is_err());
        assert!(eval_bound(BoundId::NvCycle, &[4, 4, 1]).is_err());
        assert!(eval_bound(BoundId::KstEx, &[4, 2]).is_err());
    }
}
