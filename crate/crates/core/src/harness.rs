//! Finite-n experiments around boundedness: degree-constrained extremal numbers, the
//! neighbourhood decompositions used in the upper-bound arguments, and small consistency checks.
//!
//! Regime of [`check_claim41`]. Suppose `|V1| < αn/2`. Every vertex of `V2` has degree below
//! `(s+1)(t+1)` in the link of `v`, so
//! `2|L(v)| < (αn/2)(n-1) + (n-1)(s+1)(t+1)`. That is at most `α(n-1)(n-2)`, which
//! contradicts `|L(v)| >= α C(n-1, 2)`, as soon as `αn/2 + (s+1)(t+1) <= α(n-2)`, i.e.
//! `n >= 2(s+1)(t+1)/α + 4`. Below that the claim is reported as out of regime.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{BipartiteGraph, Graph, ThreeGraph};
use crate::io::AnyGraph;
use crate::par;
use crate::patterns::{
    complete_bipartite, expansion_through_edge, find_expansion, ExpansionHost, PatternError, PatternSpec, Placement,
};
use crate::solvers::{ex_exact, z_exact, HostKind, SolveError, SolveResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("vertex {0} is not in the host")]
    InvalidVertex(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

/// `⌈x⌉`, treating values within `1e-9` of an integer as that integer.
fn ceil_tolerant(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn host_kind(patterns: &[PatternSpec]) -> Result<HostKind, HarnessError> {
    let expansions = patterns.iter().filter(|p| p.is_expansion()).count();
    match (expansions, patterns.len()) {
        (0, _) => Ok(HostKind::Graph),
        (e, l) if e == l => Ok(HostKind::ThreeGraph),
        _ => Err(HarnessError::BadParameters(
            "cannot mix graph and expansion patterns".into(),
        )),
    }
}

// ---------------------------------------------------------------------------------------
// Boundedness scan

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub n: usize,
    pub alpha: f64,
    pub degree_floor: usize,
    /// `None` when no pattern-free host reaches the floor.
    pub constrained: Option<SolveResult>,
    pub unconstrained: SolveResult,
    /// `constrained / unconstrained`; `1` when the unconstrained value is `0`, and `0` when
    /// no host reaches the floor.
    pub ratio: Ratio<u64>,
}

impl ScanReport {
    pub fn constrained_max(&self) -> Option<usize> {
        self.constrained.as_ref().map(|r| r.value)
    }

    /// Finite-n proxy for `β`.
    pub fn beta_proxy(&self) -> Ratio<u64> {
        Ratio::from_integer(1) - self.ratio
    }
}

pub fn degree_floor(n: usize, alpha: f64, kind: HostKind) -> usize {
    let n1 = n.saturating_sub(1);
    let full = match kind {
        HostKind::Graph => n1,
        HostKind::ThreeGraph => n1 * n1.saturating_sub(1) / 2,
    };
    ceil_tolerant(alpha * full as f64)
}

pub fn boundedness_scan(patterns: &[PatternSpec], n: usize, alpha: f64) -> Result<ScanReport, HarnessError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(HarnessError::BadParameters(format!("alpha = {alpha} is not in (0, 1]")));
    }
    let kind = host_kind(patterns)?;
    let floor = degree_floor(n, alpha, kind);
    let unconstrained = ex_exact(n, patterns, kind, None)?;
    let constrained = match ex_exact(n, patterns, kind, Some(floor)) {
        Ok(r) => Some(r),
        Err(SolveError::Infeasible(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let ratio = match (&constrained, unconstrained.value) {
        (_, 0) => Ratio::from_integer(1),
        (None, _) => Ratio::from_integer(0),
        (Some(c), u) => Ratio::new(c.value as u64, u as u64),
    };
    Ok(ScanReport {
        n,
        alpha,
        degree_floor: floor,
        constrained,
        unconstrained,
        ratio,
    })
}

// ---------------------------------------------------------------------------------------
// Decompositions

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub pivot: u32,
    pub v1: Vec<u32>,
    pub v2: Vec<u32>,
    pub pivot_degree: usize,
    pub inside_v1: usize,
    /// Graphs: `[|G[V1, V2]|]`. 3-graphs: `[|G1|, |G2|]` (two vertices in `V1`, resp. `V2`).
    pub crossing: Vec<usize>,
    pub inside_v2: usize,
}

impl Decomposition {
    pub fn total(&self) -> usize {
        self.pivot_degree + self.inside_v1 + self.crossing.iter().sum::<usize>() + self.inside_v2
    }
}

/// `V1 = N(v)`, `V2` the rest; edges at `v` count only towards `d(v)`.
pub fn decompose_graph(g: &Graph, v: u32) -> Result<Decomposition, HarnessError> {
    if v as usize >= g.n() {
        return Err(HarnessError::InvalidVertex(v));
    }
    let v1 = g.neighbors(v).to_vec();
    let mut in_v1 = vec![false; g.n()];
    for &u in &v1 {
        in_v1[u as usize] = true;
    }
    let v2: Vec<u32> = (0..g.n() as u32).filter(|&u| u != v && !in_v1[u as usize]).collect();
    let (mut pivot_degree, mut inside_v1, mut crossing, mut inside_v2) = (0, 0, 0, 0);
    for &[a, b] in g.edges() {
        if a == v || b == v {
            pivot_degree += 1;
            continue;
        }
        match (in_v1[a as usize], in_v1[b as usize]) {
            (true, true) => inside_v1 += 1,
            (false, false) => inside_v2 += 1,
            _ => crossing += 1,
        }
    }
    let d = Decomposition {
        pivot: v,
        v1,
        v2,
        pivot_degree,
        inside_v1,
        crossing: vec![crossing],
        inside_v2,
    };
    assert_eq!(d.total(), g.edge_count(), "region counts must cover every edge once");
    Ok(d)
}

/// `V1 = {u != v : d(uv) >= (s+1)(t+1)}`, `V2` the rest; edges through `v` count only in
/// `d(v)`, so `G1` and `G2` are taken in `H - v`.
pub fn decompose_3graph(h: &ThreeGraph, v: u32, s: usize, t: usize) -> Result<Decomposition, HarnessError> {
    if v as usize >= h.n() {
        return Err(HarnessError::InvalidVertex(v));
    }
    if s < 1 || t < 1 {
        return Err(HarnessError::BadParameters("need s, t >= 1".into()));
    }
    let threshold = (s + 1) * (t + 1);
    let mut codeg = vec![0usize; h.n()];
    for e in h.edges().iter().filter(|e| e.contains(&v)) {
        for &u in e {
            if u != v {
                codeg[u as usize] += 1;
            }
        }
    }
    let in_v1: Vec<bool> = (0..h.n()).map(|u| u as u32 != v && codeg[u] >= threshold).collect();
    let v1: Vec<u32> = (0..h.n() as u32).filter(|&u| in_v1[u as usize]).collect();
    let v2: Vec<u32> = (0..h.n() as u32).filter(|&u| u != v && !in_v1[u as usize]).collect();
    let mut counts = [0usize; 4];
    let mut pivot_degree = 0;
    for e in h.edges() {
        if e.contains(&v) {
            pivot_degree += 1;
        } else {
            counts[e.iter().filter(|&&u| in_v1[u as usize]).count()] += 1;
        }
    }
    let d = Decomposition {
        pivot: v,
        v1,
        v2,
        pivot_degree,
        inside_v1: counts[3],
        crossing: vec![counts[2], counts[1]],
        inside_v2: counts[0],
    };
    assert_eq!(d.total(), h.edge_count(), "region counts must cover every edge once");
    Ok(d)
}

// ---------------------------------------------------------------------------------------
// Claims 4.1 and 4.2

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    OutOfRegime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim41Report {
    pub v1_size: usize,
    /// `αn/2`.
    pub required: f64,
    /// `2(s+1)(t+1)/α + 4`; the claim is asserted only for `n` above it.
    pub regime_threshold: f64,
    pub verdict: Verdict,
}

pub fn claim41_threshold(alpha: f64, s: usize, t: usize) -> f64 {
    2.0 * ((s + 1) * (t + 1)) as f64 / alpha + 4.0
}

/// Checks `|V1| >= αn/2` for a pivot of maximum degree at least `α C(n-1, 2)`.
pub fn check_claim41(h: &ThreeGraph, v: u32, alpha: f64, s: usize, t: usize) -> Result<Claim41Report, HarnessError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(HarnessError::BadParameters(format!("alpha = {alpha} is not in (0, 1]")));
    }
    let d = decompose_3graph(h, v, s, t)?;
    let degrees = h.vertex_degrees();
    let max = degrees.iter().copied().max().unwrap_or(0) as usize;
    let n = h.n();
    let floor = degree_floor(n, alpha, HostKind::ThreeGraph);
    if d.pivot_degree != max || d.pivot_degree < floor {
        return Err(HarnessError::Precondition(format!(
            "d(v) = {} must equal Δ = {max} and be at least ⌈α C(n-1, 2)⌉ = {floor}",
            d.pivot_degree
        )));
    }
    let required = alpha * n as f64 / 2.0;
    let regime_threshold = claim41_threshold(alpha, s, t);
    let verdict = if (n as f64) <= regime_threshold {
        Verdict::OutOfRegime
    } else if d.v1.len() as f64 >= required {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(Claim41Report {
        v1_size: d.v1.len(),
        required,
        regime_threshold,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim42Report {
    pub v1: Vec<u32>,
    pub v2: Vec<u32>,
    /// `H[V1]` is `K_{s-1,t}+`-free.
    pub inside_v1_free: bool,
    /// `G1[V1, V2]` is ordered-`K_{t,s-1}+`-free.
    pub g1_free: bool,
    /// `G2[V2, V1]` is ordered-`K_{s-1,t}+`-free.
    pub g2_free: bool,
}

impl Claim42Report {
    pub fn holds(&self) -> bool {
        self.inside_v1_free && self.g1_free && self.g2_free
    }
}

pub fn check_claim42(h: &ThreeGraph, v: u32, s: usize, t: usize) -> Result<Claim42Report, HarnessError> {
    if s < 2 || t < 1 {
        return Err(HarnessError::BadParameters("need s >= 2 and t >= 1".into()));
    }
    if find_expansion(
        &ExpansionHost::from_three_graph(h),
        &complete_bipartite(s, t),
        Placement::Unordered,
    )?
    .is_some()
    {
        return Err(HarnessError::Precondition(format!("host contains K_{{{s},{t}}}+")));
    }
    let d = decompose_3graph(h, v, s, t)?;
    let (rest, _) = h.induced(&(0..h.n() as u32).filter(|&u| u != v).collect::<Vec<_>>());
    // `rest` relabels H - v; map V1/V2 into its labels
    let relabel = |u: u32| if u > v { u - 1 } else { u };
    let v1: Vec<u32> = d.v1.iter().map(|&u| relabel(u)).collect();
    let v2: Vec<u32> = d.v2.iter().map(|&u| relabel(u)).collect();

    let (inner, _) = rest.induced(&v1);
    let inside_v1_free = find_expansion(
        &ExpansionHost::from_three_graph(&inner),
        &complete_bipartite(s - 1, t),
        Placement::Unordered,
    )?
    .is_none();
    let g1 = rest.semibipartite_between(&v1, &v2);
    let g1_free = find_expansion(
        &ExpansionHost::from_semibipartite(&g1),
        &complete_bipartite(t, s - 1),
        Placement::Ordered,
    )?
    .is_none();
    let g2 = rest.semibipartite_between(&v2, &v1);
    let g2_free = find_expansion(
        &ExpansionHost::from_semibipartite(&g2),
        &complete_bipartite(s - 1, t),
        Placement::Ordered,
    )?
    .is_none();
    Ok(Claim42Report {
        v1: d.v1,
        v2: d.v2,
        inside_v1_free,
        g1_free,
        g2_free,
    })
}

/// A vertex of maximum degree (the smallest such label).
pub fn max_degree_vertex(h: &ThreeGraph) -> u32 {
    let deg = h.vertex_degrees();
    let max = deg.iter().copied().max().unwrap_or(0);
    deg.iter().position(|&d| d == max).unwrap_or(0) as u32
}

/// Random maximal `core+`-free 3-graph: triples in a seeded random order, each kept unless it
/// completes a copy.
pub fn random_expansion_free(n: usize, core: &BipartiteGraph, seed: u64) -> ThreeGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<[u32; 3]> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).flat_map(move |b| (b + 1..n as u32).map(move |c| [a, b, c])))
        .collect();
    triples.shuffle(&mut rng);
    let mut host = ExpansionHost::empty_dense(n);
    let mut kept = Vec::new();
    for t in triples {
        host.add_edge(t);
        if expansion_through_edge(&host, core, Placement::Unordered, t).expect("unordered fits any host") {
            host.remove_edge(t);
        } else {
            kept.push(t);
        }
    }
    ThreeGraph::new(n, kept).expect("distinct sorted triples")
}

/// [`check_claim42`] on every host with its maximum-degree pivot, in parallel; order is preserved.
pub fn claim42_sweep(hosts: Vec<ThreeGraph>, s: usize, t: usize) -> Vec<Result<Claim42Report, HarnessError>> {
    par::map(hosts, |h| check_claim42(&h, max_degree_vertex(&h), s, t))
}

// ---------------------------------------------------------------------------------------
// ex versus Z, monotonicity under subsets, critical ratio

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub ex_m: usize,
    pub ex_n: usize,
    /// `(1 - ((n-m-r)/n)^r) ex(n)`.
    pub rhs: f64,
    pub holds: bool,
}

/// `ex(m) <= (1 - ((n-m-r)/n)^r) ex(n)` with `r` the uniformity of the host.
pub fn monotonicity_check(
    patterns: &[PatternSpec],
    m: usize,
    n: usize,
    r: usize,
) -> Result<MonotonicityReport, HarnessError> {
    let kind = host_kind(patterns)?;
    let rank = if kind == HostKind::Graph { 2 } else { 3 };
    if r != rank {
        return Err(HarnessError::BadParameters(format!(
            "r = {r} but the patterns live in {rank}-graphs"
        )));
    }
    if n < m + r {
        return Err(HarnessError::BadParameters(format!(
            "need n >= m + r, got n = {n}, m + r = {}",
            m + r
        )));
    }
    if let Some(p) = patterns.iter().find(|p| !p.is_connected()) {
        return Err(HarnessError::BadParameters(format!("pattern {p} is disconnected")));
    }
    let ex_m = ex_exact(m, patterns, kind, None)?.value;
    let ex_n = ex_exact(n, patterns, kind, None)?.value;
    let rhs = (1.0 - ((n - m - r) as f64 / n as f64).powi(r as i32)) * ex_n as f64;
    Ok(MonotonicityReport {
        ex_m,
        ex_n,
        rhs,
        holds: ex_m as f64 <= rhs + crate::solvers::DOMINANCE_SLACK,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact23Report {
    pub ex_2n: usize,
    pub z_nn: usize,
    pub holds: bool,
}

/// `½ ex(2n, F) <= Z(n, n, F)`.
pub fn fact23_check(f: &BipartiteGraph, n: usize) -> Result<Fact23Report, HarnessError> {
    let spec = PatternSpec::bipartite("F", f.clone());
    let ex_2n = ex_exact(2 * n, &[spec], HostKind::Graph, None)?.value;
    let z_nn = z_exact(n, n, f)?.value;
    Ok(Fact23Report {
        ex_2n,
        z_nn,
        holds: ex_2n <= 2 * z_nn,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalRatio {
    pub n: usize,
    pub z_minus_v: usize,
    pub ex: usize,
    /// `None` when `ex(n, F) = 0`.
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Option<Ratio<u64>>,
    /// Set when `F` is a forest (no cycle, so the cycle-based dichotomy does not apply).
    pub forest: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// `Z(n, n, F - v) / ex(n, F)`, where `v` indexes the flattened vertices of `F` (left side
/// first). Diagnostic only.
pub fn critical_ratio(f: &BipartiteGraph, v: u32, n: usize) -> Result<CriticalRatio, HarnessError> {
    let a = f.left_size() as u32;
    if v >= a + f.right_size() as u32 {
        return Err(HarnessError::InvalidVertex(v));
    }
    let minus = if v < a {
        f.remove_vertex(true, v)
    } else {
        f.remove_vertex(false, v - a)
    };
    let spec = PatternSpec::bipartite("F", f.clone());
    let ex = ex_exact(n, std::slice::from_ref(&spec), HostKind::Graph, None)?.value;
    let z_minus_v = z_exact(n, n, &minus)?.value;
    Ok(CriticalRatio {
        n,
        z_minus_v,
        ex,
        ratio: (ex > 0).then(|| Ratio::new(z_minus_v as u64, ex as u64)),
        forest: spec.is_forest(),
    })
}

// ---------------------------------------------------------------------------------------
// Reports

/// One report line; `witnesses` holds content hashes of the graphs behind the numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub parameters: String,
    pub value: String,
    pub verdict: String,
    pub witnesses: String,
}

impl ReportRow {
    pub fn new(experiment: &str, parameters: String, value: String, verdict: &str, witnesses: &[&AnyGraph]) -> Self {
        Self {
            experiment: experiment.to_string(),
            parameters,
            value,
            verdict: verdict.to_string(),
            witnesses: witnesses.iter().map(|w| w.content_hash()).collect::<Vec<_>>().join(" "),
        }
    }
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    if rows.is_empty() {
        w.write_record(["experiment", "parameters", "value", "verdict", "witnesses"])
            .expect("header");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn rows_to_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

impl ScanReport {
    pub fn to_row(&self, patterns: &[PatternSpec]) -> ReportRow {
        let names: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
        let mut witnesses = vec![&self.unconstrained.witness];
        if let Some(c) = &self.constrained {
            witnesses.push(&c.witness);
        }
        ReportRow::new(
            "boundedness_scan",
            format!(
                "F={};n={};alpha={};floor={}",
                names.join("|"),
                self.n,
                self.alpha,
                self.degree_floor
            ),
            format!(
                "constrained={};unconstrained={};ratio={}",
                self.constrained_max().map_or("none".to_string(), |c| c.to_string()),
                self.unconstrained.value,
                self.ratio
            ),
            if self.constrained_max().is_none_or(|c| c <= self.unconstrained.value) {
                "ok"
            } else {
                "violated"
            },
            &witnesses,
        )
    }
}

// ---------------------------------------------------------------------------------------
// Regression matrix

/// One exact value of the regression table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct RegressionEntry {
    pub quantity: String,
    pub parameters: String,
    pub value: usize,
    pub witness_hash: String,
}

fn entry(quantity: &str, parameters: String, r: &SolveResult) -> RegressionEntry {
    RegressionEntry {
        quantity: quantity.to_string(),
        parameters,
        value: r.value,
        witness_hash: r.witness.content_hash(),
    }
}

/// Every exact value pinned in the repository's regression table, recomputed.
pub fn regression_matrix() -> Result<Vec<RegressionEntry>, HarnessError> {
    let c4 = PatternSpec::complete_bipartite(2, 2);
    let k22 = complete_bipartite(2, 2);
    let mut out = Vec::new();
    for n in 1..=10 {
        out.push(entry(
            "ex",
            format!("n={n};F=C4"),
            &ex_exact(n, std::slice::from_ref(&c4), HostKind::Graph, None)?,
        ));
    }
    out.push(entry(
        "ex",
        "n=8;F=C4;floor=7".into(),
        &ex_exact(8, std::slice::from_ref(&c4), HostKind::Graph, Some(7))?,
    ));
    for m in 1..=5 {
        for n in m..=6 {
            out.push(entry("z", format!("m={m};n={n};F=K22"), &z_exact(m, n, &k22)?));
        }
    }
    let k22p = PatternSpec::kst_expansion(2, 2, Placement::Unordered);
    for n in 3..=7 {
        out.push(entry(
            "ex3",
            format!("n={n};F=K22+"),
            &ex_exact(n, std::slice::from_ref(&k22p), HostKind::ThreeGraph, None)?,
        ));
    }
    for m in 2..=4 {
        for n in 1..=4 {
            let r = crate::solvers::z_expansion_exact(m, n, &k22, &k22)?;
            out.push(entry("zexp", format!("m={m};n={n};P1=K22+;P2=K22+"), &r));
        }
    }
    Ok(out)
}

pub fn regression_to_csv(entries: &[RegressionEntry]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for e in entries {
        w.serialize(e).expect("entries serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn regression_from_csv(text: &str) -> Result<Vec<RegressionEntry>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> PatternSpec {
        PatternSpec::parse("C4").unwrap()
    }

    #[test]
    fn scan_examples() {
        let r = boundedness_scan(&[c4()], 6, 1e-9).unwrap();
        assert_eq!(r.degree_floor, 1);
        assert_eq!(r.ratio, Ratio::from_integer(1));
        let single = PatternSpec::parse("K{1,1}+").unwrap();
        let r = boundedness_scan(&[single], 5, 0.5).unwrap();
        assert_eq!(r.unconstrained.value, 0);
        assert_eq!(r.ratio, Ratio::from_integer(1));
        assert!(boundedness_scan(&[c4()], 6, 0.0).is_err());
    }

    #[test]
    fn graph_decomposition_examples() {
        let star = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        let d = decompose_graph(&star, 0).unwrap();
        assert_eq!((d.pivot_degree, d.inside_v1, d.crossing[0], d.inside_v2), (5, 0, 0, 0));
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        for v in 0..4 {
            let d = decompose_graph(&c4, v).unwrap();
            assert_eq!((d.pivot_degree, d.inside_v1, d.crossing[0], d.inside_v2), (2, 0, 2, 0));
        }
        assert!(decompose_graph(&c4, 4).is_err());
    }

    #[test]
    fn three_graph_decomposition_examples() {
        let k4 = ThreeGraph::complete(4);
        let d = decompose_3graph(&k4, 0, 1, 1).unwrap();
        assert!(d.v1.is_empty());
        assert_eq!(d.pivot_degree, 3);
        assert_eq!(d.inside_v2, 1);
    }

    #[test]
    fn claim41_rules() {
        // v = 0 joined to every pair of 1..n: all codegrees are n - 2
        let n = 16u32;
        let edges: Vec<[u32; 3]> = (1..n).flat_map(|a| (a + 1..n).map(move |b| [0, a, b])).collect();
        let h = ThreeGraph::new(n as usize, edges).unwrap();
        let r = check_claim41(&h, 0, 0.9, 1, 1).unwrap();
        assert_eq!(r.v1_size, 15);
        assert_eq!(r.verdict, Verdict::Holds);
        let small = ThreeGraph::complete(6);
        assert_eq!(
            check_claim41(&small, 0, 1.0, 1, 1).unwrap().verdict,
            Verdict::OutOfRegime
        );
        assert!(check_claim41(&h, 1, 0.9, 1, 1).is_err());
    }

    #[test]
    fn claim42_examples() {
        let single = ThreeGraph::new(3, [[0, 1, 2]]).unwrap();
        assert!(check_claim42(&single, 0, 2, 2).unwrap().holds());
        // a K_{2,2}+ itself violates the precondition
        let exp = ThreeGraph::new(8, [[0, 2, 4], [0, 3, 5], [1, 2, 6], [1, 3, 7]]).unwrap();
        assert!(matches!(
            check_claim42(&exp, 0, 2, 2),
            Err(HarnessError::Precondition(_))
        ));
    }

    #[test]
    fn small_checks() {
        let k22 = complete_bipartite(2, 2);
        let f = fact23_check(&k22, 2).unwrap();
        assert_eq!((f.ex_2n, f.z_nn, f.holds), (4, 3, true));
        let f = fact23_check(&complete_bipartite(1, 1), 1).unwrap();
        assert_eq!((f.ex_2n, f.z_nn, f.holds), (0, 0, true));
        let m = monotonicity_check(&[c4()], 4, 7, 2).unwrap();
        assert!((m.rhs - 9.0 * (1.0 - 1.0 / 49.0)).abs() < 1e-12 && m.holds);
        assert!(monotonicity_check(&[c4()], 4, 5, 2).is_err());
        let c = critical_ratio(&k22, 0, 3).unwrap();
        assert_eq!((c.z_minus_v, c.ex), (3, 3));
        assert!(!c.forest);
        let p = critical_ratio(&complete_bipartite(1, 2), 1, 2).unwrap();
        assert!(p.forest);
    }
}
