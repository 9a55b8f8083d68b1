//! Job specs and their dispatch. `main.rs` only turns argv into a [`JobSpec`].
//!
//! Every job is a `(command, target)` pair plus a flat string map of parameters. Parameters
//! not used by the target are rejected, so a spec either means exactly one thing or fails with
//! exit code 2. The same spec and seed always produce the same bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hyperbound::constructions::{
    bipartite_norm_graph, composed_construction, factorial, find_kst, find_ordered_kst, low_codegree_counts,
    norm_graph, norm_ratio_count_with, random_deletion_lower_bound, ConstructionError, NormGraphParams,
};
use hyperbound::ff::NormMap;
use hyperbound::harness::{
    boundedness_scan, check_claim42, fact23_check, max_degree_vertex, monotonicity_check, random_expansion_free,
    regression_from_csv, regression_matrix, rows_to_csv, HarnessError,
};
use hyperbound::io::{to_graph6, AnyGraph, IoError};
use hyperbound::patterns::{find_expansion, ExpansionHost, PatternError, PatternSpec, Placement};
use hyperbound::solvers::{
    eval_bound, ex_exact, z_exact, z_expansion_exact_specs, BoundId, HostKind, SolveError, SolveResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Construct,
    Check,
    Solve,
    Scan,
    Bound,
    Report,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Graph6,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub target: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub seed: u64,
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug)]
pub enum JobError {
    Malformed(String),
    Violation(String),
    CapExceeded(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Malformed(_) => EXIT_MALFORMED,
            JobError::Violation(_) => EXIT_VIOLATION,
            JobError::CapExceeded(_) => EXIT_CAP,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            JobError::Malformed(_) => "malformed",
            JobError::Violation(_) => "violation",
            JobError::CapExceeded(_) => "cap_exceeded",
        }
    }

    fn message(&self) -> &str {
        match self {
            JobError::Malformed(m) | JobError::Violation(m) | JobError::CapExceeded(m) => m,
        }
    }
}

fn malformed(msg: impl fmt::Display) -> JobError {
    JobError::Malformed(msg.to_string())
}

impl From<SolveError> for JobError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::CapExceeded(m) => JobError::CapExceeded(m),
            // a well-formed question whose constraint set is empty
            SolveError::Infeasible(m) => JobError::Violation(format!("infeasible: {m}")),
            e => malformed(e),
        }
    }
}

impl From<HarnessError> for JobError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Solve(e) => e.into(),
            HarnessError::Precondition(m) => JobError::Violation(format!("precondition failed: {m}")),
            e => malformed(e),
        }
    }
}

impl From<PatternError> for JobError {
    fn from(e: PatternError) -> Self {
        malformed(e)
    }
}

impl From<ConstructionError> for JobError {
    fn from(e: ConstructionError) -> Self {
        malformed(e)
    }
}

impl From<IoError> for JobError {
    fn from(e: IoError) -> Self {
        malformed(e)
    }
}

/// What a finished job produced. `artifact` goes to the output path, or stdout without one.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub artifact: Option<String>,
    /// Single-line JSON status for stderr.
    pub status: String,
}

/// Typed view over the parameter map that records which keys were read.
struct Params<'a> {
    map: &'a BTreeMap<String, String>,
    allowed: &'static [&'static str],
}

impl<'a> Params<'a> {
    fn new(spec: &'a JobSpec, allowed: &'static [&'static str]) -> Result<Self, JobError> {
        if let Some(k) = spec.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(malformed(format!(
                "unknown parameter {k:?} for {} {} (expected one of {allowed:?})",
                spec.command, spec.target
            )));
        }
        Ok(Self {
            map: &spec.params,
            allowed,
        })
    }

    fn raw(&self, key: &str) -> Option<&'a str> {
        debug_assert!(self.allowed.contains(&key));
        self.map.get(key).map(String::as_str)
    }

    fn opt<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, JobError> {
        self.raw(key)
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| malformed(format!("parameter {key} = {v:?} is not valid")))
            })
            .transpose()
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T, JobError> {
        self.opt(key)?
            .ok_or_else(|| malformed(format!("missing parameter {key}")))
    }

    /// `;`-separated pattern list.
    fn patterns(&self, key: &str) -> Result<Vec<PatternSpec>, JobError> {
        let raw = self
            .raw(key)
            .ok_or_else(|| malformed(format!("missing parameter {key}")))?;
        raw.split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| PatternSpec::parse(p).map_err(JobError::from))
            .collect()
    }

    fn pattern(&self, key: &str) -> Result<PatternSpec, JobError> {
        let mut all = self.patterns(key)?;
        if all.len() != 1 {
            return Err(malformed(format!("{key} takes exactly one pattern")));
        }
        Ok(all.remove(0))
    }
}

fn host_kind(patterns: &[PatternSpec]) -> Result<HostKind, JobError> {
    match patterns.iter().filter(|p| p.is_expansion()).count() {
        0 => Ok(HostKind::Graph),
        k if k == patterns.len() => Ok(HostKind::ThreeGraph),
        _ => Err(malformed("cannot mix graph and expansion patterns")),
    }
}

fn single_input(spec: &JobSpec) -> Result<&PathBuf, JobError> {
    match spec.inputs.as_slice() {
        [p] => Ok(p),
        _ => Err(malformed(format!(
            "{} {} takes exactly one --input",
            spec.command, spec.target
        ))),
    }
}

fn no_inputs(spec: &JobSpec) -> Result<(), JobError> {
    if spec.inputs.is_empty() {
        Ok(())
    } else {
        Err(malformed(format!("{} {} takes no --input", spec.command, spec.target)))
    }
}

fn to_json_value(s: &str) -> Value {
    serde_json::from_str(s).expect("library JSON is valid")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

struct Done {
    artifact: String,
    summary: Value,
    /// Set when a check ran to completion and found its invariant broken.
    violation: Option<String>,
}

impl Done {
    fn ok(artifact: String, summary: Value) -> Self {
        Self {
            artifact,
            summary,
            violation: None,
        }
    }
}

/// Runs a job. Never panics on bad input; every failure maps to an exit code.
pub fn dispatch(spec: &JobSpec) -> Outcome {
    let result = match spec.command {
        Command::Construct => construct(spec),
        Command::Check => check(spec),
        Command::Solve => solve(spec),
        Command::Scan => scan(spec),
        Command::Bound => bound(spec),
        Command::Report => report(spec),
    };
    let base = json!({ "command": spec.command.to_string(), "target": spec.target, "seed": spec.seed });
    let finish = |mut status: Value, code: i32, artifact: Option<String>| {
        let obj = status.as_object_mut().unwrap();
        obj.insert("exit".into(), code.into());
        for (k, v) in base.as_object().unwrap() {
            obj.insert(k.clone(), v.clone());
        }
        Outcome {
            exit_code: code,
            artifact,
            status: serde_json::to_string(&status).unwrap(),
        }
    };
    match result {
        Ok(Done {
            artifact,
            summary,
            violation: None,
        }) => finish(json!({ "status": "ok", "summary": summary }), EXIT_OK, Some(artifact)),
        // failed checks still emit their report
        Ok(Done {
            artifact,
            summary,
            violation: Some(m),
        }) => finish(
            json!({ "status": "violation", "message": m, "summary": summary }),
            EXIT_VIOLATION,
            Some(artifact),
        ),
        Err(e) => finish(
            json!({ "status": e.status(), "message": e.message() }),
            e.exit_code(),
            None,
        ),
    }
}

fn graph_artifact(spec: &JobSpec, g: &AnyGraph) -> Result<String, JobError> {
    match (spec.format.unwrap_or_default(), g) {
        (Format::Json, g) => Ok(format!("{}\n", g.to_json())),
        (Format::Graph6, AnyGraph::Graph(g)) => Ok(format!("{}\n", to_graph6(g))),
        (Format::Graph6, other) => Err(malformed(format!("graph6 encodes graphs only, not {}", other.kind()))),
        (Format::Csv, _) => Err(malformed("graphs are written as json or graph6")),
    }
}

fn require_format(spec: &JobSpec, allowed: &[Format]) -> Result<(), JobError> {
    match spec.format {
        Some(f) if !allowed.contains(&f) => Err(malformed(format!("format {f:?} is not available here"))),
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------------------
// construct

fn construct(spec: &JobSpec) -> Result<Done, JobError> {
    no_inputs(spec)?;
    let g: AnyGraph = match spec.target.as_str() {
        "normgraph" => {
            let p = Params::new(spec, &["q", "s"])?;
            norm_graph(p.get("q")?, p.get("s")?)?.into()
        }
        "bipartite-normgraph" => {
            let p = Params::new(spec, &["q", "s"])?;
            bipartite_norm_graph(p.get("q")?, p.get("s")?)?.into()
        }
        "composed" => {
            let p = Params::new(spec, &["p", "s1", "s2"])?;
            composed_construction(p.get("p")?, p.get("s1")?, p.get("s2")?)?
                .hypergraph
                .into()
        }
        "random-deletion" => {
            let p = Params::new(spec, &["n", "pattern"])?;
            let f = p.pattern("pattern")?;
            if f.is_expansion() {
                return Err(malformed("random-deletion takes a graph pattern"));
            }
            random_deletion_lower_bound(p.get("n")?, &f.core(), spec.seed)?.into()
        }
        "random-expansion-free" => {
            let p = Params::new(spec, &["n", "pattern"])?;
            let f = p.pattern("pattern")?;
            if !f.is_expansion() {
                return Err(malformed(
                    "random-expansion-free takes an expansion pattern such as K{2,2}+",
                ));
            }
            random_expansion_free(p.get("n")?, &f.core(), spec.seed).into()
        }
        t => return Err(malformed(format!("unknown construction {t:?}"))),
    };
    Ok(Done::ok(
        graph_artifact(spec, &g)?,
        json!({ "kind": g.kind(), "edges": g.edge_count(), "hash": g.content_hash() }),
    ))
}

// ---------------------------------------------------------------------------------------
// check

/// Collects named sub-checks; any failure turns the whole suite into a violation.
#[derive(Default)]
struct Suite {
    checks: Vec<Value>,
    failed: Vec<String>,
}

impl Suite {
    fn record(&mut self, name: &str, holds: bool, detail: Value) {
        if !holds {
            self.failed.push(name.to_string());
        }
        self.checks
            .push(json!({ "check": name, "holds": holds, "detail": detail }));
    }

    fn finish(self, spec: &JobSpec) -> Result<Done, JobError> {
        let holds = self.failed.is_empty();
        let count = self.checks.len();
        let report = json!({ "suite": spec.target, "holds": holds, "checks": self.checks });
        Ok(Done {
            artifact: pretty(&report),
            summary: json!({ "holds": holds, "checks": count }),
            violation: (!holds).then(|| format!("failed: {}", self.failed.join(", "))),
        })
    }
}

fn check(spec: &JobSpec) -> Result<Done, JobError> {
    require_format(spec, &[Format::Json])?;
    let mut suite = Suite::default();
    match spec.target.as_str() {
        "pg-properties" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["q", "s"])?;
            let (q, s): (u32, u32) = (p.get("q")?, p.get("s")?);
            let params = NormGraphParams::new(q, s)?;
            let g = norm_graph(q, s)?;
            let qs1 = (q as usize).pow(s - 1);
            suite.record("vertex-count", g.n() == params.vertex_count(), json!(g.n()));
            let bad: Vec<u32> = (0..g.n() as u32)
                .filter(|&v| ![qs1 - 1, qs1 - 2].contains(&g.degree(v)))
                .collect();
            suite.record(
                "degrees",
                bad.is_empty(),
                json!({ "allowed": [qs1 - 1, qs1 - 2], "bad_vertices": bad }),
            );
            let t = factorial(s - 1) + 1;
            let found = find_kst(&g, s as usize, t);
            suite.record(&format!("K{{{s},{t}}}-free"), found.is_none(), json!(found));
        }
        "norm-map" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["q", "s"])?;
            let norm = NormMap::new(p.get("q")?, p.get("s")?).map_err(malformed)?;
            let (big, small) = (norm.big_field(), norm.small_field());
            let counter = (0..big.order())
                .flat_map(|a| (0..big.order()).map(move |b| (a, b)))
                .find(|&(a, b)| norm.norm_index(big.mul(a, b)) != small.mul(norm.norm_index(a), norm.norm_index(b)));
            suite.record("multiplicative", counter.is_none(), json!(counter));
            let mut fibre = vec![0u64; small.order() as usize];
            for x in 1..big.order() {
                fibre[norm.norm_index(x) as usize] += 1;
            }
            let want = (big.order() as u64 - 1) / (small.order() as u64 - 1);
            suite.record(
                "fibres",
                fibre[0] == 0 && fibre[1..].iter().all(|&c| c == want),
                json!(fibre),
            );
        }
        "composed" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["p", "s1", "s2"])?;
            let (s1, s2): (usize, usize) = (p.get("s1")?, p.get("s2")?);
            let c = composed_construction(p.get("p")?, s1 as u32, s2 as u32)?;
            let layered =
                c.hypergraph.edges().iter().all(|&[a, b, w]| {
                    a < b && c.inner.has_edge(a, b) && c.cross.has_edge(a, w) && c.cross.has_edge(b, w)
                });
            suite.record("semibipartite-layers", layered, json!(c.hypergraph.edge_count()));
            let t1 = factorial(s1 as u32 - 1) + 1;
            let inner = find_kst(&c.inner, s1, t1);
            suite.record(&format!("V1-layer K{{{s1},{t1}}}-free"), inner.is_none(), json!(inner));
            let t2 = factorial(s2 as u32 - 1) + 1;
            let cross = find_ordered_kst(&c.cross, s2, t2);
            suite.record(
                &format!("bipartite-layer ordered K{{{s2},{t2}}}-free"),
                cross.is_none(),
                json!(cross),
            );
            let density = c.hypergraph.edge_count() as f64 / (c.n * c.n) as f64;
            suite.record("density", true, json!({ "n": c.n, "edges_over_n2": density }));
        }
        "norm-ratio" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["q", "s", "threshold"])?;
            let (q, s): (u32, u32) = (p.get("q")?, p.get("s")?);
            let norm = NormMap::new(q, s).map_err(malformed)?;
            let order = norm.big_field().order();
            let mut min = u64::MAX;
            for xb in 0..order {
                for yb in (0..order).filter(|&y| y != xb) {
                    for x in 1..q {
                        min = min.min(norm_ratio_count_with(&norm, xb, yb, x)?);
                    }
                }
            }
            let base = (q as usize).pow(s.saturating_sub(2));
            suite.record(
                "norm-ratio-count",
                min as usize >= base,
                json!({ "min": min, "required": base }),
            );
            // finite threshold: the two solutions landing on the pair itself are excluded
            let threshold = p.opt("threshold")?.unwrap_or(base.saturating_sub(2));
            let worst = low_codegree_counts(&norm_graph(q, s)?, threshold)
                .into_iter()
                .max()
                .unwrap_or(0);
            suite.record(
                "low-codegree",
                worst < q as usize,
                json!({ "threshold": threshold, "worst": worst, "allowed": q - 1 }),
            );
        }
        "kst-free" => {
            let p = Params::new(spec, &["s", "t"])?;
            let (s, t) = (p.get("s")?, p.get("t")?);
            match AnyGraph::read(single_input(spec)?)? {
                AnyGraph::Graph(g) => {
                    let w = find_kst(&g, s, t);
                    suite.record(&format!("K{{{s},{t}}}-free"), w.is_none(), json!(w));
                }
                AnyGraph::Bipartite(g) => {
                    let w = find_ordered_kst(&g, s, t);
                    suite.record(&format!("ordered K{{{s},{t}}}-free"), w.is_none(), json!(w));
                }
                other => return Err(malformed(format!("kst-free needs a graph, got {}", other.kind()))),
            }
        }
        "expansion-free" => {
            let p = Params::new(spec, &["pattern"])?;
            let f = p.pattern("pattern")?;
            if !f.is_expansion() {
                return Err(malformed("expansion-free takes an expansion pattern"));
            }
            let host = match AnyGraph::read(single_input(spec)?)? {
                AnyGraph::Three(h) => ExpansionHost::from_three_graph(&h),
                AnyGraph::Semibipartite(h) => ExpansionHost::from_semibipartite(&h),
                other => {
                    return Err(malformed(format!(
                        "expansion-free needs a 3-graph, got {}",
                        other.kind()
                    )))
                }
            };
            let w = find_expansion(&host, &f.core(), f.placement)?;
            suite.record(&format!("{f}-free"), w.is_none(), json!(w.map(|w| w.triples())));
        }
        "pivot-links" => {
            let p = Params::new(spec, &["s", "t", "vertex"])?;
            let h = match AnyGraph::read(single_input(spec)?)? {
                AnyGraph::Three(h) => h,
                AnyGraph::Semibipartite(h) => h.to_three_graph(),
                other => return Err(malformed(format!("pivot-links needs a 3-graph, got {}", other.kind()))),
            };
            let v = p.opt("vertex")?.unwrap_or_else(|| max_degree_vertex(&h));
            let r = check_claim42(&h, v, p.get("s")?, p.get("t")?)?;
            suite.record("link-freeness", r.holds(), serde_json::to_value(&r).unwrap());
        }
        "ex-vs-z" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["pattern", "n"])?;
            let f = p.pattern("pattern")?;
            if f.is_expansion() {
                return Err(malformed("ex-vs-z takes a graph pattern"));
            }
            let r = fact23_check(&f.core(), p.get("n")?)?;
            suite.record("half-ex-at-most-z", r.holds, serde_json::to_value(&r).unwrap());
        }
        "monotonicity" => {
            no_inputs(spec)?;
            let p = Params::new(spec, &["pattern", "m", "n", "r"])?;
            let patterns = p.patterns("pattern")?;
            let rank = if host_kind(&patterns)? == HostKind::Graph { 2 } else { 3 };
            let r = monotonicity_check(&patterns, p.get("m")?, p.get("n")?, p.opt("r")?.unwrap_or(rank))?;
            suite.record("monotone-under-subsets", r.holds, serde_json::to_value(&r).unwrap());
        }
        "regression" => {
            Params::new(spec, &[])?;
            let path = single_input(spec)?;
            let text = std::fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
            let stored = regression_from_csv(&text).map_err(malformed)?;
            let fresh = regression_matrix()?;
            let diff: Vec<String> = stored
                .iter()
                .zip(&fresh)
                .filter(|(a, b)| a != b)
                .map(|(a, _)| format!("{} {}", a.quantity, a.parameters))
                .collect();
            suite.record(
                "row-count",
                stored.len() == fresh.len(),
                json!([stored.len(), fresh.len()]),
            );
            suite.record("rows-match", diff.is_empty(), json!(diff));
        }
        t => return Err(malformed(format!("unknown check suite {t:?}"))),
    }
    suite.finish(spec)
}

// ---------------------------------------------------------------------------------------
// solve

fn result_json(r: &SolveResult) -> Value {
    json!({
        "value": r.value,
        "nodes_explored": r.nodes_explored,
        "witness_hash": r.witness.content_hash(),
        "witness": to_json_value(&r.witness.to_json()),
    })
}

fn solve(spec: &JobSpec) -> Result<Done, JobError> {
    no_inputs(spec)?;
    require_format(spec, &[Format::Json])?;
    let (r, params) = match spec.target.as_str() {
        "ex" => {
            let p = Params::new(spec, &["n", "pattern", "floor"])?;
            let patterns = p.patterns("pattern")?;
            let (n, floor) = (p.get("n")?, p.opt("floor")?);
            let r = ex_exact(n, &patterns, host_kind(&patterns)?, floor)?;
            (
                r,
                json!({ "n": n, "patterns": patterns.iter().map(|f| f.to_string()).collect::<Vec<_>>(), "floor": floor }),
            )
        }
        "z" => {
            let p = Params::new(spec, &["m", "n", "pattern"])?;
            let f = p.pattern("pattern")?;
            if f.is_expansion() {
                return Err(malformed("z takes a bipartite pattern; use zexp for expansions"));
            }
            let (m, n) = (p.get("m")?, p.get("n")?);
            (
                z_exact(m, n, &f.core())?,
                json!({ "m": m, "n": n, "pattern": f.to_string() }),
            )
        }
        "zexp" => {
            let p = Params::new(spec, &["m", "n", "pattern", "pattern2"])?;
            let mut p1 = p.pattern("pattern")?;
            let mut p2 = p.pattern("pattern2")?;
            // bare `K{s,t}+` means the placement each slot requires
            if p1.placement == Placement::Unordered {
                p1 = p1.with_placement(Placement::Ordered);
            }
            if p2.placement == Placement::Unordered {
                p2 = p2.with_placement(Placement::CoreInV1);
            }
            let (m, n) = (p.get("m")?, p.get("n")?);
            let r = z_expansion_exact_specs(m, n, &p1, &p2)?;
            (
                r,
                json!({ "m": m, "n": n, "pattern": p1.to_string(), "pattern2": p2.to_string() }),
            )
        }
        t => return Err(malformed(format!("unknown quantity {t:?}"))),
    };
    let mut out = result_json(&r);
    out.as_object_mut()
        .unwrap()
        .insert("quantity".into(), spec.target.clone().into());
    out.as_object_mut().unwrap().insert("parameters".into(), params);
    Ok(Done::ok(
        pretty(&out),
        json!({ "value": r.value, "witness_hash": r.witness.content_hash() }),
    ))
}

// ---------------------------------------------------------------------------------------
// scan, bound, report

fn scan(spec: &JobSpec) -> Result<Done, JobError> {
    no_inputs(spec)?;
    require_format(spec, &[Format::Csv])?;
    if spec.target != "boundedness" {
        return Err(malformed(format!("unknown scan {:?}", spec.target)));
    }
    let p = Params::new(spec, &["pattern", "n", "alpha"])?;
    let patterns = p.patterns("pattern")?;
    let alpha: f64 = p.get("alpha")?;
    let n_values: Vec<usize> = p
        .raw("n")
        .ok_or_else(|| malformed("missing parameter n"))?
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| malformed(format!("n = {v:?} is not valid")))
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    for n in n_values {
        let r = boundedness_scan(&patterns, n, alpha)?;
        ratios.push(r.ratio.to_string());
        rows.push(r.to_row(&patterns));
    }
    Ok(Done::ok(
        rows_to_csv(&rows),
        json!({ "rows": rows.len(), "ratios": ratios }),
    ))
}

fn bound(spec: &JobSpec) -> Result<Done, JobError> {
    no_inputs(spec)?;
    require_format(spec, &[Format::Json])?;
    let id = BoundId::parse(&spec.target.replace('-', "_"))
        .ok_or_else(|| malformed(format!("unknown bound {:?}", spec.target)))?;
    let p = Params::new(spec, id.parameter_names())?;
    let values: Vec<u64> = id
        .parameter_names()
        .iter()
        .map(|k| p.get(k))
        .collect::<Result<_, _>>()?;
    let cert = eval_bound(id, &values)?;
    let value = serde_json::to_value(&cert).unwrap();
    Ok(Done::ok(
        pretty(&value),
        json!({ "value": cert.value, "branch": cert.branch }),
    ))
}

/// Concatenates CSV tables with identical headers, sorted by row and deduplicated.
fn report(spec: &JobSpec) -> Result<Done, JobError> {
    require_format(spec, &[Format::Csv])?;
    if spec.target != "merge" {
        return Err(malformed(format!("unknown report {:?}", spec.target)));
    }
    Params::new(spec, &[])?;
    if spec.inputs.is_empty() {
        return Err(malformed("report merge needs at least one --input"));
    }
    let mut header: Option<csv::StringRecord> = None;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for path in &spec.inputs {
        let mut r = csv::Reader::from_path(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
        let h = r.headers().map_err(malformed)?.clone();
        match &header {
            Some(first) if first != &h => {
                return Err(malformed(format!(
                    "{} has header {:?}, expected {:?}",
                    path.display(),
                    h,
                    first
                )))
            }
            Some(_) => {}
            None => header = Some(h),
        }
        for rec in r.records() {
            rows.push(rec.map_err(malformed)?.iter().map(str::to_string).collect());
        }
    }
    rows.sort();
    rows.dedup();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.as_ref().unwrap()).map_err(malformed)?;
    for row in &rows {
        w.write_record(row).map_err(malformed)?;
    }
    let artifact = String::from_utf8(w.into_inner().map_err(malformed)?).map_err(malformed)?;
    Ok(Done::ok(
        artifact,
        json!({ "inputs": spec.inputs.len(), "rows": rows.len() }),
    ))
}
