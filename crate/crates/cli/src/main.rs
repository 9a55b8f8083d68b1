use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperbound_cli::{dispatch, Command, Format, JobSpec, EXIT_MALFORMED};

/// Finite-scale workbench for degenerate hypergraph Turán and Zarankiewicz problems.
#[derive(Parser)]
#[command(name = "hyperbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Input file (repeatable).
    #[arg(short, long = "input", global = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Graph6,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a graph or hypergraph: normgraph, bipartite-normgraph, composed, random-deletion,
    /// random-expansion-free.
    Construct(Target),
    /// Run an invariant suite: pg-properties, norm-map, composed, norm-ratio, kst-free,
    /// expansion-free, pivot-links, ex-vs-z, monotonicity, regression.
    Check(Target),
    /// Exact extremal number: ex, z, zexp.
    Solve(Target),
    /// Boundedness scan (target `boundedness`), written as CSV.
    Scan(Target),
    /// Evaluate an explicit bound: kst-ex, kst-z, nv-cycle, z-exp-i, z-exp-ii.
    Bound(Target),
    /// Merge report CSVs (target `merge`).
    Report(Target),
    /// Run a JSON job spec file.
    Run { job: PathBuf },
}

#[derive(Args)]
struct Target {
    target: String,
    #[command(flatten)]
    params: Params,
}

/// Parameters shared by all commands; each target accepts only the ones it uses.
#[derive(Args, Default)]
struct Params {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    s1: Option<String>,
    #[arg(long)]
    s2: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    t1: Option<String>,
    #[arg(long)]
    t2: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    floor: Option<String>,
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long)]
    vertex: Option<String>,
    /// Forbidden pattern (repeatable), e.g. `C4`, `K{2,3}+ ordered`, `@core.json`.
    #[arg(long)]
    pattern: Vec<String>,
    #[arg(long)]
    pattern2: Option<String>,
}

impl Params {
    fn into_map(self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        let singles = [
            ("q", self.q),
            ("s", self.s),
            ("t", self.t),
            ("p", self.p),
            ("s1", self.s1),
            ("s2", self.s2),
            ("m", self.m),
            ("n", self.n),
            ("r", self.r),
            ("k", self.k),
            ("t1", self.t1),
            ("t2", self.t2),
            ("alpha", self.alpha),
            ("floor", self.floor),
            ("threshold", self.threshold),
            ("vertex", self.vertex),
            ("pattern2", self.pattern2),
        ];
        for (k, v) in singles {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        }
        if !self.pattern.is_empty() {
            map.insert("pattern".into(), self.pattern.join(";"));
        }
        map
    }
}

fn status_line(status: &str, message: &str) -> String {
    serde_json::json!({ "status": status, "exit": EXIT_MALFORMED, "message": message }).to_string()
}

fn job_from_cli(cli: Cli) -> Result<JobSpec, String> {
    let (command, target) = match cli.command {
        Cmd::Run { job } => {
            let text = std::fs::read_to_string(&job).map_err(|e| format!("{}: {e}", job.display()))?;
            return serde_json::from_str(&text).map_err(|e| format!("{}: {e}", job.display()));
        }
        Cmd::Construct(t) => (Command::Construct, t),
        Cmd::Check(t) => (Command::Check, t),
        Cmd::Solve(t) => (Command::Solve, t),
        Cmd::Scan(t) => (Command::Scan, t),
        Cmd::Bound(t) => (Command::Bound, t),
        Cmd::Report(t) => (Command::Report, t),
    };
    Ok(JobSpec {
        command,
        target: target.target,
        params: target.params.into_map(),
        inputs: cli.inputs,
        output: cli.output,
        format: cli.format.map(|f| match f {
            FormatArg::Json => Format::Json,
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Csv => Format::Csv,
        }),
        seed: cli.seed,
    })
}

fn set_jobs(jobs: usize) -> Result<(), String> {
    if jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            eprintln!("{}", status_line("malformed", &e.kind().to_string()));
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    };
    let job = set_jobs(cli.jobs).and_then(|()| job_from_cli(cli));
    let job = match job {
        Ok(job) => job,
        Err(m) => {
            eprintln!("{}", status_line("malformed", &m));
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    };
    let outcome = dispatch(&job);
    if let Some(artifact) = &outcome.artifact {
        match &job.output {
            Some(path) => {
                if let Err(e) = std::fs::write(path, artifact) {
                    eprintln!("{}", status_line("malformed", &format!("{}: {e}", path.display())));
                    return ExitCode::from(EXIT_MALFORMED as u8);
                }
            }
            None => print!("{artifact}"),
        }
    }
    eprintln!("{}", outcome.status);
    ExitCode::from(outcome.exit_code as u8)
}
