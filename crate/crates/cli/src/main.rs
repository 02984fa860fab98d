//! Command-line front end: generate instances, run the tester, inspect
//! spectra, verify the analysis numerically, and benchmark query scaling.
//!
//! Exit codes: 0 accept / all checks pass, 1 reject / a check failed,
//! 2 usage or input error, 3 a size guard or the run cap was exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clustertest::corpus::{bundled_corpus, verify_entry, CORPUS_GAMMA, CORPUS_WALK_LEN};
use clustertest::experiment::{bench_query_scaling, scaling_csv, Family, ParamsPolicy, WalkLength};
use clustertest::generators::{k_cluster, random_regular, two_cluster, PlantedInstance};
use clustertest::linalg::DENSE_GUARD;
use clustertest::spectral::{cheeger_bounds, laplacian_eigenvalues};
use clustertest::tester::{cluster_test, Constants, Mode, PracticalConfig, TestParams, Verdict};
use clustertest::verifier::{
    verify_far_pair_density, verify_gram_collinearity, verify_interlacing, verify_norm_bound, verify_residual_bound,
    LemmaReport, LemmaVerdict,
};
use clustertest::{graph, Error, Graph};

#[derive(Parser)]
#[command(name = "clustertest", version, about = "Sublinear 2-clusterability tester for bounded-degree graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance: edge list plus a JSON sidecar.
    Gen(GenArgs),
    /// Run the tester on a graph.
    Test(TestArgs),
    /// Print the Laplacian spectrum and Cheeger bounds.
    Spectrum(SpectrumArgs),
    /// Check the analysis numerically; prints one JSON report per line.
    Verify(VerifyArgs),
    /// Measure oracle queries across graph sizes; prints CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    RandomRegular,
    TwoCluster,
    KCluster,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Vertices (random-regular), or vertices per part.
    #[arg(long)]
    n: usize,
    /// Degree (random-regular), or degree inside each part.
    #[arg(long)]
    d: usize,
    /// Number of parts (k-cluster).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Cross edges (per adjacent pair for k-cluster).
    #[arg(long, default_value_t = 1)]
    cross: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge-list output path.
    #[arg(long)]
    graph: PathBuf,
    /// Sidecar path (default: graph path with `.json` appended).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Practical,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the full report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "practical")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    phi: f64,
    #[arg(long, default_value_t = 1e-4)]
    mu: f64,
    /// Rounds R (practical mode).
    #[arg(long, default_value_t = 40)]
    rounds: u64,
    /// Walk length t (practical mode; default ceil(8 ln n / phi^2) capped at 400).
    #[arg(long)]
    walk_len: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    c22: f64,
    #[arg(long, default_value_t = 1.0)]
    c33: f64,
    #[arg(long, default_value_t = 1.0)]
    c35: f64,
    #[arg(long, default_value_t = 1.0)]
    c310: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Print only the smallest `count` eigenvalues.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Gram,
    Residual,
    Norm,
    Aggregate,
    FarPairs,
    Interlacing,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Check this graph instead of the bundled corpus.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Walk length for single-graph checks.
    #[arg(long, default_value_t = CORPUS_WALK_LEN)]
    t: usize,
    /// Conductance bound for the norm check on a single graph (default: Cheeger lower bound).
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long, default_value_t = CORPUS_GAMMA)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    c35: f64,
    /// Random pairs for the gram suite.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the reports here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated ascending sizes.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1024, 4096, 16384])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    seeds: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.15)]
    phi: f64,
    #[arg(long, default_value_t = 1e-4)]
    mu: f64,
    #[arg(long, default_value_t = 40)]
    rounds: u64,
    #[arg(long, default_value_t = 400)]
    walk_len: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the rows as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Test(a) => test(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// The given seed, or a fresh one that is printed so the run can be repeated.
fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn gen(a: GenArgs) -> Outcome {
    let seed = seed_or_fresh(a.seed);
    let (g, planted): (Graph, Option<PlantedInstance>) = match a.family {
        FamilyKind::RandomRegular => (random_regular(a.n, a.d, seed)?, None),
        FamilyKind::TwoCluster => {
            let inst = two_cluster(a.n, a.d, a.cross, seed)?;
            (inst.graph.clone(), Some(inst))
        }
        FamilyKind::KCluster => {
            let inst = k_cluster(a.n, a.k, a.d, a.cross, seed)?;
            (inst.graph.clone(), Some(inst))
        }
    };
    graph::save_graph(&g, &a.graph)?;
    let sidecar_path = a.json.unwrap_or_else(|| {
        let mut p = a.graph.clone().into_os_string();
        p.push(".json");
        PathBuf::from(p)
    });
    let sidecar = match &planted {
        Some(inst) => serde_json::to_value(inst.sidecar())?,
        None => {
            let mut side = serde_json::json!({
                "family": format!("random_regular(n={}, d={})", a.n, a.d),
                "seed": seed,
                "n": g.n(),
                "d": g.d(),
            });
            // Too large for the dense oracle: leave the spectral fields out.
            if g.n() <= DENSE_GUARD {
                let lambdas = laplacian_eigenvalues::<f64>(&g)?;
                let (lower, upper) = cheeger_bounds(&lambdas);
                side["lambda2"] = lambdas.get(1).copied().unwrap_or(0.0).into();
                side["cheegerLower"] = lower.into();
                side["cheegerUpper"] = upper.into();
            }
            side
        }
    };
    write_json(&sidecar_path, &sidecar)?;
    println!("wrote {} (n = {}, d = {}, m = {}, seed = {seed})", a.graph.display(), g.n(), g.d(), g.edge_count());
    println!("wrote {}", sidecar_path.display());
    Ok(true)
}

fn test(a: TestArgs) -> Outcome {
    let g = graph::load_graph(&a.graph)?;
    let seed = seed_or_fresh(a.seed);
    let constants = Constants { c22: a.c22, c33: a.c33, c35: a.c35, c310: a.c310, ..Constants::default() };
    let params = match a.mode {
        ModeArg::Paper => TestParams::paper(g.n(), g.d(), a.eps, a.phi, a.mu, constants)?,
        ModeArg::Practical => {
            let t = a.walk_len.unwrap_or_else(|| WalkLength::Mixing { factor: 8.0, cap: 400 }.resolve(g.n(), a.phi));
            let mut cfg = PracticalConfig::new(a.rounds, t);
            cfg.lambda = a.lambda;
            cfg.xi = a.xi;
            TestParams::practical(g.n(), g.d(), a.eps, a.phi, a.mu, constants, cfg)?
        }
    };
    println!("config: {}", serde_json::to_string(&params)?);
    if params.mode == Mode::Paper {
        println!("query budget R*2N*t = {:e}", params.query_budget());
    }
    let report = cluster_test(&g, &params, seed)?;
    if let Some(path) = &a.json {
        std::fs::write(path, report.to_json()?)?;
    }
    let verdict = match report.verdict {
        Verdict::Accept => "accept",
        Verdict::Reject => "reject",
    };
    println!(
        "{verdict} (reason: {}, rounds: {}, oracle queries: {}, seed: {seed})",
        serde_json::to_value(report.reject_reason)?.as_str().unwrap_or("?"),
        report.rounds_executed,
        report.oracle_queries
    );
    Ok(report.verdict == Verdict::Accept)
}

fn spectrum(a: SpectrumArgs) -> Outcome {
    let g = graph::load_graph(&a.graph)?;
    let lambdas = laplacian_eigenvalues::<f64>(&g)?;
    let (lower, upper) = cheeger_bounds(&lambdas);
    let shown = &lambdas[..a.count.unwrap_or(lambdas.len()).min(lambdas.len())];
    println!("n = {}, d = {}", g.n(), g.d());
    println!("cheeger: {lower:.6} <= phi(G) <= {upper:.6}");
    println!("{:>6} {:>14} {:>14}", "i", "lambda_i", "nu_i");
    for (i, l) in shown.iter().enumerate() {
        println!("{:>6} {:>14.10} {:>14.10}", i + 1, l, 1.0 - l / 2.0);
    }
    if let Some(path) = &a.json {
        let nus: Vec<f64> = lambdas.iter().map(|l| 1.0 - l / 2.0).collect();
        write_json(
            path,
            &serde_json::json!({
                "n": g.n(), "d": g.d(), "lambdas": lambdas, "nus": nus,
                "cheegerLower": lower, "cheegerUpper": upper,
            }),
        )?;
    }
    Ok(true)
}

fn verify(a: VerifyArgs) -> Outcome {
    let wants = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut reports: Vec<LemmaReport> = Vec::new();
    if wants(Suite::Gram) {
        reports.push(verify_gram_collinearity(a.trials, seed_or_fresh(a.seed)));
    }
    match &a.graph {
        Some(path) => {
            let g = graph::load_graph(path)?;
            let name = path.display().to_string();
            if wants(Suite::Residual) {
                reports.push(verify_residual_bound(&g, a.t)?.labeled(name.clone()));
            }
            if wants(Suite::Interlacing) {
                reports.push(verify_interlacing(&g, a.t)?.labeled(name.clone()));
            }
            if wants(Suite::Norm) {
                let phi = match a.phi {
                    Some(phi) => phi,
                    None => cheeger_bounds(&laplacian_eigenvalues::<f64>(&g)?).0,
                };
                reports.push(verify_norm_bound(&g, a.t, a.gamma, phi, a.c35)?.labeled(name));
            }
            if a.suite == Suite::Aggregate || a.suite == Suite::FarPairs {
                return Err(Failure::Usage("aggregate and far-pairs need planted instances; omit --graph".into()));
            }
        }
        None => {
            if wants(Suite::Residual) || wants(Suite::Interlacing) || wants(Suite::Norm) || wants(Suite::Aggregate) {
                for entry in bundled_corpus()? {
                    for r in verify_entry(&entry, a.c35)? {
                        let keep = match r.lemma.as_str() {
                            "residual" => wants(Suite::Residual),
                            "interlacing" => wants(Suite::Interlacing),
                            "norm" => wants(Suite::Norm),
                            "aggregate" => wants(Suite::Aggregate),
                            _ => true,
                        };
                        if keep {
                            reports.push(r);
                        }
                    }
                }
            }
            if wants(Suite::FarPairs) {
                let far = k_cluster(150, 4, 8, 1, 1)?;
                let baseline = two_cluster(300, 8, 4, 1)?;
                let lambda = (far.graph.n() as f64).powf(-(1.0 + Constants::default().slope() * 1e-4));
                reports.push(verify_far_pair_density(&far, &baseline, 400, lambda)?);
            }
        }
    }
    let mut out = std::io::stdout().lock();
    let mut lines = String::new();
    for r in &reports {
        let line = serde_json::to_string(r)?;
        writeln!(out, "{line}")?;
        lines.push_str(&line);
        lines.push('\n');
    }
    if let Some(path) = &a.json {
        std::fs::write(path, lines)?;
    }
    let failed = reports.iter().filter(|r| r.verdict == LemmaVerdict::Fail).count();
    eprintln!("{} reports, {failed} failed", reports.len());
    Ok(failed == 0)
}

fn bench(a: BenchArgs) -> Outcome {
    let policy = ParamsPolicy {
        eps: a.eps,
        phi: Some(a.phi),
        mu: a.mu,
        rounds: a.rounds,
        walk_len: WalkLength::Fixed { t: a.walk_len },
        lambda: None,
        xi: None,
        constants: Constants::default(),
    };
    eprintln!("config: {}", serde_json::to_string(&policy)?);
    let d = a.d;
    let rows = bench_query_scaling(|n| Family::RandomRegular { n, d }, &a.sizes, &policy, a.seeds)?;
    let csv = scaling_csv(&rows);
    match &a.csv {
        Some(path) => std::fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &a.json {
        write_json(path, &rows)?;
    }
    Ok(true)
}
