//! Seeded experiments: generate an instance per seed, run the tester,
//! aggregate verdicts and query counts.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{k_cluster, random_regular, two_cluster};
use crate::graph::Graph;
use crate::spectral::{cheeger_bounds, laplacian_eigenvalues};
use crate::tester::{cluster_test, Constants, PracticalConfig, RejectReason, TestParams, Verdict};
use crate::walks::splitmix64;

/// A family of generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    TwoCluster { n_per_side: usize, d_inner: usize, cross: usize },
    KCluster { n_per_part: usize, k: usize, d_inner: usize, cross: usize },
    RandomRegular { n: usize, d: usize },
}

impl Family {
    pub fn describe(&self) -> String {
        match *self {
            Family::TwoCluster { n_per_side, d_inner, cross } => {
                format!("two_cluster(n_per_side={n_per_side}, d_inner={d_inner}, cross={cross})")
            }
            Family::KCluster { n_per_part, k, d_inner, cross } => {
                format!("k_cluster(k={k}, n_per_part={n_per_part}, d_inner={d_inner}, cross={cross})")
            }
            Family::RandomRegular { n, d } => format!("random_regular(n={n}, d={d})"),
        }
    }

    /// The instance for `seed` and its certified conductance bound, if one
    /// is computed (planted families always certify; random regular graphs
    /// only when `certify` is set).
    pub fn generate(&self, seed: u64, certify: bool) -> Result<(Graph, Option<f64>)> {
        match *self {
            Family::TwoCluster { n_per_side, d_inner, cross } => {
                let inst = two_cluster(n_per_side, d_inner, cross, seed)?;
                Ok((inst.graph, Some(inst.certificates.phi_hat)))
            }
            Family::KCluster { n_per_part, k, d_inner, cross } => {
                let inst = k_cluster(n_per_part, k, d_inner, cross, seed)?;
                Ok((inst.graph, Some(inst.certificates.phi_hat)))
            }
            Family::RandomRegular { n, d } => {
                let g = random_regular(n, d, seed)?;
                let phi = if certify { Some(cheeger_bounds(&laplacian_eigenvalues::<f64>(&g)?).0) } else { None };
                Ok((g, phi))
            }
        }
    }
}

/// How walks are sized for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WalkLength {
    Fixed {
        t: usize,
    },
    /// `t = ceil(factor ln n / phi^2)`, capped.
    Mixing {
        factor: f64,
        cap: usize,
    },
}

impl WalkLength {
    pub fn resolve(&self, n: usize, phi: f64) -> usize {
        match *self {
            WalkLength::Fixed { t } => t,
            WalkLength::Mixing { factor, cap } => ((factor * (n as f64).ln() / (phi * phi)).ceil() as usize).min(cap),
        }
    }
}

/// Practical tester parameters for every instance of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParamsPolicy {
    pub eps: f64,
    /// Fixed `phi`; `None` uses each instance's certified bound.
    pub phi: Option<f64>,
    pub mu: f64,
    pub rounds: u64,
    pub walk_len: WalkLength,
    pub lambda: Option<f64>,
    pub xi: Option<f64>,
    pub constants: Constants,
}

impl ParamsPolicy {
    /// `R = 40`, `t = ceil(8 ln n / phi^2)` capped at 400.
    pub fn desk_scale() -> Self {
        ParamsPolicy {
            eps: 0.1,
            phi: None,
            mu: 1e-4,
            rounds: 40,
            walk_len: WalkLength::Mixing { factor: 8.0, cap: 400 },
            lambda: None,
            xi: None,
            constants: Constants::default(),
        }
    }

    pub fn params_for(&self, g: &Graph, phi: f64) -> Result<TestParams> {
        let mut cfg = PracticalConfig::new(self.rounds, self.walk_len.resolve(g.n(), phi));
        cfg.lambda = self.lambda;
        cfg.xi = self.xi;
        TestParams::practical(g.n(), g.d(), self.eps, phi, self.mu, self.constants, cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeedOutcome {
    pub seed: u64,
    pub verdict: Verdict,
    pub reject_reason: RejectReason,
    pub rounds_executed: u64,
    pub oracle_queries: u64,
    pub query_budget: f64,
    pub phi: f64,
    pub walk_len: usize,
    pub walks: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentReport {
    pub family: String,
    pub policy: ParamsPolicy,
    pub seeds: Vec<SeedOutcome>,
    pub accepted: usize,
    pub total: usize,
    pub accept_rate: f64,
    pub mean_queries: f64,
    pub median_queries: u64,
    pub p90_queries: u64,
    pub wall_seconds: f64,
}

impl ExperimentReport {
    pub fn reject_rate(&self) -> f64 {
        (self.total - self.accepted) as f64 / self.total as f64
    }
}

/// Tester seed for an instance seed, kept apart from the generator's streams.
pub fn tester_seed(instance_seed: u64) -> u64 {
    splitmix64(instance_seed ^ 0x7465_7374)
}

/// One instance per seed in `first_seed..first_seed + seeds`.
pub fn run_experiment(
    family: &Family,
    policy: &ParamsPolicy,
    first_seed: u64,
    seeds: usize,
) -> Result<ExperimentReport> {
    if seeds == 0 {
        return Err(Error::precondition("need at least one seed"));
    }
    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(seeds);
    for seed in first_seed..first_seed + seeds as u64 {
        let t0 = Instant::now();
        let (g, certified) = family.generate(seed, policy.phi.is_none())?;
        let phi = match (policy.phi, certified) {
            (Some(phi), _) => phi,
            (None, Some(phi)) => phi,
            (None, None) => return Err(Error::precondition("no phi given and none certified")),
        };
        let params = policy.params_for(&g, phi)?;
        let report = cluster_test(&g, &params, tester_seed(seed))?;
        outcomes.push(SeedOutcome {
            seed,
            verdict: report.verdict,
            reject_reason: report.reject_reason,
            rounds_executed: report.rounds_executed,
            oracle_queries: report.oracle_queries,
            query_budget: params.query_budget(),
            phi,
            walk_len: params.walk_len,
            walks: params.walks,
            wall_seconds: t0.elapsed().as_secs_f64(),
        });
    }
    let accepted = outcomes.iter().filter(|o| o.verdict == Verdict::Accept).count();
    let mut queries: Vec<u64> = outcomes.iter().map(|o| o.oracle_queries).collect();
    queries.sort_unstable();
    Ok(ExperimentReport {
        family: family.describe(),
        policy: *policy,
        accepted,
        total: seeds,
        accept_rate: accepted as f64 / seeds as f64,
        mean_queries: queries.iter().map(|&q| q as f64).sum::<f64>() / seeds as f64,
        median_queries: nearest_rank(&queries, 0.5),
        p90_queries: nearest_rank(&queries, 0.9),
        seeds: outcomes,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

fn nearest_rank(sorted: &[u64], q: f64) -> u64 {
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

/// One row of the query-scaling table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalingRow {
    pub n: usize,
    pub mean_queries: f64,
    pub queries_per_n: f64,
    /// `R * 2N * t`.
    pub query_budget: f64,
    pub max_queries: u64,
    pub walks: usize,
    pub walk_len: usize,
}

/// Mean oracle queries per size; `family_for` builds the family of size `n`.
pub fn bench_query_scaling(
    family_for: impl Fn(usize) -> Family,
    sizes: &[usize],
    policy: &ParamsPolicy,
    seeds: usize,
) -> Result<Vec<ScalingRow>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("sizes must be strictly ascending"));
    }
    sizes
        .iter()
        .map(|&n| {
            let report = run_experiment(&family_for(n), policy, 0, seeds)?;
            let first = &report.seeds[0];
            Ok(ScalingRow {
                n,
                mean_queries: report.mean_queries,
                queries_per_n: report.mean_queries / n as f64,
                query_budget: report.seeds.iter().map(|o| o.query_budget).fold(0.0, f64::max),
                max_queries: report.seeds.iter().map(|o| o.oracle_queries).max().unwrap_or(0),
                walks: first.walks,
                walk_len: first.walk_len,
            })
        })
        .collect()
}

pub fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut out = String::from("n,mean_queries,queries_per_n,query_budget,max_queries,walks,walk_len\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n, r.mean_queries, r.queries_per_n, r.query_budget, r.max_queries, r.walks, r.walk_len
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_policy() -> ParamsPolicy {
        ParamsPolicy {
            eps: 0.1,
            phi: Some(0.2),
            mu: 0.0,
            rounds: 3,
            walk_len: WalkLength::Fixed { t: 5 },
            lambda: Some(f64::INFINITY),
            xi: Some(0.05),
            constants: Constants::default(),
        }
    }

    #[test]
    fn unreachable_threshold_accepts() {
        let family = Family::RandomRegular { n: 40, d: 4 };
        let report = run_experiment(&family, &tiny_policy(), 0, 1).unwrap();
        assert_eq!(report.accept_rate, 1.0);
        assert_eq!(report.accepted, report.total);
        assert!(report.seeds[0].oracle_queries as f64 <= report.seeds[0].query_budget);
    }

    #[test]
    fn walk_length_policy() {
        let w = WalkLength::Mixing { factor: 8.0, cap: 400 };
        assert_eq!(w.resolve(1024, 0.15), 400);
        assert_eq!(w.resolve(100, 1.0), (8.0 * 100f64.ln()).ceil() as usize);
        assert_eq!(WalkLength::Fixed { t: 7 }.resolve(10, 0.1), 7);
    }

    #[test]
    fn percentiles() {
        assert_eq!(nearest_rank(&[1, 2, 3, 4], 0.5), 2);
        assert_eq!(nearest_rank(&[1, 2, 3, 4], 0.9), 4);
        assert_eq!(nearest_rank(&[5], 0.9), 5);
    }

    #[test]
    fn single_size_table() {
        let rows = bench_query_scaling(|n| Family::RandomRegular { n, d: 4 }, &[40], &tiny_policy(), 1).unwrap();
        assert_eq!(rows.len(), 1);
        let csv = scaling_csv(&rows);
        assert_eq!(csv.lines().count(), 2);
        assert!(bench_query_scaling(|n| Family::RandomRegular { n, d: 4 }, &[40, 40], &tiny_policy(), 1).is_err());
    }

    #[test]
    fn experiments_are_reproducible() {
        let family = Family::TwoCluster { n_per_side: 10, d_inner: 3, cross: 1 };
        let a = run_experiment(&family, &tiny_policy(), 3, 2).unwrap();
        let b = run_experiment(&family, &tiny_policy(), 3, 2).unwrap();
        let strip = |r: &ExperimentReport| r.seeds.iter().map(|o| (o.verdict, o.oracle_queries)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }
}
