//! The 2-clusterability tester.
//!
//! Each round picks a uniformly random pair `(u, v)`, runs `N` lazy walks of
//! length `t` from both, screens the endpoint samples with the l2-norm
//! tester, and estimates the 2x2 Gram matrix of the centered endpoint
//! distributions `q_u^t, q_v^t`. For a 2-clusterable graph those two
//! vectors are nearly collinear, so the estimate has a small eigenvalue; a
//! round in which both eigenvalues exceed `Lambda` rejects the graph.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{l2_norm_tester, norm_tester_floor, InnerProductEstimator, SampleBatch};
use crate::graph::{Graph, Vertex};
use crate::spectral::Gram2;
use crate::walks::{sample_endpoint, stream_rng};

/// Rounds above this count are computed and reported but never executed.
pub const DEFAULT_RUN_CAP: f64 = 1e6;

/// Substream reserved for drawing the round's vertex pair.
const PAIR_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every knob from the closed-form parameter formulas.
    Paper,
    /// Caller-chosen rounds and walk length with scaled thresholds.
    Practical,
}

/// The analysis constants the formulas leave unspecified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Constants {
    /// Inner-product estimator sample constant.
    pub c22: f64,
    /// Eigenvalue-gap constant.
    pub c33: f64,
    /// Small-norm (mixing) constant.
    pub c35: f64,
    /// Sparse-cut constant.
    pub c310: f64,
    /// Farness-to-conductance ratio bound.
    pub alpha_sc: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { c22: 1.0, c33: 1.0, c35: 1.0, c310: 1.0, alpha_sc: 1.0 }
    }
}

impl Constants {
    /// `128 c33 c310`, the exponent slope of the thresholds in `mu`.
    pub fn slope(&self) -> f64 {
        128.0 * self.c33 * self.c310
    }

    /// Upper end `C = 1 / (128 c33 c310)` of the admissible `mu` range.
    pub fn mu_limit(&self) -> f64 {
        1.0 / (128.0 * self.c33 * self.c310)
    }
}

/// Knobs for practical mode. Unset thresholds follow the paper-mode shape
/// `n^-(1 + 128 c33 c310 mu)` scaled by `lambda_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PracticalConfig {
    pub rounds: u64,
    pub walk_len: usize,
    pub lambda: Option<f64>,
    pub xi: Option<f64>,
    pub lambda_scale: f64,
    /// Default `xi` as a fraction of `Lambda`.
    pub xi_ratio: f64,
    /// Defaults to `1 / (24 R)`.
    pub eta: Option<f64>,
    /// `sigma = 16 / (gamma n)`.
    pub norm_gamma: f64,
}

impl PracticalConfig {
    pub fn new(rounds: u64, walk_len: usize) -> Self {
        PracticalConfig {
            rounds,
            walk_len,
            lambda: None,
            xi: None,
            lambda_scale: 1.0,
            xi_ratio: 0.25,
            eta: None,
            norm_gamma: 1.0,
        }
    }
}

/// Every parameter of one tester run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TestParams {
    pub mode: Mode,
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub phi: f64,
    pub mu: f64,
    pub constants: Constants,
    /// `R`; a real number because the paper-mode value is astronomically large.
    pub rounds: f64,
    pub walk_len: usize,
    pub eta: f64,
    pub sigma: f64,
    pub xi: f64,
    /// `N` as given by its formula.
    pub walks_formula: f64,
    /// `N` rounded up: the number of walks actually run per vertex.
    pub walks: usize,
    /// `r` as given by its formula.
    pub norm_samples_formula: f64,
    /// Norm-tester samples actually used (a prefix of the walk endpoints).
    pub norm_samples: usize,
    pub lambda: f64,
    /// Median-of-means batches in the inner-product estimator.
    pub estimator_batches: usize,
    pub run_cap: f64,
}

impl TestParams {
    /// The closed-form parameter set:
    ///
    /// ```text
    /// R = 1e22 / eps^4           t = ceil(64 max(c33, c35) ln n / phi^2)
    /// eta = 1 / (24 R)           sigma = 16 / (eta n)
    /// xi = 1e-5 n^-(1 + c mu)    Lambda = 1e-4 n^-(1 + c mu),  c = 128 c33 c310
    /// N = c22 sqrt(sigma) / (2 xi) ln(1/eta)
    /// r = 16 sqrt(n) / eta
    /// ```
    pub fn paper(n: usize, d: usize, eps: f64, phi: f64, mu: f64, constants: Constants) -> Result<Self> {
        check_unit("eps", eps)?;
        check_unit("phi", phi)?;
        let limit = constants.mu_limit();
        if !(mu > 0.0 && mu < limit) {
            return Err(Error::precondition(format!("mu = {mu} must lie in (0, {limit})")));
        }
        let nf = n as f64;
        let rounds = 1e22 / (eps * eps * eps * eps);
        let walk_len = (64.0 * constants.c33.max(constants.c35) * nf.ln() / (phi * phi)).ceil() as usize;
        let eta = 1.0 / (24.0 * rounds);
        let sigma = 16.0 / (eta * nf);
        let decay = nf.powf(-(1.0 + constants.slope() * mu));
        let xi = 1e-5 * decay;
        let walks_formula = constants.c22 * (sigma.sqrt() / (2.0 * xi)) * (1.0 / eta).ln();
        let norm_samples_formula = 16.0 * nf.sqrt() / eta;
        let lambda = 1e-4 * decay;
        let params = TestParams {
            mode: Mode::Paper,
            n,
            d,
            eps,
            phi,
            mu,
            constants,
            rounds,
            walk_len,
            eta,
            sigma,
            xi,
            walks_formula,
            walks: saturating_ceil(walks_formula),
            norm_samples_formula,
            norm_samples: saturating_ceil(norm_samples_formula),
            lambda,
            estimator_batches: 1,
            run_cap: DEFAULT_RUN_CAP,
        };
        params.check_threshold_gap()?;
        Ok(params)
    }

    /// Practical parameters: `R` and `t` from the caller, thresholds scaled
    /// from the paper-mode shape, and `N` the estimator's sample requirement (at
    /// least the norm tester's `16 sqrt(n)`).
    #[allow(clippy::too_many_arguments)]
    pub fn practical(
        n: usize,
        d: usize,
        eps: f64,
        phi: f64,
        mu: f64,
        constants: Constants,
        cfg: PracticalConfig,
    ) -> Result<Self> {
        if cfg.rounds == 0 {
            return Err(Error::precondition("need at least one round"));
        }
        if mu < 0.0 {
            return Err(Error::precondition("mu must be non-negative"));
        }
        let nf = n as f64;
        let decay = nf.powf(-(1.0 + constants.slope() * mu));
        let lambda = cfg.lambda.unwrap_or(cfg.lambda_scale * decay);
        let xi = cfg.xi.unwrap_or(cfg.xi_ratio * lambda);
        let rounds = cfg.rounds as f64;
        let eta = cfg.eta.unwrap_or(1.0 / (24.0 * rounds));
        let sigma = 16.0 / (cfg.norm_gamma * nf);
        let estimator = InnerProductEstimator::new(eta, xi, (sigma / 4.0).min(1.0)).with_constant(constants.c22);
        // The norm tester reuses the walk endpoints, so N also covers its floor.
        let walks = estimator.required_samples()?.max(norm_tester_floor(n).ceil() as usize);
        let norm_samples_formula = 16.0 * nf.sqrt() / eta;
        let norm_samples = saturating_ceil(norm_samples_formula).min(walks);
        let params = TestParams {
            mode: Mode::Practical,
            n,
            d,
            eps,
            phi,
            mu,
            constants,
            rounds,
            walk_len: cfg.walk_len,
            eta,
            sigma,
            xi,
            walks_formula: walks as f64,
            walks,
            norm_samples_formula,
            norm_samples,
            lambda,
            estimator_batches: 1,
            run_cap: DEFAULT_RUN_CAP,
        };
        params.validate()?;
        Ok(params)
    }

    /// `Lambda > 2 xi + 10 / n^2`: completeness needs room for the
    /// estimator error on top of the residual eigenvalue.
    fn check_threshold_gap(&self) -> Result<()> {
        let floor = 2.0 * self.xi + 10.0 / (self.n as f64 * self.n as f64);
        if !(self.lambda > floor) {
            return Err(Error::precondition(format!(
                "Lambda = {:e} must exceed 2 xi + 10/n^2 = {floor:e}",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Checks the invariants an executable parameter set must satisfy.
    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Paper {
            let limit = self.constants.mu_limit();
            if !(self.mu > 0.0 && self.mu < limit) {
                return Err(Error::precondition(format!("mu = {} must lie in (0, {limit})", self.mu)));
            }
        }
        self.check_threshold_gap()?;
        if (self.norm_samples as f64) < norm_tester_floor(self.n) {
            return Err(Error::precondition(format!(
                "r = {} is below 16 sqrt(n) = {:.1}",
                self.norm_samples,
                norm_tester_floor(self.n)
            )));
        }
        if self.mode == Mode::Practical && self.walks < self.norm_samples {
            return Err(Error::precondition("norm-tester samples are reused walks: need N >= r"));
        }
        let needed = self.estimator().required_samples()?;
        if self.walks < needed {
            return Err(Error::precondition(format!("N = {} is below the estimator's {needed}", self.walks)));
        }
        Ok(())
    }

    pub fn estimator(&self) -> InnerProductEstimator {
        InnerProductEstimator {
            eta: self.eta,
            xi: self.xi,
            b: (self.sigma / 4.0).min(1.0),
            c_est: self.constants.c22,
            batches: self.estimator_batches,
        }
    }

    /// Number of rounds to execute, refusing anything above the run cap.
    pub fn rounds_to_run(&self) -> Result<u64> {
        if !(self.rounds <= self.run_cap) {
            return Err(Error::GuardExceeded {
                what: "rounds R (run cap)",
                limit: self.run_cap as usize,
                got: saturating_ceil(self.rounds),
            });
        }
        Ok(self.rounds.ceil() as u64)
    }

    /// Worst-case oracle queries: `R * 2N * t`.
    pub fn query_budget(&self) -> f64 {
        self.rounds * 2.0 * self.walks as f64 * self.walk_len as f64
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::precondition(format!("{name} = {x} must lie in (0, 1)")));
    }
    Ok(())
}

fn saturating_ceil(x: f64) -> usize {
    if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x.ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    None,
    NormTest,
    Eigenvalues,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormTestVerdict {
    Pass,
    Fail,
}

/// Estimated Gram matrix of `q_u^t, q_v^t` for one round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GramEstimate {
    /// `[[<q_u,q_u>, <q_u,q_v>], [<q_v,q_u>, <q_v,q_v>]]`, each entry an
    /// inner-product estimate of the endpoint distributions minus `1/n`.
    pub gram: Gram2<f64>,
    /// Additive error budget per entry.
    pub xi: f64,
    pub norm_statistics: [f64; 2],
}

/// Outcome of the sampling part of one round.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GramOutcome {
    /// The norm tester rejected the samples from `u` (index 0) or `v` (index 1).
    NormReject {
        which: usize,
        statistic: f64,
    },
    Estimate(GramEstimate),
}

/// Runs the walks for one round and estimates the q-Gram matrix.
///
/// Walk `i` from `u` uses stream `(seed, round)` and substream `i`; walks
/// from `v` use substreams `N..2N`.
pub fn build_gram_estimate(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    params: &TestParams,
    seed: u64,
    round: u64,
) -> Result<GramOutcome> {
    let n_walks = params.walks;
    let endpoints = |start: Vertex, offset: u64| -> Vec<Vertex> {
        (0..n_walks as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, round, offset + i);
                let mut oracle = g.oracle();
                sample_endpoint(&mut oracle, start, params.walk_len, &mut rng)
            })
            .collect()
    };
    let from_u = SampleBatch::new(format!("p_{u}^t"), endpoints(u, 0));
    let from_v = SampleBatch::new(format!("p_{v}^t"), endpoints(v, n_walks as u64));

    let mut stats = [0.0; 2];
    for (which, batch) in [&from_u, &from_v].into_iter().enumerate() {
        let out = l2_norm_tester(&batch.prefix(params.norm_samples), params.sigma, g.n())?;
        stats[which] = out.statistic;
        if !out.accept {
            return Ok(GramOutcome::NormReject { which, statistic: out.statistic });
        }
    }

    let est = params.estimator();
    let shift = 1.0 / g.n() as f64;
    let uu = est.estimate_self(&from_u)? - shift;
    let uv = est.estimate(&from_u, &from_v)? - shift;
    let vv = est.estimate_self(&from_v)? - shift;
    Ok(GramOutcome::Estimate(GramEstimate {
        gram: Gram2::from_entries(uu, uv, vv),
        xi: params.xi,
        norm_statistics: stats,
    }))
}

/// One executed round, as it appears in the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RoundRecord {
    pub u: Vertex,
    pub v: Vertex,
    pub gram: Option<[[f64; 2]; 2]>,
    pub eig_min: Option<f64>,
    pub eig_max: Option<f64>,
    pub norm_test: NormTestVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TestReport {
    pub verdict: Verdict,
    pub reject_reason: RejectReason,
    pub rounds_executed: u64,
    pub oracle_queries: u64,
    pub seed: u64,
    pub params: TestParams,
    pub rounds: Vec<RoundRecord>,
}

impl TestReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Runs the tester. The result depends only on `(graph, params, seed)`.
pub fn cluster_test(g: &Graph, params: &TestParams, seed: u64) -> Result<TestReport> {
    if params.n != g.n() {
        return Err(Error::precondition(format!("params are for n = {}, graph has {}", params.n, g.n())));
    }
    let total = params.rounds_to_run()?;
    params.validate()?;
    let before = g.queries();
    let mut rounds = Vec::new();
    let mut reject_reason = RejectReason::None;
    for round in 0..total {
        let mut pair_rng = stream_rng(seed, round, PAIR_STREAM);
        let u = pair_rng.gen_range(0..g.n());
        let v = pair_rng.gen_range(0..g.n());
        let record = match build_gram_estimate(g, u, v, params, seed, round)? {
            GramOutcome::NormReject { .. } => {
                reject_reason = RejectReason::NormTest;
                RoundRecord { u, v, gram: None, eig_min: None, eig_max: None, norm_test: NormTestVerdict::Fail }
            }
            GramOutcome::Estimate(est) => {
                if est.gram.eig_min > params.lambda {
                    reject_reason = RejectReason::Eigenvalues;
                }
                RoundRecord {
                    u,
                    v,
                    gram: Some(est.gram.entries),
                    eig_min: Some(est.gram.eig_min),
                    eig_max: Some(est.gram.eig_max),
                    norm_test: NormTestVerdict::Pass,
                }
            }
        };
        rounds.push(record);
        if reject_reason != RejectReason::None {
            break;
        }
    }
    let verdict = if reject_reason == RejectReason::None { Verdict::Accept } else { Verdict::Reject };
    Ok(TestReport {
        verdict,
        reject_reason,
        rounds_executed: rounds.len() as u64,
        oracle_queries: g.queries() - before,
        seed,
        params: params.clone(),
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, 2, (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))).unwrap()
    }

    /// Small practical parameters with unreachable thresholds unless overridden.
    fn loose(n: usize, d: usize, walks: usize, walk_len: usize) -> TestParams {
        TestParams {
            mode: Mode::Practical,
            n,
            d,
            eps: 0.1,
            phi: 0.1,
            mu: 0.0,
            constants: Constants::default(),
            rounds: 5.0,
            walk_len,
            eta: 0.1,
            sigma: f64::INFINITY,
            xi: 0.1,
            walks_formula: walks as f64,
            walks,
            norm_samples_formula: walks as f64,
            norm_samples: walks,
            lambda: f64::INFINITY,
            estimator_batches: 1,
            run_cap: DEFAULT_RUN_CAP,
        }
    }

    #[test]
    fn paper_mode_formulas() {
        let p = TestParams::paper(1 << 40, 4, 0.1, 0.5, 1e-4, Constants::default()).unwrap();
        let e = 0.1f64;
        assert_eq!(p.rounds, 1e22 / (e * e * e * e));
        assert!((p.rounds / 1e26 - 1.0).abs() < 1e-12);
        assert!((p.sigma * p.eta * p.n as f64 - 16.0).abs() < 1e-9);
        assert!((p.lambda / p.xi - 10.0).abs() < 1e-9);
        assert!(p.rounds_to_run().unwrap_err().is_guard());
    }

    #[test]
    fn paper_mode_walk_length_plug_in() {
        // n = 3 is the closest integer to e; compute the same with ln n = ln 3.
        let p = TestParams::paper(3, 2, 0.5, 0.999_999, 1e-3, Constants::default());
        // Tiny n cannot satisfy the threshold gap, so use the formula directly.
        assert!(p.is_err());
        let t = (64.0 * 1.0f64.max(1.0) * std::f64::consts::E.ln() / (1.0 * 1.0)).ceil();
        assert_eq!(t, 64.0);
    }

    #[test]
    fn paper_mode_guards_mu() {
        let c = Constants::default();
        assert!(TestParams::paper(1 << 40, 4, 0.1, 0.5, c.mu_limit(), c).is_err());
        assert!(TestParams::paper(1 << 40, 4, 0.1, 0.5, 0.0, c).is_err());
        assert!(TestParams::paper(1 << 40, 4, 0.0, 0.5, 1e-3, c).is_err());
    }

    #[test]
    fn practical_mode_invariants() {
        let p = TestParams::practical(1024, 9, 0.1, 0.15, 1e-4, Constants::default(), PracticalConfig::new(40, 400))
            .unwrap();
        assert!(p.lambda > 2.0 * p.xi + 10.0 / (1024.0 * 1024.0));
        assert!(p.walks >= p.norm_samples && p.norm_samples as f64 >= 16.0 * 32.0);
        assert_eq!(p.walks, p.estimator().required_samples().unwrap());

        let mut cfg = PracticalConfig::new(3, 5);
        cfg.lambda = Some(f64::INFINITY);
        cfg.xi = Some(0.05);
        let loose = TestParams::practical(400, 4, 0.1, 0.2, 0.0, Constants::default(), cfg).unwrap();
        assert_eq!((loose.walks, loose.norm_samples), (320, 320));
        assert_eq!(p.rounds_to_run().unwrap(), 40);

        let mut cfg = PracticalConfig::new(40, 400);
        cfg.xi = Some(1.0);
        assert!(TestParams::practical(1024, 9, 0.1, 0.15, 1e-4, Constants::default(), cfg).is_err());
    }

    #[test]
    fn unreachable_thresholds_always_accept() {
        let g = cycle(16);
        let params = loose(16, 2, 80, 3);
        let report = cluster_test(&g, &params, 7).unwrap();
        assert_eq!(report.verdict, Verdict::Accept);
        assert_eq!(report.rounds_executed, 5);
        assert_eq!(report.reject_reason, RejectReason::None);
    }

    #[test]
    fn zero_length_walks_from_one_vertex() {
        let g = cycle(8);
        let params = loose(8, 2, 64, 0);
        let GramOutcome::Estimate(est) = build_gram_estimate(&g, 3, 3, &params, 1, 0).unwrap() else {
            panic!("norm tester cannot reject with sigma = inf");
        };
        let q = 1.0 - 1.0 / 8.0;
        assert_eq!(est.gram.entries, [[q, q], [q, q]]);
        assert!(est.gram.eig_min.abs() < 1e-12);
        assert!((est.gram.eig_max - 2.0 * q).abs() < 1e-12);
    }

    #[test]
    fn point_masses_on_two_vertices() {
        let g = Graph::from_edges(2, 1, [(0, 1)]).unwrap();
        let params = loose(2, 1, 32, 0);
        let GramOutcome::Estimate(est) = build_gram_estimate(&g, 0, 1, &params, 1, 0).unwrap() else {
            panic!("no norm rejection expected");
        };
        assert_eq!(est.gram.entries, [[0.5, -0.5], [-0.5, 0.5]]);
        assert!(est.gram.eig_min.abs() < 1e-15 && (est.gram.eig_max - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_rejection_aborts() {
        let g = cycle(8);
        let mut params = loose(8, 2, 64, 0);
        params.sigma = 0.5;
        let report = cluster_test(&g, &params, 3).unwrap();
        assert_eq!(report.verdict, Verdict::Reject);
        assert_eq!(report.reject_reason, RejectReason::NormTest);
        assert_eq!(report.rounds_executed, 1);
        assert_eq!(report.rounds[0].norm_test, NormTestVerdict::Fail);
    }

    #[test]
    fn query_accounting_matches_counter() {
        let g = cycle(32);
        let params = loose(32, 2, 100, 7);
        let report = cluster_test(&g, &params, 11).unwrap();
        assert_eq!(report.oracle_queries, g.queries());
        assert!(report.oracle_queries as f64 <= params.query_budget());
        assert!(report.oracle_queries > 0);
    }

    #[test]
    fn reports_are_reproducible() {
        let g = cycle(20);
        let params = loose(20, 2, 90, 5);
        let a = cluster_test(&g, &params, 42).unwrap();
        let b = cluster_test(&g.clone(), &params, 42).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        let c = cluster_test(&g, &params, 43).unwrap();
        assert_ne!(a.rounds, c.rounds);
    }

    #[test]
    fn report_json_keys() {
        let g = cycle(8);
        let params = loose(8, 2, 64, 2);
        let json: serde_json::Value =
            serde_json::from_str(&cluster_test(&g, &params, 1).unwrap().to_json().unwrap()).unwrap();
        for key in ["verdict", "rejectReason", "roundsExecuted", "oracleQueries", "seed", "params", "rounds"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["verdict"], "accept");
        assert_eq!(json["rejectReason"], "none");
        let r = &json["rounds"][0];
        for key in ["u", "v", "gram", "eigMin", "eigMax", "normTest"] {
            assert!(r.get(key).is_some(), "{key}");
        }
        assert_eq!(r["normTest"], "pass");
    }

    #[test]
    fn params_must_match_graph() {
        let g = cycle(8);
        assert!(cluster_test(&g, &loose(9, 2, 64, 2), 0).is_err());
    }
}
