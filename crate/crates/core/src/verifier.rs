//! Numeric checks of the analysis on small instances, using exact walk
//! distributions and exact spectra instead of samples.
//!
//! Every check returns a [`LemmaReport`]. A report passes when the measured
//! quantity satisfies the inequality with tolerance [`TOLERANCE`], and is
//! marked not-applicable when the instance does not meet the hypotheses.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::PlantedInstance;
use crate::geometry::{collinear_distance_exact, count_far_pairs};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::scalar::{dot, norm_sq};
use crate::spectral::{interlacing_margin, project_heavy, two_column_singular_values, Spectrum};
use crate::walks::{all_exact_distributions, center, stream_rng};

pub const TOLERANCE: f64 = 1e-9;

/// Default number of points in the alpha grid of the aggregate check.
pub const ALPHA_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaVerdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instance: String,
    pub measured: BTreeMap<String, f64>,
    pub bound: f64,
    /// Slack of the checked inequality; negative means violated.
    pub margin: f64,
    pub verdict: LemmaVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    fn new(lemma: &str, instance: String) -> Self {
        LemmaReport {
            lemma: lemma.to_string(),
            instance,
            measured: BTreeMap::new(),
            bound: f64::NAN,
            margin: f64::NAN,
            verdict: LemmaVerdict::NotApplicable,
            note: None,
        }
    }

    fn measure(mut self, key: &str, value: f64) -> Self {
        self.measured.insert(key.to_string(), value);
        self
    }

    fn not_applicable(mut self, why: impl Into<String>) -> Self {
        self.verdict = LemmaVerdict::NotApplicable;
        self.note = Some(why.into());
        self
    }

    /// Sets bound and margin; passes iff `margin >= -TOLERANCE`.
    fn judge(mut self, bound: f64, margin: f64) -> Self {
        self.bound = bound;
        self.margin = margin;
        self.verdict = if margin >= -TOLERANCE { LemmaVerdict::Pass } else { LemmaVerdict::Fail };
        self
    }

    /// Replaces the generated instance description.
    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.instance = label.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == LemmaVerdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == LemmaVerdict::Fail
    }
}

fn describe(g: &Graph) -> String {
    format!("n={}, d={}, m={}", g.n(), g.d(), g.edge_count())
}

fn random_ball_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len = norm_sq(&v).sqrt();
        if len > 1e-12 {
            let r: f64 = rng.gen();
            return v.into_iter().map(|x| x / len * r).collect();
        }
    }
}

/// Random vector pairs with norms at most 1, checked against
/// `dist <= kappa_2` and `kappa_2^2 <= 10 dist`.
///
/// A third of the pairs are independent, the rest are perturbations of
/// collinear and antipodal pairs, where the inequalities are tight.
pub fn verify_gram_collinearity(trials: usize, seed: u64) -> LemmaReport {
    let results: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, 0, i);
            let dim = rng.gen_range(2..=8);
            let a = random_ball_vector(&mut rng, dim);
            let b = match i % 3 {
                0 => random_ball_vector(&mut rng, dim),
                kind => {
                    let scale: f64 = rng.gen_range(0.0..1.0) * if kind == 1 { 1.0 } else { -1.0 };
                    let noise = 10f64.powf(rng.gen_range(-8.0..-1.0));
                    let e = random_ball_vector(&mut rng, dim);
                    let b: Vec<f64> = a.iter().zip(&e).map(|(x, y)| scale * x + noise * y).collect();
                    let len = norm_sq(&b).sqrt();
                    if len > 1.0 {
                        b.into_iter().map(|x| x / len).collect()
                    } else {
                        b
                    }
                }
            };
            let kappa2 = two_column_singular_values(&a, &b).1;
            let dist = collinear_distance_exact(&a, &b);
            (kappa2 - dist, 10.0 * dist - kappa2 * kappa2)
        })
        .collect();
    let upper = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let lower = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let violations = results.iter().filter(|r| r.0 < -TOLERANCE || r.1 < -TOLERANCE).count();
    LemmaReport::new("gram-collinearity", format!("{trials} random pairs, seed {seed}"))
        .measure("worstUpperMargin", upper)
        .measure("worstLowerMargin", lower)
        .measure("violations", violations as f64)
        .judge(0.0, upper.min(lower))
}

/// Exact centered distributions `q_u^t` for every vertex.
fn all_q(g: &Graph, t: usize) -> Result<Vec<Vec<f64>>> {
    Ok(all_exact_distributions::<f64>(g, t)?.iter().map(|p| center(p).coords).collect())
}

/// `||q_u^t - <q_u^t, v_2> v_2|| <= (1 - lambda_3/2)^t` for every `u`: the
/// part of `q_u^t` outside the second eigenvector decays at rate `nu_3`.
pub fn verify_residual_bound(g: &Graph, t: usize) -> Result<LemmaReport> {
    if g.n() < 3 {
        return Err(Error::precondition("the residual bound needs n >= 3"));
    }
    let spectrum = Spectrum::<f64>::of_graph(g)?;
    let v2 = second_direction(&spectrum);
    let bound = spectrum.nu(2).max(0.0).powi(t as i32);
    let worst = all_q(g, t)?
        .par_iter()
        .map(|q| {
            let c = dot(q, &v2);
            let rest: Vec<f64> = q.iter().zip(&v2).map(|(x, y)| x - c * y).collect();
            norm_sq(&rest).sqrt()
        })
        .reduce(|| 0.0, f64::max);
    Ok(LemmaReport::new("residual", describe(g))
        .measure("t", t as f64)
        .measure("lambda3", spectrum.lambdas[2])
        .measure("maxResidual", worst)
        .judge(bound, bound - worst))
}

/// Unit vector in the span of the first two eigenvectors orthogonal to the
/// all-ones vector. When `lambda_2 = 0` the solver may return any basis of
/// the kernel, so the second eigenvector cannot be used as is.
fn second_direction(spectrum: &Spectrum<f64>) -> Vec<f64> {
    let n = spectrum.n();
    let e = 1.0 / (n as f64).sqrt();
    let deflate = |v: &[f64]| -> Vec<f64> {
        let c = v.iter().sum::<f64>() * e;
        v.iter().map(|x| x - c * e).collect()
    };
    let (a, b) = (deflate(&spectrum.vectors[0]), deflate(&spectrum.vectors[1]));
    let w = if norm_sq(&a) > norm_sq(&b) { a } else { b };
    let len = norm_sq(&w).sqrt();
    w.into_iter().map(|x| x / len).collect()
}

/// `||p_u^t||^2 <= 4 / (gamma n)` for all but `gamma n` vertices, on an
/// instance certified `phi_hat`-clusterable and walks longer than
/// `c35 ln n / phi_hat^2`.
pub fn verify_norm_bound(g: &Graph, t: usize, gamma: f64, phi_hat: f64, c35: f64) -> Result<LemmaReport> {
    let n = g.n() as f64;
    let needed = c35 * n.ln() / (phi_hat * phi_hat);
    let report =
        LemmaReport::new("norm", describe(g)).measure("t", t as f64).measure("gamma", gamma).measure("minT", needed);
    if !(phi_hat > 0.0) || !(t as f64 > needed) {
        return Ok(report.not_applicable(format!("walk length {t} does not exceed c35 ln n / phi^2 = {needed:.1}")));
    }
    let bound = 4.0 / (gamma * n);
    let norms: Vec<f64> = all_exact_distributions::<f64>(g, t)?.iter().map(|p| p.norm_sq()).collect();
    let violators = norms.iter().filter(|&&x| x > bound + TOLERANCE).count();
    let max_norm = norms.iter().copied().fold(0.0, f64::max);
    Ok(report
        .measure("maxNormSq", max_norm)
        .measure("violators", violators as f64)
        .judge(bound, gamma * n - violators as f64))
}

/// `min ||alpha Pi q_S1 + beta Pi q_S2||^2 >= 1 / (12 (|S1| + |S2|))` over
/// an alpha grid on `[0, 1]` and `beta = +-(1 - alpha)`, where `q_S` is
/// the average of `q_u^0` over `S` and `Pi` projects onto the eigenvectors
/// of `M` with eigenvalue above `1 - 4 delta`.
pub fn verify_aggregate_lower_bound(
    g: &Graph,
    s1: &VertexSet,
    s2: &VertexSet,
    delta: f64,
    grid: usize,
) -> Result<LemmaReport> {
    if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(s2) {
        return Err(Error::precondition("S1 and S2 must be nonempty and disjoint"));
    }
    if grid < 2 {
        return Err(Error::precondition("the alpha grid needs at least its two endpoints"));
    }
    let n = g.n();
    let (k1, k2) = (s1.len(), s2.len());
    let report = LemmaReport::new("aggregate", describe(g)).measure("delta", delta).measure("size", (k1 + k2) as f64);
    if 3 * (k1 + k2) > 2 * n {
        return Ok(report.not_applicable(format!("|S1| + |S2| = {} exceeds 2n/3", k1 + k2)));
    }
    for (name, s) in [("S1", s1), ("S2", s2)] {
        let phi = g.cut_conductance(s)?;
        if *phi.numer() as f64 > delta * *phi.denom() as f64 {
            return Ok(report.not_applicable(format!("cut conductance of {name} is {phi}, above delta")));
        }
    }
    let spectrum = Spectrum::<f64>::of_graph(g)?;
    let aggregate = |s: &VertexSet| -> Vec<f64> {
        let mut q = vec![-1.0 / n as f64; n];
        for &v in s.iter() {
            q[v] += 1.0 / s.len() as f64;
        }
        project_heavy(&spectrum, 1.0 - 4.0 * delta, &q)
    };
    let (p1, p2) = (aggregate(s1), aggregate(s2));
    let (aa, ab, bb) = (norm_sq(&p1), dot(&p1, &p2), norm_sq(&p2));
    let mut worst = f64::INFINITY;
    for i in 0..grid {
        let alpha = i as f64 / (grid - 1) as f64;
        for beta in [1.0 - alpha, alpha - 1.0] {
            worst = worst.min(alpha * alpha * aa + 2.0 * alpha * beta * ab + beta * beta * bb);
        }
    }
    let bound = 1.0 / (12.0 * (k1 + k2) as f64);
    Ok(report
        .measure("heavyDimension", spectrum.nus().iter().filter(|&&nu| nu > 1.0 - 4.0 * delta).count() as f64)
        .measure("minAggregateNormSq", worst)
        .judge(bound, worst - bound))
}

/// Density of vertex pairs whose `q_u^t, q_v^t` are certified
/// `eps_level`-far from collinear, on a far instance versus a clusterable
/// baseline of similar size. Passes iff the far density is strictly larger.
///
/// The far instance must have at least three parts with cuts sparse
/// relative to the parts' expansion (`delta_hat <= phi_hat^2 / 4`).
pub fn verify_far_pair_density(
    far: &PlantedInstance,
    baseline: &PlantedInstance,
    t: usize,
    eps_level: f64,
) -> Result<LemmaReport> {
    let (delta, phi) = (far.certificates.delta_hat, far.certificates.phi_hat);
    let report = LemmaReport::new("far-pairs", format!("{} vs {}", far.family, baseline.family))
        .measure("t", t as f64)
        .measure("epsLevel", eps_level)
        .measure("deltaHat", delta)
        .measure("phiHat", phi);
    if far.partition.len() < 3 {
        return Ok(report.not_applicable("the far instance needs at least three parts"));
    }
    if !(delta <= phi * phi / 4.0) {
        return Ok(report.not_applicable(format!("cuts are not sparse: delta_hat = {delta:.3e}, phi_hat = {phi:.3e}")));
    }
    let density = |g: &Graph| -> Result<(usize, f64)> {
        let (count, _) = count_far_pairs(&all_q(g, t)?, eps_level)?;
        let pairs = g.n() * g.n().saturating_sub(1) / 2;
        Ok((count, count as f64 / pairs.max(1) as f64))
    };
    let (far_count, far_density) = density(&far.graph)?;
    let (base_count, base_density) = density(&baseline.graph)?;
    let mut report = report
        .measure("farPairs", far_count as f64)
        .measure("farDensity", far_density)
        .measure("baselinePairs", base_count as f64)
        .measure("baselineDensity", base_density);
    report.bound = base_density;
    report.margin = far_density - base_density;
    report.verdict = if report.margin > 0.0 { LemmaVerdict::Pass } else { LemmaVerdict::Fail };
    Ok(report)
}

/// `eig_min(A_uv) <= nu_3^{2t}` for every pair `u < v`.
pub fn verify_interlacing(g: &Graph, t: usize) -> Result<LemmaReport> {
    let report = LemmaReport::new("interlacing", describe(g)).measure("t", t as f64);
    let pairs: Vec<(Vertex, Vertex)> = (0..g.n()).flat_map(|u| (u + 1..g.n()).map(move |v| (u, v))).collect();
    match interlacing_margin(g, t, &pairs)? {
        None => Ok(report.not_applicable("fewer than three vertices")),
        Some(margin) => Ok(report.measure("pairs", pairs.len() as f64).judge(0.0, margin)),
    }
}
