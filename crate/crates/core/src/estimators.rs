//! Collision statistics over vertex samples.
//!
//! Both subroutines the tester needs are realized with collision counts:
//! the fraction of coinciding pairs within one sample set is an unbiased
//! estimate of `||p||^2`, and across two independent sample sets it is an
//! unbiased estimate of `<p, q>`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// I.i.d. samples from a single distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub source: String,
    pub items: Vec<Vertex>,
}

impl SampleBatch {
    pub fn new(source: impl Into<String>, items: Vec<Vertex>) -> Self {
        SampleBatch { source: source.into(), items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The first `r` samples as a batch of their own.
    pub fn prefix(&self, r: usize) -> SampleBatch {
        SampleBatch { source: self.source.clone(), items: self.items[..r.min(self.len())].to_vec() }
    }
}

fn sorted(items: &[Vertex]) -> Vec<Vertex> {
    let mut s = items.to_vec();
    s.sort_unstable();
    s
}

/// Run lengths of equal values in a sorted slice.
fn runs(sorted: &[Vertex]) -> impl Iterator<Item = (Vertex, u64)> + '_ {
    sorted.chunk_by(|a, b| a == b).map(|c| (c[0], c.len() as u64))
}

/// Coinciding unordered pairs over all pairs: unbiased for `||p||^2`.
/// Zero when fewer than two samples are given.
pub fn collision_statistic(items: &[Vertex]) -> f64 {
    let r = items.len() as u64;
    if r < 2 {
        return 0.0;
    }
    let same: u64 = runs(&sorted(items)).map(|(_, c)| c * (c - 1) / 2).sum();
    same as f64 / (r * (r - 1) / 2) as f64
}

/// `#{(i, j) : a[i] = b[j]} / (|a| |b|)`: unbiased for `<p, q>`.
pub fn cross_collision_statistic(a: &[Vertex], b: &[Vertex]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let (sa, sb) = (sorted(a), sorted(b));
    let mut ra = runs(&sa).peekable();
    let mut rb = runs(&sb).peekable();
    let mut hits = 0u64;
    while let (Some(&(x, cx)), Some(&(y, cy))) = (ra.peek(), rb.peek()) {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => {
                ra.next();
            }
            std::cmp::Ordering::Greater => {
                rb.next();
            }
            std::cmp::Ordering::Equal => {
                hits += cx * cy;
                ra.next();
                rb.next();
            }
        }
    }
    hits as f64 / (a.len() as f64 * b.len() as f64)
}

/// Verdict of the l2-norm tester.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormTestOutcome {
    pub accept: bool,
    pub statistic: f64,
}

/// Smallest sample count the norm tester accepts: `16 sqrt(n)`.
pub fn norm_tester_floor(n: usize) -> f64 {
    16.0 * (n as f64).sqrt()
}

/// Accepts iff the collision statistic of the `r = samples.len()` samples is
/// below `sigma / 2`, the midpoint of the promise gap `[sigma/4, sigma]`.
/// Each side of the promise fails with probability at most `16 sqrt(n) / r`.
pub fn l2_norm_tester(samples: &SampleBatch, sigma: f64, n: usize) -> Result<NormTestOutcome> {
    if (samples.len() as f64) < norm_tester_floor(n) {
        return Err(Error::precondition(format!(
            "norm tester needs r >= 16 sqrt(n) = {:.1} samples, got {}",
            norm_tester_floor(n),
            samples.len()
        )));
    }
    let statistic = collision_statistic(&samples.items);
    Ok(NormTestOutcome { accept: statistic < sigma / 2.0, statistic })
}

/// `ceil(c_est * sqrt(b) / xi * ln(1/eta))`.
pub fn required_samples(eta: f64, xi: f64, b: f64, c_est: f64) -> Result<usize> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::precondition(format!("eta = {eta} must lie in (0, 1)")));
    }
    if !(xi > 0.0) || !(c_est > 0.0) {
        return Err(Error::precondition("xi and the sample constant must be positive"));
    }
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::precondition(format!("norm bound b = {b} must lie in (0, 1]")));
    }
    Ok((c_est * b.sqrt() / xi * (1.0 / eta).ln()).ceil() as usize)
}

/// The l2 inner-product estimator: additive error `xi` with probability
/// `1 - eta` for distributions with squared norms at most `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerProductEstimator {
    pub eta: f64,
    pub xi: f64,
    pub b: f64,
    pub c_est: f64,
    /// Number of median-of-means batches; 1 uses every cross pair at once.
    pub batches: usize,
}

impl InnerProductEstimator {
    pub fn new(eta: f64, xi: f64, b: f64) -> Self {
        InnerProductEstimator { eta, xi, b, c_est: 1.0, batches: 1 }
    }

    pub fn with_constant(mut self, c_est: f64) -> Self {
        self.c_est = c_est;
        self
    }

    /// Median of `ceil(8 ln(1/eta))` batch means.
    pub fn with_median_of_means(mut self) -> Self {
        self.batches = (8.0 * (1.0 / self.eta).ln()).ceil().max(1.0) as usize;
        self
    }

    pub fn required_samples(&self) -> Result<usize> {
        required_samples(self.eta, self.xi, self.b, self.c_est)
    }

    /// Estimate of `<p, q>` from equally sized sample sets of each.
    pub fn estimate(&self, p: &SampleBatch, q: &SampleBatch) -> Result<f64> {
        self.check(p.len(), q.len())?;
        Ok(self.median_of_batches(p.len(), |r| cross_collision_statistic(&p.items[r.clone()], &q.items[r])))
    }

    /// Estimate of `||p||^2 = <p, p>` from one sample set, by within-set collisions.
    pub fn estimate_self(&self, p: &SampleBatch) -> Result<f64> {
        self.check(p.len(), p.len())?;
        Ok(self.median_of_batches(p.len(), |r| collision_statistic(&p.items[r])))
    }

    fn check(&self, np: usize, nq: usize) -> Result<()> {
        if np != nq {
            return Err(Error::precondition(format!("sample sets differ in size ({np} vs {nq})")));
        }
        let floor = self.required_samples()?;
        if np < floor {
            return Err(Error::precondition(format!("{np} samples is below the required {floor}")));
        }
        if self.batches == 0 || np / self.batches < 2 {
            return Err(Error::precondition("too many median-of-means batches for the sample size"));
        }
        Ok(())
    }

    fn median_of_batches(&self, len: usize, stat: impl Fn(std::ops::Range<usize>) -> f64) -> f64 {
        if self.batches == 1 {
            return stat(0..len);
        }
        let size = len / self.batches;
        let mut means: Vec<f64> = (0..self.batches).map(|i| stat(i * size..(i + 1) * size)).collect();
        means.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let k = means.len();
        if k % 2 == 1 {
            means[k / 2]
        } else {
            0.5 * (means[k / 2 - 1] + means[k / 2])
        }
    }
}
