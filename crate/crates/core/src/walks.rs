//! Lazy random walks.
//!
//! The lazy walk on a graph with degree bound `d` moves from `v` to each
//! neighbor with probability `1/(2d)` and stays put otherwise, so its
//! transition matrix `M` is symmetric and doubly stochastic. Sampling goes
//! through the oracle with at most one query per step; exact evolution
//! works offline on the adjacency lists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, LocalOracle, Vertex};
use crate::scalar::{norm_sq, Scalar};

/// Largest graph for which [`exact_distribution`] will run.
pub const EXACT_GUARD: usize = 100_000;

/// Oracle access as seen by a walker.
pub trait NeighborOracle {
    fn degree_bound(&self) -> usize;
    fn neighbor(&mut self, v: Vertex, port: usize) -> Option<Vertex>;
}

impl NeighborOracle for LocalOracle<'_> {
    fn degree_bound(&self) -> usize {
        self.graph().d()
    }

    #[inline]
    fn neighbor(&mut self, v: Vertex, port: usize) -> Option<Vertex> {
        LocalOracle::neighbor(self, v, port)
    }
}

impl NeighborOracle for &Graph {
    fn degree_bound(&self) -> usize {
        self.d()
    }

    fn neighbor(&mut self, v: Vertex, port: usize) -> Option<Vertex> {
        Graph::neighbor(self, v, port)
    }
}

/// One lazy step: draw `k` uniformly from `1..=2d`; for `k <= d` probe port
/// `k` and move if it exists, otherwise stay.
#[inline]
pub fn lazy_step<O: NeighborOracle, R: Rng + ?Sized>(oracle: &mut O, v: Vertex, rng: &mut R) -> Vertex {
    let d = oracle.degree_bound();
    let k = rng.gen_range(1..=2 * d);
    if k <= d {
        oracle.neighbor(v, k).unwrap_or(v)
    } else {
        v
    }
}

/// Endpoint of a length-`t` lazy walk from `u`.
pub fn sample_endpoint<O: NeighborOracle, R: Rng + ?Sized>(oracle: &mut O, u: Vertex, t: usize, rng: &mut R) -> Vertex {
    (0..t).fold(u, |v, _| lazy_step(oracle, v, rng))
}

/// Deterministic generator for one walk.
///
/// The key is derived from `(seed, stream)` and the ChaCha stream id is
/// `substream`, so any `(seed, stream, substream)` triple always yields the
/// same sequence no matter which worker draws it or in what order.
pub fn stream_rng(seed: u64, stream: u64, substream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream)));
    rng.set_stream(substream);
    rng
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// A probability vector over the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    pub probs: Vec<T>,
}

/// `p - (1/n) 1`: a distribution with the stationary part removed.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredVector<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> Distribution<T> {
    pub fn indicator(n: usize, u: Vertex) -> Self {
        let mut probs = vec![T::zero(); n];
        probs[u] = T::one();
        Distribution { probs }
    }

    pub fn uniform(n: usize) -> Self {
        Distribution { probs: vec![T::one() / T::of_usize(n); n] }
    }

    pub fn norm_sq(&self) -> T {
        norm_sq(&self.probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl<T: Scalar> CenteredVector<T> {
    pub fn norm_sq(&self) -> T {
        norm_sq(&self.coords)
    }
}

/// `y = M x`, using the adjacency lists directly.
pub fn apply_walk_matrix<T: Scalar>(g: &Graph, x: &[T], y: &mut [T]) {
    let half_inv_d = T::one() / T::of_usize(2 * g.d());
    for v in 0..g.n() {
        let ns = g.neighbors(v);
        let stay = T::one() - T::of_usize(ns.len()) * half_inv_d;
        let inflow: T = ns.iter().map(|&w| x[w]).sum();
        y[v] = stay * x[v] + inflow * half_inv_d;
    }
}

/// `M^t x`.
pub fn evolve<T: Scalar>(g: &Graph, x: &[T], t: usize) -> Vec<T> {
    let mut cur = x.to_vec();
    let mut next = vec![T::zero(); x.len()];
    for _ in 0..t {
        apply_walk_matrix(g, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// `p_u^t = M^t 1_u`, computed exactly (up to rounding) and oracle-free.
pub fn exact_distribution<T: Scalar>(g: &Graph, u: Vertex, t: usize) -> Result<Distribution<T>> {
    if g.n() > EXACT_GUARD {
        return Err(Error::GuardExceeded { what: "exact walk distribution", limit: EXACT_GUARD, got: g.n() });
    }
    if u >= g.n() {
        return Err(Error::precondition(format!("vertex {u} out of range")));
    }
    let start = Distribution::<T>::indicator(g.n(), u);
    Ok(Distribution { probs: evolve(g, &start.probs, t) })
}

/// Exact `p_u^t` for every start vertex, as rows.
///
/// Long walks on small graphs are computed as `M^t` by repeated squaring,
/// which costs `O(n^3 log t)` instead of `O(n^2 d t)`.
pub fn all_exact_distributions<T: Scalar>(g: &Graph, t: usize) -> Result<Vec<Distribution<T>>> {
    let n = g.n();
    let stepping = n as f64 * n as f64 * (g.d() + 1) as f64 * t as f64;
    let squaring = 2.0 * (n as f64).powi(3) * (usize::BITS - t.leading_zeros()) as f64;
    if n <= crate::linalg::DENSE_GUARD && squaring < stepping {
        let m = crate::spectral::walk_matrix::<T>(g)?.rows();
        let power = matrix_power(&m, t);
        // M^t is symmetric, so row u is also the distribution from u.
        return Ok(power.into_iter().map(|probs| Distribution { probs }).collect());
    }
    (0..n).into_par_iter().map(|u| exact_distribution(g, u, t)).collect()
}

fn matrix_power<T: Scalar>(m: &[Vec<T>], mut t: usize) -> Vec<Vec<T>> {
    let n = m.len();
    let mut result: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut base = m.to_vec();
    while t > 0 {
        if t & 1 == 1 {
            result = matmul(&result, &base);
        }
        t >>= 1;
        if t > 0 {
            base = matmul(&base, &base);
        }
    }
    result
}

fn matmul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = b.first().map_or(0, |r| r.len());
    a.par_iter()
        .map(|row| {
            let mut out = vec![T::zero(); n];
            for (&x, brow) in row.iter().zip(b) {
                if x != T::zero() {
                    for (o, &y) in out.iter_mut().zip(brow) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn center<T: Scalar>(p: &Distribution<T>) -> CenteredVector<T> {
    let shift = T::one() / T::of_usize(p.probs.len());
    CenteredVector { coords: p.probs.iter().map(|&x| x - shift).collect() }
}

/// Relative frequencies of `samples` over `0..n`.
pub fn empirical(samples: &[Vertex], n: usize) -> Vec<f64> {
    let mut counts = vec![0usize; n];
    for &s in samples {
        counts[s] += 1;
    }
    let total = samples.len().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / total).collect()
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}
