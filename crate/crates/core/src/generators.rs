//! Synthetic instances for both sides of the promise.
//!
//! Clusterable instances are two random regular expanders joined by a few
//! disjoint cross edges. Far instances are `k >= 3` expanders arranged in a
//! cycle with a few cross edges between neighbors. Every instance carries
//! certificates that are recomputed from the graph, never taken from the
//! construction.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::spectral::{cheeger_bounds, laplacian_eigenvalues};
use crate::walks::stream_rng;

/// Restarts of the pairing model before giving up.
pub const PAIRING_RESTARTS: usize = 200;

/// Consecutive rejected draws after which a pairing attempt restarts.
const STUCK_DRAWS: usize = 1000;

/// Below this `lambda_2` a part counts as disconnected.
const CONNECTED_TOL: f64 = 1e-9;

const PART_STREAM: u64 = 1;
const CROSS_STREAM: u64 = 2;

/// Random `d`-regular simple graph from the pairing model.
///
/// Each vertex gets `d` points; points are matched two at a time, and a
/// draw that would create a loop or a repeated edge is simply redrawn.
/// Only when the leftover points admit no valid match does the attempt
/// restart from scratch.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::precondition(format!("n * d = {} is odd", n * d)));
    }
    if d < 3 || n <= d {
        return Err(Error::precondition(format!("need d >= 3 and n > d, got n = {n}, d = {d}")));
    }
    let mut rng = stream_rng(seed, 0, 0);
    for _ in 0..PAIRING_RESTARTS {
        if let Some(g) = pairing_attempt(n, d, &mut rng) {
            return Ok(g);
        }
    }
    Err(Error::Exhausted { what: "pairing model", attempts: PAIRING_RESTARTS })
}

fn pairing_attempt(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut g = Graph::empty(n, d).expect("d >= 3");
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let mut misses = 0;
    while !points.is_empty() {
        let i = rng.gen_range(0..points.len());
        let j = rng.gen_range(0..points.len());
        let (u, v) = (points[i], points[j]);
        if i == j || u == v || g.has_edge(u, v) {
            misses += 1;
            if misses >= STUCK_DRAWS && !has_valid_pair(&g, &points) {
                return None;
            }
            continue;
        }
        misses = 0;
        g.add_edge(u, v).expect("checked above");
        points.swap_remove(i.max(j));
        points.swap_remove(i.min(j));
    }
    Some(g)
}

fn has_valid_pair(g: &Graph, points: &[Vertex]) -> bool {
    points.iter().enumerate().any(|(i, &u)| points[i + 1..].iter().any(|&v| u != v && !g.has_edge(u, v)))
}

/// Certificates for one planted part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PartCertificate {
    pub size: usize,
    /// `lambda_2` of the induced subgraph's Laplacian, global `d`.
    pub lambda2: f64,
    /// `lambda_2 / 2`, a lower bound on the part's inner conductance.
    pub cheeger_lower: f64,
    /// `phi_G(part)` as `numerator/denominator`.
    pub cut_conductance: String,
    pub cut_conductance_value: f64,
    pub disconnected: bool,
}

/// Certificates for a whole instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificates {
    pub parts: Vec<PartCertificate>,
    /// Smallest per-part Cheeger lower bound.
    pub phi_hat: f64,
    /// Largest per-part cut conductance.
    pub delta_hat: f64,
    /// Indices of parts whose Cheeger lower bound is zero.
    pub flagged: Vec<usize>,
}

/// A generated graph together with its planted partition.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub family: String,
    pub graph: Graph,
    pub partition: Vec<VertexSet>,
    pub certificates: Certificates,
    pub seed: u64,
}

/// Everything about an instance except its edges, for the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sidecar {
    pub family: String,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub partition: Vec<Vec<Vertex>>,
    pub certificates: Certificates,
    pub far_family_by_construction: bool,
}

impl PlantedInstance {
    fn new(family: String, graph: Graph, partition: Vec<VertexSet>, seed: u64) -> Result<Self> {
        let certificates = certify_parts(&graph, &partition)?;
        Ok(PlantedInstance { family, graph, partition, certificates, seed })
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            family: self.family.clone(),
            seed: self.seed,
            n: self.graph.n(),
            d: self.graph.d(),
            partition: self.partition.iter().map(|p| p.as_slice().to_vec()).collect(),
            certificates: self.certificates.clone(),
            far_family_by_construction: self.partition.len() >= 3,
        }
    }

    /// The same instance with vertex `v` renamed to `perm[v]`, certificates
    /// recomputed.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let graph = self.graph.relabel(perm)?;
        let partition = self.partition.iter().map(|p| p.map(perm)).collect();
        PlantedInstance::new(self.family.clone(), graph, partition, self.seed)
    }
}

/// Recomputes all certificates of `instance` from scratch.
pub fn certify(instance: &PlantedInstance) -> Result<Certificates> {
    certify_parts(&instance.graph, &instance.partition)
}

fn certify_parts(g: &Graph, partition: &[VertexSet]) -> Result<Certificates> {
    let mut covered = vec![false; g.n()];
    for part in partition {
        if part.universe_size() != g.n() {
            return Err(Error::precondition("partition is over a different vertex count"));
        }
        for &v in part.iter() {
            if std::mem::replace(&mut covered[v], true) {
                return Err(Error::precondition(format!("vertex {v} lies in two parts")));
            }
        }
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::precondition("partition does not cover every vertex"));
    }
    let parts = partition
        .par_iter()
        .map(|part| -> Result<PartCertificate> {
            let lambdas = laplacian_eigenvalues::<f64>(&g.induced(part))?;
            let lambda2 = lambdas.get(1).copied().unwrap_or(0.0).max(0.0);
            let cheeger_lower = cheeger_bounds(&lambdas).0;
            let cut = g.cut_conductance(part)?;
            Ok(PartCertificate {
                size: part.len(),
                lambda2,
                cheeger_lower,
                cut_conductance: cut.to_string(),
                cut_conductance_value: *cut.numer() as f64 / *cut.denom() as f64,
                disconnected: part.len() > 1 && lambda2 <= CONNECTED_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let phi_hat = parts.iter().map(|p| p.cheeger_lower).fold(f64::INFINITY, f64::min);
    let delta_hat = parts.iter().map(|p| p.cut_conductance_value).fold(0.0, f64::max);
    let flagged = parts.iter().enumerate().filter(|(_, p)| p.disconnected).map(|(i, _)| i).collect();
    Ok(Certificates { parts, phi_hat, delta_hat, flagged })
}

/// Copies `part` into `g` with vertex `v` mapped to `offset + v`.
fn embed(g: &mut Graph, part: &Graph, offset: usize) {
    for (u, v) in part.edges() {
        g.add_edge(offset + u, offset + v).expect("disjoint blocks within degree budget");
    }
}

/// Two random `d_inner`-regular blocks of `n_per_side` vertices joined by
/// `cross_edges` disjoint edges; the degree bound is `d_inner + 1`.
pub fn two_cluster(n_per_side: usize, d_inner: usize, cross_edges: usize, seed: u64) -> Result<PlantedInstance> {
    if cross_edges > n_per_side {
        return Err(Error::precondition(format!(
            "{cross_edges} cross edges need distinct endpoints among {n_per_side} vertices per side"
        )));
    }
    let d = d_inner + 1;
    let mut g = Graph::empty(2 * n_per_side, d)?;
    for side in 0..2 {
        let block = random_regular(n_per_side, d_inner, stream_seed(seed, PART_STREAM, side))?;
        embed(&mut g, &block, side as usize * n_per_side);
    }
    let mut rng = stream_rng(seed, CROSS_STREAM, 0);
    let left = sample_distinct(&mut rng, n_per_side, cross_edges);
    let right = sample_distinct(&mut rng, n_per_side, cross_edges);
    for (&a, &b) in left.iter().zip(&right) {
        g.add_edge(a, n_per_side + b)?;
    }
    let partition = vec![VertexSet::range(g.n(), 0..n_per_side)?, VertexSet::range(g.n(), n_per_side..2 * n_per_side)?];
    PlantedInstance::new(
        format!("two_cluster(n_per_side={n_per_side}, d_inner={d_inner}, cross={cross_edges})"),
        g,
        partition,
        seed,
    )
}

/// `k >= 3` random `d_inner`-regular blocks in a cycle, consecutive blocks
/// joined by `cross_per_pair` edges. Every cross endpoint is distinct, and
/// the degree bound is `d_inner + 2`.
pub fn k_cluster(
    n_per_part: usize,
    k: usize,
    d_inner: usize,
    cross_per_pair: usize,
    seed: u64,
) -> Result<PlantedInstance> {
    if k < 3 {
        return Err(Error::precondition(format!("k_cluster needs k >= 3, got {k}")));
    }
    if 2 * cross_per_pair > n_per_part {
        return Err(Error::precondition(format!(
            "each block needs {} distinct cross endpoints but has {n_per_part} vertices",
            2 * cross_per_pair
        )));
    }
    let d = d_inner + 2;
    let mut g = Graph::empty(k * n_per_part, d)?;
    for part in 0..k {
        let block = random_regular(n_per_part, d_inner, stream_seed(seed, PART_STREAM, part as u64))?;
        embed(&mut g, &block, part * n_per_part);
    }
    let mut rng = stream_rng(seed, CROSS_STREAM, 0);
    // First half of each block's endpoints face the next block, second half the previous.
    let ends: Vec<Vec<Vertex>> = (0..k).map(|_| sample_distinct(&mut rng, n_per_part, 2 * cross_per_pair)).collect();
    for i in 0..k {
        let j = (i + 1) % k;
        for c in 0..cross_per_pair {
            let a = i * n_per_part + ends[i][c];
            let b = j * n_per_part + ends[j][cross_per_pair + c];
            g.add_edge(a, b)?;
        }
    }
    let partition =
        (0..k).map(|i| VertexSet::range(g.n(), i * n_per_part..(i + 1) * n_per_part)).collect::<Result<Vec<_>>>()?;
    PlantedInstance::new(
        format!("k_cluster(k={k}, n_per_part={n_per_part}, d_inner={d_inner}, cross={cross_per_pair})"),
        g,
        partition,
        seed,
    )
}

fn stream_seed(seed: u64, stream: u64, index: u64) -> u64 {
    crate::walks::splitmix64(seed ^ crate::walks::splitmix64(stream.wrapping_mul(0x1_0000) ^ index))
}

fn sample_distinct(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vertex> {
    let mut all: Vec<Vertex> = (0..n).collect();
    all.partial_shuffle(rng, count).0.to_vec()
}
