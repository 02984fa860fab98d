//! Exact conductance of cuts, plus brute-force graph conductance and
//! 2-clusterability checks for tiny graphs.
//!
//! Conductance always divides by the global degree bound `d`, also inside
//! induced subgraphs. These routines are offline and bypass the oracle.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{Graph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Largest graph accepted by [`Graph::graph_conductance_bruteforce`].
pub const MAX_BRUTEFORCE_CONDUCTANCE: usize = 20;
/// Largest graph accepted by [`Graph::is_two_clusterable_bruteforce`].
pub const MAX_BRUTEFORCE_CLUSTERABLE: usize = 16;

/// How a graph meets the 2-clusterability threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClusterWitness {
    /// The whole graph already has conductance at least the threshold.
    Whole,
    Bipartition(VertexSet, VertexSet),
}

impl Graph {
    /// Number of edges with exactly one endpoint in `s`.
    pub fn cut_edges(&self, s: &VertexSet) -> usize {
        let mask = s.mask();
        s.iter().map(|&u| self.adj[u].iter().filter(|&&v| !mask[v]).count()).sum()
    }

    /// `e(S, V \ S) / (d |S|)` as an exact fraction.
    pub fn cut_conductance(&self, s: &VertexSet) -> Result<Ratio<u64>> {
        if s.universe_size() != self.n {
            return Err(Error::precondition("vertex set belongs to a different graph"));
        }
        if s.is_empty() || s.len() == self.n {
            return Err(Error::precondition("cut conductance needs a nonempty proper subset"));
        }
        Ok(Ratio::new(self.cut_edges(s) as u64, (self.d * s.len()) as u64))
    }

    /// Minimum of [`cut_conductance`](Self::cut_conductance) over all `S`
    /// with `1 <= |S| <= n/2`, together with a minimizing `S`.
    pub fn graph_conductance_bruteforce(&self) -> Result<(Ratio<u64>, VertexSet)> {
        if self.n > MAX_BRUTEFORCE_CONDUCTANCE {
            return Err(Error::GuardExceeded {
                what: "brute-force conductance",
                limit: MAX_BRUTEFORCE_CONDUCTANCE,
                got: self.n,
            });
        }
        if self.n < 2 {
            return Err(Error::precondition("conductance needs at least two vertices"));
        }
        let masks = self.adjacency_masks();
        let full = (1u32 << self.n) - 1;
        let (value, witness) = min_conductance_within(&masks, full, self.d).expect("n >= 2");
        Ok((value, mask_to_set(self.n, witness)))
    }

    /// Conductance of the induced subgraph `G[part]` with the global `d`.
    /// `None` stands for +infinity: parts with at most one vertex impose no
    /// constraint.
    pub fn inner_conductance(&self, part: &VertexSet) -> Result<Option<Ratio<u64>>> {
        if self.n > MAX_BRUTEFORCE_CONDUCTANCE {
            return Err(Error::GuardExceeded {
                what: "brute-force inner conductance",
                limit: MAX_BRUTEFORCE_CONDUCTANCE,
                got: self.n,
            });
        }
        let masks = self.adjacency_masks();
        let part_mask = part.iter().fold(0u32, |m, &v| m | (1 << v));
        Ok(min_conductance_within(&masks, part_mask, self.d).map(|(r, _)| r))
    }

    /// Whether the graph is `(2, phi)`-clusterable: either `phi(G) >= phi`
    /// or some bipartition has inner conductance at least `phi` on both
    /// sides. Returns the witness, or `None` if no partition works.
    pub fn is_two_clusterable_bruteforce(&self, phi: f64) -> Result<Option<ClusterWitness>> {
        if self.n > MAX_BRUTEFORCE_CLUSTERABLE {
            return Err(Error::GuardExceeded {
                what: "brute-force clusterability",
                limit: MAX_BRUTEFORCE_CLUSTERABLE,
                got: self.n,
            });
        }
        let masks = self.adjacency_masks();
        let meets = |part: u32| match min_conductance_within(&masks, part, self.d) {
            None => true,
            Some((r, _)) => ratio_at_least(r, phi),
        };
        if self.n == 0 {
            return Ok(Some(ClusterWitness::Whole));
        }
        let full = (1u32 << self.n) - 1;
        if meets(full) {
            return Ok(Some(ClusterWitness::Whole));
        }
        // Vertex 0 always sits in the first part; the second part is nonempty.
        let rest = full & !1;
        let mut sub = rest;
        while sub != 0 {
            let c2 = sub;
            let c1 = full & !c2;
            if meets(c1) && meets(c2) {
                return Ok(Some(ClusterWitness::Bipartition(mask_to_set(self.n, c1), mask_to_set(self.n, c2))));
            }
            sub = (sub - 1) & rest;
        }
        Ok(None)
    }

    fn adjacency_masks(&self) -> Vec<u32> {
        debug_assert!(self.n <= 32);
        self.adj.iter().map(|ns| ns.iter().fold(0u32, |m, &v| m | (1 << v))).collect()
    }
}

fn ratio_at_least(r: Ratio<u64>, phi: f64) -> bool {
    *r.numer() as f64 / *r.denom() as f64 >= phi
}

fn mask_to_set(n: usize, mask: u32) -> VertexSet {
    VertexSet::new(n, (0..n).filter(|&v| mask & (1 << v) != 0)).expect("mask within n")
}

/// Minimum over nonempty `S ⊆ part`, `|S| <= |part|/2`, of
/// `e_part(S, part \ S) / (d |S|)`. `None` if no such `S` exists.
fn min_conductance_within(masks: &[u32], part: u32, d: usize) -> Option<(Ratio<u64>, u32)> {
    let size = part.count_ones();
    let mut best: Option<(u64, u64, u32)> = None;
    let mut sub = part;
    while sub != 0 {
        let s_size = sub.count_ones();
        if 2 * s_size <= size {
            let outside = part & !sub;
            let mut cut = 0u64;
            let mut bits = sub;
            while bits != 0 {
                let v = bits.trailing_zeros() as Vertex;
                cut += (masks[v] & outside).count_ones() as u64;
                bits &= bits - 1;
            }
            let denom = d as u64 * s_size as u64;
            let better = match best {
                None => true,
                Some((bc, bd, _)) => cut * bd < bc * denom,
            };
            if better {
                best = Some((cut, denom, sub));
            }
        }
        sub = (sub - 1) & part;
    }
    best.map(|(c, den, m)| (Ratio::new(c, den), m))
}
