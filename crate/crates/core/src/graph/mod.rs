//! Bounded-degree graphs behind a neighbor oracle.
//!
//! A [`Graph`] stores an undirected simple graph whose degrees are all at
//! most the declared bound `d`. Algorithms in the query model only see the
//! graph through [`Graph::neighbor`] (or a [`LocalOracle`] handle), and
//! every such probe is tallied. Offline analyses (conductance, spectra,
//! exact walk distributions) read the adjacency directly through
//! [`Graph::neighbors`] and never touch the tally.

mod conductance;
mod io;

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

pub use conductance::ClusterWitness;
pub use io::{load_graph, parse_edge_list, save_graph, to_edge_list};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug)]
pub struct Graph {
    n: usize,
    d: usize,
    /// Neighbor lists, kept sorted so that port `i` is the `i`-th smallest neighbor.
    adj: Vec<Vec<Vertex>>,
    queries: AtomicU64,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph { n: self.n, d: self.d, adj: self.adj.clone(), queries: AtomicU64::new(self.queries()) }
    }
}

impl PartialEq for Graph {
    /// Structural equality; the query tally is not part of the graph.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// An edgeless graph on `n` vertices with degree bound `d >= 1`.
    pub fn empty(n: usize, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::precondition("degree bound must be at least 1"));
        }
        Ok(Graph { n, d, adj: vec![Vec::new(); n], queries: AtomicU64::new(0) })
    }

    pub fn from_edges<I>(n: usize, d: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n, d)?;
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.insert_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    /// Adds the undirected edge `{u, v}`.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.insert_edge(u, v, 0)
    }

    /// `line` is only used for error reporting.
    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex, line: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { line, vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Malformed { line, msg: format!("self-loop at vertex {u}") });
        }
        let pos_u = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge { line, u: u.min(v), v: u.max(v) }),
            Err(p) => p,
        };
        for w in [u, v] {
            if self.adj[w].len() + 1 > self.d {
                return Err(Error::DegreeBound { line, vertex: w, degree: self.adj[w].len() + 1, bound: self.d });
            }
        }
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos_v, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The degree bound `d`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Offline degree lookup (no oracle charge).
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Offline neighbor list (no oracle charge).
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The oracle: the `port`-th neighbor of `v` (ports are `1..=d`), or
    /// `None` when `port > deg(v)`. Each call costs one query.
    ///
    /// Panics if `v` is not a vertex or `port` is outside `1..=d`.
    pub fn neighbor(&self, v: Vertex, port: usize) -> Option<Vertex> {
        let w = self.probe(v, port);
        self.queries.fetch_add(1, Ordering::Relaxed);
        w
    }

    #[inline]
    fn probe(&self, v: Vertex, port: usize) -> Option<Vertex> {
        assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        assert!((1..=self.d).contains(&port), "port {port} outside 1..={}", self.d);
        self.adj[v].get(port - 1).copied()
    }

    /// Total number of oracle queries issued so far.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// A per-worker oracle handle that tallies locally and merges into the
    /// graph's counter when dropped.
    pub fn oracle(&self) -> LocalOracle<'_> {
        LocalOracle { graph: self, tally: 0 }
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::precondition("permutation length differs from n"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::precondition("not a permutation"));
            }
        }
        Graph::from_edges(self.n, self.d, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Induced subgraph on `part`, with vertices renumbered in increasing
    /// order and the global degree bound kept.
    pub fn induced(&self, part: &VertexSet) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in part.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::empty(part.len(), self.d).expect("d >= 1");
        for &u in part.iter() {
            for &v in &self.adj[u] {
                if u < v && index[v] != usize::MAX {
                    sub.adj[index[u]].push(index[v]);
                    sub.adj[index[v]].push(index[u]);
                }
            }
        }
        for ns in &mut sub.adj {
            ns.sort_unstable();
        }
        sub
    }
}

/// Oracle handle with a private query tally.
///
/// Walks running on different workers each hold one; the tallies are added
/// to the shared counter on drop, so the total is exact regardless of
/// interleaving.
pub struct LocalOracle<'g> {
    graph: &'g Graph,
    tally: u64,
}

impl<'g> LocalOracle<'g> {
    #[inline]
    pub fn neighbor(&mut self, v: Vertex, port: usize) -> Option<Vertex> {
        self.tally += 1;
        self.graph.probe(v, port)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Queries issued through this handle and not yet merged.
    pub fn tally(&self) -> u64 {
        self.tally
    }
}

impl Drop for LocalOracle<'_> {
    fn drop(&mut self) {
        if self.tally > 0 {
            self.graph.queries.fetch_add(self.tally, Ordering::Relaxed);
        }
    }
}

/// A subset of `{0, .., n-1}`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Vertex>>(n: usize, members: I) -> Result<Self> {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&v) = members.last() {
            if v >= n {
                return Err(Error::precondition(format!("vertex {v} not in 0..{n}")));
            }
        }
        Ok(VertexSet { n, members })
    }

    pub fn range(n: usize, range: std::ops::Range<Vertex>) -> Result<Self> {
        VertexSet::new(n, range)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &v in &self.members {
            m[v] = true;
        }
        m
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.mask();
        VertexSet { n: self.n, members: (0..self.n).filter(|&v| !mask[v]).collect() }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }

    /// Image of the set under a vertex relabeling.
    pub fn map(&self, perm: &[Vertex]) -> VertexSet {
        VertexSet::new(self.n, self.members.iter().map(|&v| perm[v])).expect("permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, 3, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn neighbor_ports_and_counter() {
        let g = k4();
        assert_eq!(g.neighbor(0, 2), Some(2));
        assert_eq!(g.queries(), 1);

        let p2 = Graph::from_edges(2, 1, [(0, 1)]).unwrap();
        assert_eq!(p2.neighbor(0, 1), Some(1));
        assert_eq!(p2.neighbor(0, 1), Some(1));
        assert_eq!(p2.queries(), 2);
    }

    #[test]
    fn missing_port_returns_none_and_still_counts() {
        let g = Graph::from_edges(3, 2, [(0, 1)]).unwrap();
        assert_eq!(g.neighbor(0, 2), None);
        assert_eq!(g.neighbor(2, 1), None);
        assert_eq!(g.queries(), 2);
    }

    #[test]
    #[should_panic(expected = "port")]
    fn port_zero_is_a_contract_violation() {
        k4().neighbor(0, 0);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn bad_vertex_is_a_contract_violation() {
        k4().neighbor(4, 1);
    }

    #[test]
    fn local_oracle_merges_on_drop() {
        let g = k4();
        {
            let mut o = g.oracle();
            for _ in 0..5 {
                o.neighbor(1, 3);
            }
            assert_eq!(o.tally(), 5);
            assert_eq!(g.queries(), 0);
        }
        assert_eq!(g.queries(), 5);
    }

    #[test]
    fn adjacency_is_symmetric_and_simple() {
        let mut g = Graph::empty(3, 2).unwrap();
        g.add_edge(2, 0).unwrap();
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
        assert!(matches!(g.add_edge(0, 2), Err(Error::DuplicateEdge { .. })));
        assert!(matches!(g.add_edge(1, 1), Err(Error::Malformed { .. })));
        assert!(matches!(g.add_edge(1, 3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn degree_bound_enforced() {
        let err = Graph::from_edges(3, 1, [(0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::DegreeBound { vertex: 1, degree: 2, bound: 1, .. }));
    }

    #[test]
    fn induced_keeps_global_bound() {
        let g = k4();
        let sub = g.induced(&VertexSet::new(4, [1, 3]).unwrap());
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.d(), 3);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = Graph::from_edges(4, 2, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::new(5, [3, 1, 3]).unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        assert_eq!(s.complement().as_slice(), &[0, 2, 4]);
        assert!(VertexSet::new(2, [2]).is_err());
    }
}
