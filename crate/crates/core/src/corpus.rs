//! A fixed set of small instances (n <= 512) the verification suite runs on.

use crate::error::Result;
use crate::generators::{k_cluster, random_regular, two_cluster, PlantedInstance};
use crate::graph::Graph;
use crate::spectral::{cheeger_bounds, laplacian_eigenvalues};
use crate::verifier::{
    verify_aggregate_lower_bound, verify_interlacing, verify_norm_bound, verify_residual_bound, LemmaReport, ALPHA_GRID,
};

/// Walk length used for the residual and interlacing checks.
pub const CORPUS_WALK_LEN: usize = 12;

/// Fraction of exceptional vertices allowed by the norm check.
pub const CORPUS_GAMMA: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub planted: Option<PlantedInstance>,
    /// Certified lower bound on the inner conductance of every part (the
    /// whole graph when nothing is planted).
    pub phi_hat: f64,
}

impl CorpusEntry {
    fn plain(name: &str, graph: Graph) -> Result<Self> {
        let phi_hat = cheeger_bounds(&laplacian_eigenvalues::<f64>(&graph)?).0;
        Ok(CorpusEntry { name: name.to_string(), graph, planted: None, phi_hat })
    }

    fn planted(name: &str, inst: PlantedInstance) -> Self {
        CorpusEntry {
            name: name.to_string(),
            graph: inst.graph.clone(),
            phi_hat: inst.certificates.phi_hat,
            planted: Some(inst),
        }
    }

    /// Shortest walk for which the norm check applies with `c35`.
    pub fn mixing_walk_len(&self, c35: f64) -> usize {
        (c35 * (self.graph.n() as f64).ln() / (self.phi_hat * self.phi_hat)).floor() as usize + 1
    }
}

fn cycle(n: usize) -> Result<Graph> {
    Graph::from_edges(n, 2, (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))))
}

/// Cycles, dumbbells, multi-block instances and random regular graphs.
pub fn bundled_corpus() -> Result<Vec<CorpusEntry>> {
    Ok(vec![
        CorpusEntry::plain("cycle-16", cycle(16)?)?,
        CorpusEntry::plain("cycle-64", cycle(64)?)?,
        CorpusEntry::planted("dumbbell-8", two_cluster(4, 3, 1, 0)?),
        CorpusEntry::planted("three-k4", k_cluster(4, 3, 3, 1, 0)?),
        CorpusEntry::planted("two-cluster-64", two_cluster(32, 4, 2, 1)?),
        CorpusEntry::planted("k-cluster-4x32", k_cluster(32, 4, 4, 1, 2)?),
        CorpusEntry::plain("random-regular-128", random_regular(128, 6, 3)?)?,
        CorpusEntry::planted("two-cluster-256", two_cluster(128, 8, 4, 4)?),
        CorpusEntry::planted("k-cluster-4x128", k_cluster(128, 4, 8, 1, 5)?),
        CorpusEntry::planted("two-cluster-512", two_cluster(256, 8, 4, 6)?),
    ])
}

/// Residual, interlacing and norm checks on one entry, plus the aggregate
/// check on the first two parts when at least three are planted.
pub fn verify_entry(entry: &CorpusEntry, c35: f64) -> Result<Vec<LemmaReport>> {
    let g = &entry.graph;
    let mut reports = vec![
        verify_residual_bound(g, CORPUS_WALK_LEN)?.labeled(entry.name.clone()),
        verify_interlacing(g, CORPUS_WALK_LEN)?.labeled(entry.name.clone()),
        verify_norm_bound(g, entry.mixing_walk_len(c35), CORPUS_GAMMA, entry.phi_hat, c35)?.labeled(entry.name.clone()),
    ];
    if let Some(inst) = entry.planted.as_ref().filter(|i| i.partition.len() >= 3) {
        let delta = inst.certificates.delta_hat;
        reports.push(
            verify_aggregate_lower_bound(g, &inst.partition[0], &inst.partition[1], delta, ALPHA_GRID)?
                .labeled(entry.name.clone()),
        );
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_small_and_certified() {
        let corpus = bundled_corpus().unwrap();
        assert!(corpus.iter().all(|e| e.graph.n() <= 512));
        assert!(corpus.iter().all(|e| e.phi_hat > 0.0));
        let names: std::collections::BTreeSet<_> = corpus.iter().map(|e| e.name.clone()).collect();
        assert_eq!(names.len(), corpus.len());
    }
}
