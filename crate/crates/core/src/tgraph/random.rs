use super::{StaticGraph, TemporalGraph};
use crate::rational::int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphParams {
    pub max_nodes: usize,
    pub max_snapshots: usize,
    pub colours: usize,
    pub edge_density: f64,
    /// Reuse one edge set for every snapshot.
    pub static_edges: bool,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            max_nodes: 6,
            max_snapshots: 5,
            colours: 3,
            edge_density: 0.4,
            static_edges: false,
        }
    }
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// A random coloured, discrete temporal graph. Node and snapshot counts are
/// drawn uniformly from `1..=max`; every colour bit is a fair coin.
pub fn random_temporal_graph(params: &RandomGraphParams, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = params.edge_density.clamp(0.0, 1.0);
    let n = rng.gen_range(1..=params.max_nodes.max(1));
    let len = rng.gen_range(1..=params.max_snapshots.max(1));
    let shared = random_edges(&mut rng, n, density);
    let snapshots = (0..len)
        .map(|i| {
            let edges = if params.static_edges {
                shared.clone()
            } else {
                random_edges(&mut rng, n, density)
            };
            let labels = (0..n)
                .map(|_| {
                    (0..params.colours)
                        .map(|_| int(rng.gen_bool(0.5) as i64))
                        .collect()
                })
                .collect();
            let g = StaticGraph::new(n, edges, labels).expect("generated graph is valid");
            (g, int(i as i64 + 1))
        })
        .collect();
    TemporalGraph::new(snapshots).expect("generated temporal graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_params_give_minimal_graph() {
        let p = RandomGraphParams {
            max_nodes: 1,
            max_snapshots: 1,
            colours: 1,
            edge_density: 0.0,
            static_edges: false,
        };
        let tg = random_temporal_graph(&p, 3);
        assert_eq!(tg.node_count(), 1);
        assert_eq!(tg.len(), 1);
        assert_eq!(tg.label_width(), 1);
        assert!(tg.snapshot(0).edges().is_empty());
    }

    #[test]
    fn deterministic_per_seed() {
        let p = RandomGraphParams::default();
        assert_eq!(random_temporal_graph(&p, 11), random_temporal_graph(&p, 11));
    }

    #[test]
    fn regression_digest_seed_7() {
        let p = RandomGraphParams {
            max_nodes: 5,
            max_snapshots: 4,
            colours: 2,
            edge_density: 0.5,
            static_edges: false,
        };
        let tg = random_temporal_graph(&p, 7);
        assert!(tg.is_discrete());
        assert_eq!(tg.digest(), REGRESSION_DIGEST);
    }

    const REGRESSION_DIGEST: &str = "6dccbc6b98e5898038f8927da921d83e958e77fd7c106af2ff7b98f1415494c0";

    #[test]
    fn static_edges_are_shared() {
        let p = RandomGraphParams {
            static_edges: true,
            edge_density: 0.6,
            ..RandomGraphParams::default()
        };
        for seed in 0..30 {
            assert!(random_temporal_graph(&p, seed).is_edge_static());
        }
    }
}
