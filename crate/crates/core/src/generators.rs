//! Fixture graphs: complete graphs, cycles, paths, the two parametric
//! families used throughout the tests, and seeded random connected graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GraphError, Result};
use crate::graph::{WeightedGraph, MAX_VERTICES};

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(GraphError::invalid(format!("{what} needs at least {min} vertices")));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::size_cap(n, MAX_VERTICES, what));
    }
    Ok(())
}

/// `K_N` with unit weights. `K_1` is a single vertex carrying a unit loop,
/// since a vertex of degree zero is not a valid graph.
pub fn complete_graph(n: usize) -> Result<WeightedGraph> {
    check_n(n, 1, "complete_graph")?;
    if n == 1 {
        return WeightedGraph::from_edges(1, &[(0, 0, 1.0)]);
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, 1.0));
        }
    }
    WeightedGraph::from_edges(n, &edges)
}

pub fn cycle_graph(n: usize) -> Result<WeightedGraph> {
    check_n(n, 3, "cycle_graph")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges)
}

/// Path on `n >= 2` vertices.
pub fn path_graph(n: usize) -> Result<WeightedGraph> {
    check_n(n, 2, "path_graph")?;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges)
}

/// Two vertices joined by a unit edge, each with a loop of weight `c`.
pub fn example3_graph(c: f64) -> Result<WeightedGraph> {
    check_param(c)?;
    let mut edges = vec![(0, 1, 1.0)];
    if c > 0.0 {
        edges.push((0, 0, c));
        edges.push((1, 1, c));
    }
    WeightedGraph::from_edges(2, &edges)
}

/// Two triangles `{0,1,2}` and `{3,4,5}` with edge weight `c`, bridged by
/// the unit edge `2-3`.
pub fn example4_graph(c: f64) -> Result<WeightedGraph> {
    check_param(c)?;
    if c == 0.0 {
        return Err(GraphError::new(
            crate::error::ErrorKind::ZeroDegreeVertex,
            "example4 with c = 0 leaves vertices 0, 1, 4, 5 isolated",
        ));
    }
    WeightedGraph::from_edges(
        6,
        &[
            (0, 1, c),
            (0, 2, c),
            (1, 2, c),
            (2, 3, 1.0),
            (3, 4, c),
            (3, 5, c),
            (4, 5, c),
        ],
    )
}

fn check_param(c: f64) -> Result<()> {
    if !c.is_finite() || c < 0.0 {
        return Err(GraphError::invalid(format!("parameter c = {c} must be finite and >= 0")));
    }
    Ok(())
}

/// Options for [`random_connected_graph`].
#[derive(Debug, Clone, Copy)]
pub struct RandomGraphOptions {
    /// Probability of each extra edge beyond the spanning tree.
    pub edge_prob: f64,
    /// Draw weights uniformly from `(0, 2]` instead of using unit weights.
    pub weighted: bool,
    /// Probability that a vertex carries a loop.
    pub loop_prob: f64,
}

impl Default for RandomGraphOptions {
    fn default() -> Self {
        RandomGraphOptions {
            edge_prob: 0.4,
            weighted: false,
            loop_prob: 0.0,
        }
    }
}

/// Random connected graph: a random spanning tree plus independent extra
/// edges. Deterministic for a given seed.
pub fn random_connected_graph(n: usize, seed: u64, opts: RandomGraphOptions) -> Result<WeightedGraph> {
    check_n(n, 1, "random_connected_graph")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        if opts.weighted {
            // (0, 2]: 2 * (1 - U) with U in [0, 1)
            2.0 * (1.0 - rng.random::<f64>())
        } else {
            1.0
        }
    };
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        present[u * n + v] = true;
        edges.push((u, v, draw(&mut rng)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i * n + j] && rng.random::<f64>() < opts.edge_prob {
                edges.push((i, j, draw(&mut rng)));
            }
        }
    }
    for i in 0..n {
        if n == 1 || rng.random::<f64>() < opts.loop_prob {
            edges.push((i, i, draw(&mut rng)));
        }
    }
    WeightedGraph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_degrees() {
        let g = complete_graph(3).unwrap();
        assert_eq!(g.degrees(), &[2.0, 2.0, 2.0]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn example4_row0() {
        let c = 0.3;
        let g = example4_graph(c).unwrap();
        assert_eq!(g.row(0), &[0.0, c, c, 0.0, 0.0, 0.0]);
        assert_eq!(g.degree(2), 2.0 * c + 1.0);
    }

    #[test]
    fn example3_zero_is_k2() {
        assert_eq!(example3_graph(0.0).unwrap(), complete_graph(2).unwrap());
    }

    #[test]
    fn size_cap() {
        let e = complete_graph(MAX_VERTICES + 1).unwrap_err();
        assert_eq!(e.kind, crate::error::ErrorKind::SizeCapExceeded);
        assert!(cycle_graph(2).is_err());
    }

    #[test]
    fn random_graphs_connected_and_reproducible() {
        for seed in 0..20 {
            let opts = RandomGraphOptions { weighted: true, loop_prob: 0.3, ..Default::default() };
            let g = random_connected_graph(8, seed, opts).unwrap();
            assert!(g.is_connected());
            assert_eq!(g, random_connected_graph(8, seed, opts).unwrap());
            assert!(g.edges().all(|(_, _, w)| w > 0.0 && w <= 2.0));
        }
    }
}
