//! Triangle-based local clustering constants and the upper bound
//! `λ_{N−1} ≤ 2 − H` they give.

use serde::Serialize;

use super::{BoundReport, Target};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusteringConstants {
    /// `min_{e=(i,j)} (α_i + α_j)/2` over non-loop edges.
    pub c0: f64,
    /// Fraction of `d_i` carried by edges at `i` that lie in a triangle.
    pub alpha: Vec<f64>,
    pub w_tri: f64,
    /// Largest degree among triangle vertices.
    pub d_bar: f64,
    /// `C0 (W/(1+W))² / (2 d̄)`.
    pub h: f64,
    pub triangle_count: usize,
}

/// Loops never belong to triangles. Without triangles all constants are 0.
pub fn clustering_constants(g: &WeightedGraph) -> ClusteringConstants {
    let n = g.n();
    let triangles = g.triangles();
    let mut edge_in_tri = vec![false; n * n];
    // third vertices for each triangle edge (i, k)
    let mut thirds: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for &[a, b, c] in &triangles {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            edge_in_tri[x * n + y] = true;
            edge_in_tri[y * n + x] = true;
            thirds[x * n + y].push(z);
            thirds[y * n + x].push(z);
        }
    }
    let alpha: Vec<f64> = (0..n)
        .map(|i| {
            let s = (0..n).filter(|&j| edge_in_tri[i * n + j]).fold(0.0, |acc, j| acc + g.weight(i, j));
            s / g.degree(i)
        })
        .collect();
    if triangles.is_empty() {
        return ClusteringConstants {
            c0: 0.0,
            alpha,
            w_tri: 0.0,
            d_bar: 0.0,
            h: 0.0,
            triangle_count: 0,
        };
    }
    let c0 = g
        .edges()
        .filter(|&(i, j, _)| i != j)
        .map(|(i, j, _)| 0.5 * (alpha[i] + alpha[j]))
        .fold(f64::INFINITY, f64::min);
    let mut w2 = f64::INFINITY;
    let mut d_bar: f64 = 0.0;
    for i in 0..n {
        if alpha[i] == 0.0 {
            continue;
        }
        d_bar = d_bar.max(g.degree(i));
        for k in 0..n {
            if !edge_in_tri[i * n + k] {
                continue;
            }
            let a: f64 = thirds[i * n + k]
                .iter()
                .map(|&l| g.degree(i) / g.degree(l) * g.weight(l, i) * g.weight(l, k) / g.weight(i, k))
                .sum();
            w2 = w2.min(a);
        }
    }
    let w_tri = w2.sqrt();
    let q = w_tri / (1.0 + w_tri);
    ClusteringConstants {
        c0,
        alpha,
        w_tri,
        d_bar,
        h: c0 * q * q / (2.0 * d_bar),
        triangle_count: triangles.len(),
    }
}

/// `λ_{N−1} ≤ 2 − H`.
pub fn clustering_upper(g: &WeightedGraph) -> BoundReport {
    let c = clustering_constants(g);
    BoundReport::new("clustering_upper", Target::LambdaMax)
        .upper(2.0 - c.h)
        .input("C0", c.c0)
        .input("W", c.w_tri)
        .input("d_bar", c.d_bar)
        .input("H", c.h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn triangle() {
        let c = clustering_constants(&complete_graph(3).unwrap());
        assert_eq!(c.alpha, vec![1.0, 1.0, 1.0]);
        assert_eq!((c.c0, c.w_tri, c.d_bar), (1.0, 1.0, 2.0));
        assert_eq!(c.h, 1.0 / 16.0);
        assert_eq!(clustering_upper(&complete_graph(3).unwrap()).upper, Some(1.9375));
    }

    #[test]
    fn triangle_free() {
        for g in [cycle_graph(4).unwrap(), cycle_graph(5).unwrap()] {
            let c = clustering_constants(&g);
            assert_eq!((c.c0, c.h), (0.0, 0.0));
        }
        assert_eq!(clustering_upper(&cycle_graph(4).unwrap()).upper, Some(2.0));
    }

    #[test]
    fn k4_by_hand() {
        // every edge lies in two triangles: A(i) = 2, W = √2, d̄ = 3
        let c = clustering_constants(&complete_graph(4).unwrap());
        assert_eq!(c.c0, 1.0);
        assert!((c.w_tri - 2f64.sqrt()).abs() < 1e-15);
        let q = 2f64.sqrt() / (1.0 + 2f64.sqrt());
        assert!((c.h - q * q / 6.0).abs() < 1e-15);
    }
}
