//! Neighborhood graphs `Γ[l]` with weights `W[l] = W (D⁻¹W)^{l−1}`, which
//! sum `w_{i k1}/d_{k1} · … · w_{k_{l−1} j}` over all walks of length `l`.

use serde::Serialize;

use crate::error::{GraphError, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{identity, matmul};
use crate::spectral::{raw_spectrum, spectrum};

/// Above this `l` the power of `D⁻¹W` is formed by repeated squaring.
const REPEATED_PRODUCT_MAX: usize = 64;
/// Entries below this fraction of the largest entry are dropped.
const TRUNCATION: f64 = 1e-14;

fn transition_matrix(g: &WeightedGraph) -> Vec<f64> {
    let n = g.n();
    let mut p = g.weights().to_vec();
    for i in 0..n {
        let d = g.degree(i);
        p[i * n..(i + 1) * n].iter_mut().for_each(|x| *x /= d);
    }
    p
}

/// `(D⁻¹W)^k` as a dense row-major matrix.
pub fn transition_power(g: &WeightedGraph, k: usize) -> Vec<f64> {
    let n = g.n();
    let p = transition_matrix(g);
    if k <= REPEATED_PRODUCT_MAX {
        let mut acc = identity(n);
        for _ in 0..k {
            acc = matmul(n, &acc, &p);
        }
        return acc;
    }
    let mut result = identity(n);
    let mut base = p;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = matmul(n, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = matmul(n, &base, &base);
        }
    }
    result
}

/// `W[l]` before symmetrization and truncation.
pub fn neighborhood_weights_raw(g: &WeightedGraph, l: usize) -> Result<Vec<f64>> {
    if l == 0 {
        return Err(GraphError::invalid("neighborhood order l must be >= 1"));
    }
    Ok(matmul(g.n(), g.weights(), &transition_power(g, l - 1)))
}

/// The neighborhood graph `Γ[l]` of a connected graph.
///
/// The weight matrix is symmetrized by averaging `w_ij` and `w_ji` and
/// floating-point dust below `1e-14 · max w` is set to zero. `Γ[l]` can be
/// disconnected (bipartite input with even `l`).
pub fn neighborhood_graph(g: &WeightedGraph, l: usize) -> Result<WeightedGraph> {
    g.require_connected()?;
    if l == 1 {
        return Ok(g.clone());
    }
    let n = g.n();
    let raw = neighborhood_weights_raw(g, l)?;
    let max = raw.iter().copied().fold(0.0, f64::max);
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let avg = 0.5 * (raw[i * n + j] + raw[j * n + i]);
            let v = if avg < TRUNCATION * max { 0.0 } else { avg };
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    }
    WeightedGraph::from_dense(n, w)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralMapReport {
    pub l: usize,
    /// `1 − (1 − λ_k)^l`, sorted.
    pub mapped: Vec<f64>,
    /// Spectrum of `Γ[l]`, sorted.
    pub direct: Vec<f64>,
    pub max_mismatch: f64,
}

/// Compares the spectrum of `Γ[l]` with the image of the spectrum of `Γ`
/// under `λ ↦ 1 − (1 − λ)^l`.
pub fn spectral_map_check(g: &WeightedGraph, l: usize) -> Result<SpectralMapReport> {
    let base = spectrum(g)?;
    let gl = neighborhood_graph(g, l)?;
    let direct = raw_spectrum(&gl).eigenvalues;
    let mut mapped: Vec<f64> = base
        .eigenvalues
        .iter()
        .map(|&lam| 1.0 - (1.0 - lam).powi(l as i32))
        .collect();
    mapped.sort_by(f64::total_cmp);
    let max_mismatch = mapped
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SpectralMapReport {
        l,
        mapped,
        direct,
        max_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn example3_second_neighborhood() {
        let c = 2.0;
        let g2 = neighborhood_graph(&example3_graph(c).unwrap(), 2).unwrap();
        let diag = (c * c + 1.0) / (1.0 + c);
        let off = 2.0 * c / (1.0 + c);
        assert!((g2.weight(0, 0) - diag).abs() < 1e-14);
        assert!((g2.weight(0, 1) - off).abs() < 1e-14);
    }

    #[test]
    fn degrees_preserved() {
        let g = example4_graph(0.7).unwrap();
        for l in 1..7 {
            let gl = neighborhood_graph(&g, l).unwrap();
            for i in 0..g.n() {
                assert!((gl.degree(i) - g.degree(i)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bipartite_even_splits() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(neighborhood_graph(&c4, 2).unwrap().component_count(), 2);
        let g3 = neighborhood_graph(&c4, 3).unwrap();
        assert!(g3.is_bipartite() && g3.is_connected());
    }

    #[test]
    fn squaring_path_agrees() {
        let g = example4_graph(0.5).unwrap();
        let a = transition_power(&g, 64);
        let b = matmul(g.n(), &transition_power(&g, 32), &transition_power(&g, 32));
        let c = transition_power(&g, 65);
        let d = matmul(g.n(), &a, &transition_power(&g, 1));
        for i in 0..a.len() {
            assert!((a[i] - b[i]).abs() < 1e-14);
            assert!((c[i] - d[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn spectral_map() {
        let r = spectral_map_check(&cycle_graph(4).unwrap(), 2).unwrap();
        assert!(r.max_mismatch < 1e-12);
        assert!(spectral_map_check(&complete_graph(5).unwrap(), 1).unwrap().max_mismatch < 1e-12);
        let r = spectral_map_check(&complete_graph(5).unwrap(), 3).unwrap();
        assert!((r.direct[4] - 1.015625).abs() < 1e-12);
    }

    #[test]
    fn order_zero_rejected() {
        assert!(neighborhood_weights_raw(&complete_graph(3).unwrap(), 0).is_err());
    }
}
