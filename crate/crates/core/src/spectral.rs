//! Spectrum of the normalized Laplacian `Δ = I − D⁻¹W`.
//!
//! `Δ` is self-adjoint for `(u, v)_Γ = Σ d_i u(i) v(i)`, so it is
//! diagonalized through the symmetric conjugate `D^{-1/2}(D − W)D^{-1/2}`
//! and the eigenvectors are mapped back by `D^{-1/2}`.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::WeightedGraph;
use crate::linalg::jacobi_eigen;

const JACOBI_TOL: f64 = 1e-12;

pub fn degree_inner_product(g: &WeightedGraph, u: &[f64], v: &[f64]) -> f64 {
    g.degrees().iter().zip(u).zip(v).map(|((d, a), b)| d * a * b).sum()
}

pub fn degree_norm(g: &WeightedGraph, u: &[f64]) -> f64 {
    degree_inner_product(g, u, u).sqrt()
}

/// `(P v)(i) = (1/d_i) Σ_j w_ij v(j)`.
pub fn apply_transition(g: &WeightedGraph, v: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|i| {
            let s: f64 = g.row(i).iter().zip(v).map(|(w, x)| w * x).sum();
            s / g.degree(i)
        })
        .collect()
}

/// `(Δ v)(i) = v(i) − (1/d_i) Σ_j w_ij v(j)`.
pub fn apply_laplacian(g: &WeightedGraph, v: &[f64]) -> Vec<f64> {
    let pv = apply_transition(g, v);
    v.iter().zip(pv).map(|(a, b)| a - b).collect()
}

/// `Σ_{i<j} w_ij (u(i) − u(j))² / Σ_i d_i u(i)²`; loops contribute nothing.
pub fn rayleigh_quotient(g: &WeightedGraph, u: &[f64]) -> Result<f64> {
    let den = degree_inner_product(g, u, u);
    if den == 0.0 {
        return Err(GraphError::invalid("Rayleigh quotient of the zero function"));
    }
    let num: f64 = g
        .edges()
        .filter(|&(i, j, _)| i != j)
        .map(|(i, j, w)| w * (u[i] - u[j]).powi(2))
        .sum();
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenfunctions[k]` belongs to `eigenvalues[k]`; orthonormal in `(·,·)_Γ`.
    pub eigenfunctions: Vec<Vec<f64>>,
    /// Largest degree norm of `Δu_k − λ_k u_k`.
    pub residual: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Smallest nonzero-index eigenvalue; `None` for a single vertex.
    pub fn lambda1(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    pub fn top_eigenfunction(&self) -> &[f64] {
        self.eigenfunctions.last().expect("nonempty spectrum")
    }
}

/// Spectrum of a connected graph.
pub fn spectrum(g: &WeightedGraph) -> Result<Spectrum> {
    g.require_connected()?;
    Ok(raw_spectrum(g))
}

/// Spectrum without the connectivity check; used for neighborhood graphs,
/// which may split into components.
pub fn raw_spectrum(g: &WeightedGraph) -> Spectrum {
    let n = g.n();
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|d| 1.0 / d.sqrt()).collect();
    let mut lsym = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { 1.0 } else { 0.0 };
            lsym[i * n + j] = delta - g.weight(i, j) * inv_sqrt[i] * inv_sqrt[j];
        }
    }
    let eig = jacobi_eigen(n, &lsym, JACOBI_TOL);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.values[a].total_cmp(&eig.values[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.values[k]).collect();

    let mut funcs: Vec<Vec<f64>> = Vec::with_capacity(n);
    for &k in &order {
        let mut u: Vec<f64> = eig.vectors[k].iter().zip(&inv_sqrt).map(|(v, s)| v * s).collect();
        // modified Gram-Schmidt in the degree inner product
        for prev in &funcs {
            let c = degree_inner_product(g, &u, prev);
            for (x, p) in u.iter_mut().zip(prev) {
                *x -= c * p;
            }
        }
        let norm = degree_norm(g, &u);
        for x in u.iter_mut() {
            *x /= norm;
        }
        normalize_sign(&mut u);
        funcs.push(u);
    }

    let residual = eigenvalues
        .iter()
        .zip(&funcs)
        .map(|(&lam, u)| {
            let r: Vec<f64> = apply_laplacian(g, u)
                .iter()
                .zip(u)
                .map(|(a, b)| a - lam * b)
                .collect();
            degree_norm(g, &r)
        })
        .fold(0.0, f64::max);

    Spectrum {
        eigenvalues,
        eigenfunctions: funcs,
        residual,
    }
}

/// Makes the first coordinate of non-negligible magnitude positive.
fn normalize_sign(u: &mut [f64]) {
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(&first) = u.iter().find(|x| x.abs() > 1e-10 * scale) {
        if first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// `ρ = max_{k≠0} |1 − λ_k|`; zero for a single vertex.
pub fn spectral_radius_rho(s: &Spectrum) -> f64 {
    if s.len() < 2 {
        return 0.0;
    }
    (1.0 - s.eigenvalues[1]).abs().max((1.0 - s.lambda_max()).abs())
}
