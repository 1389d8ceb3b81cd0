//! Two exact expressions for `2 − λ` in terms of an eigenfunction, used as
//! numerical self-checks of a computed spectrum.

use serde::Serialize;

use crate::graph::WeightedGraph;
use crate::spectral::Spectrum;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    /// Largest `|RHS − (2 − λ)|` for the two-step walk form.
    pub max_residual_two_step: f64,
    /// Largest `|RHS − (2 − λ)|` for the averaged-difference form.
    pub max_residual_averaged: f64,
    /// Eigenpairs checked (those with `λ > 1e-9`).
    pub checked: usize,
}

/// Evaluates, for every eigenpair with `λ ≠ 0`,
///
/// `Σ_i (1/d_i) Σ_{j,k} w_ij w_ik (u_j − u_k)² / Σ_{i,j} w_ij (u_i − u_j)²` and
/// `2 Σ_{i,k} w_ik ((1/d_i) Σ_j w_ij (u_j − u_k))² / Σ_{i,j} w_ij (u_i − u_j)²`,
///
/// both of which equal `2 − λ`.
pub fn lambda_identity_check(g: &WeightedGraph, s: &Spectrum) -> IdentityReport {
    let n = g.n();
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    let mut checked = 0;
    for (&lam, u) in s.eigenvalues.iter().zip(&s.eigenfunctions) {
        if lam <= 1e-9 {
            continue;
        }
        checked += 1;
        let mut den = 0.0;
        let mut num1 = 0.0;
        let mut num2 = 0.0;
        for i in 0..n {
            let row = g.row(i);
            let di = g.degree(i);
            let mut s1 = 0.0;
            for j in 0..n {
                den += row[j] * (u[i] - u[j]).powi(2);
                for k in 0..n {
                    s1 += row[j] * row[k] * (u[j] - u[k]).powi(2);
                }
            }
            num1 += s1 / di;
            let pu: f64 = row.iter().zip(u).map(|(w, x)| w * x).sum::<f64>() / di;
            for k in 0..n {
                // (1/d_i) Σ_j w_ij (u_j − u_k) = (Pu)(i) − u_k
                num2 += row[k] * (pu - u[k]).powi(2);
            }
        }
        r1 = r1.max((num1 / den - (2.0 - lam)).abs());
        r2 = r2.max((2.0 * num2 / den - (2.0 - lam)).abs());
    }
    IdentityReport {
        max_residual_two_step: r1,
        max_residual_averaged: r2,
        checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::spectral::spectrum;

    #[test]
    fn fixtures() {
        for g in [complete_graph(2).unwrap(), complete_graph(3).unwrap(), example3_graph(2.0).unwrap()] {
            let r = lambda_identity_check(&g, &spectrum(&g).unwrap());
            assert!(r.checked >= 1);
            assert!(r.max_residual_two_step < 1e-8, "{r:?}");
            assert!(r.max_residual_averaged < 1e-8, "{r:?}");
        }
    }
}
