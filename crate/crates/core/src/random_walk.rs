//! The random walk `P = D⁻¹W`: convergence of `P^t f` to its equilibrium
//! value and the limits of `Γ[l]` as `l → ∞`.

use serde::Serialize;

use crate::error::{ErrorKind, GraphError, Result};
use crate::graph::WeightedGraph;
use crate::neighborhood::neighborhood_weights_raw;
use crate::partition::cheeger_exact_unchecked;
use crate::spectral::{apply_transition, degree_norm, spectral_radius_rho, spectrum};

/// The constant function at `(1/vol V) Σ_j d_j f(j)`.
pub fn equilibrium_projection(g: &WeightedGraph, f: &[f64]) -> Vec<f64> {
    let mean: f64 = g.degrees().iter().zip(f).map(|(d, x)| d * x).sum::<f64>() / g.volume();
    vec![mean; g.n()]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkReport {
    pub t: usize,
    /// `‖P^t f − f̄‖` in the degree norm.
    pub deviation: f64,
    /// `ρ^t ‖f‖`.
    pub bound_rho: f64,
    /// `(1 − h[l]²)^{t/2l} ‖f‖` for the requested even `l`.
    pub bound_hl: Option<f64>,
}

/// Trajectory of deviations for `t = 0..=t_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkTrajectory {
    pub rho: f64,
    /// `ρ < 1`, i.e. connected and not bipartite.
    pub converges: bool,
    pub h_l: Option<f64>,
    pub rows: Vec<WalkReport>,
}

impl WalkTrajectory {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,deviation,bound_rho,bound_hl\n");
        for r in &self.rows {
            let hl = r.bound_hl.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", r.t, r.deviation, r.bound_rho, hl));
        }
        out
    }
}

/// Iterates `P` on `f` for `t_max` steps. The `h[l]` bound is reported
/// only for even `l` on a non-bipartite graph.
pub fn walk_trajectory(
    g: &WeightedGraph,
    f: &[f64],
    t_max: usize,
    l_even: Option<usize>,
) -> Result<WalkTrajectory> {
    if f.len() != g.n() {
        return Err(GraphError::invalid(format!(
            "function has {} values for {} vertices",
            f.len(),
            g.n()
        )));
    }
    let s = spectrum(g)?;
    let rho = spectral_radius_rho(&s);
    let h_l = match l_even {
        Some(l) if l == 0 || l % 2 == 1 => {
            return Err(GraphError::invalid(format!("l = {l} must be a positive even integer")))
        }
        Some(l) if !g.is_bipartite() => {
            let gl = crate::neighborhood::neighborhood_graph(g, l)?;
            Some((l, cheeger_exact_unchecked(&gl, None)?.value))
        }
        _ => None,
    };
    let fbar = equilibrium_projection(g, f);
    let norm_f = degree_norm(g, f);
    let mut x = f.to_vec();
    let mut rows = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let diff: Vec<f64> = x.iter().zip(&fbar).map(|(a, b)| a - b).collect();
        rows.push(WalkReport {
            t,
            deviation: degree_norm(g, &diff),
            bound_rho: rho.powi(t as i32) * norm_f,
            bound_hl: h_l.map(|(l, h)| (1.0 - h * h).powf(t as f64 / (2 * l) as f64) * norm_f),
        });
        if t < t_max {
            x = apply_transition(g, &x);
        }
    }
    Ok(WalkTrajectory {
        rho,
        converges: !g.is_bipartite(),
        h_l: h_l.map(|(_, h)| h),
        rows,
    })
}

/// Single-time report at step `t`.
pub fn walk_deviation(g: &WeightedGraph, f: &[f64], t: usize, l_even: Option<usize>) -> Result<WalkReport> {
    Ok(walk_trajectory(g, f, t, l_even)?.rows.pop().expect("t + 1 rows"))
}

/// Steps after which `ρ^t ≤ ε`: `⌈ln ε / ln ρ⌉`. `None` if `ρ ≥ 1`.
pub fn mixing_steps(rho: f64, eps: f64) -> Option<usize> {
    if !(eps > 0.0 && eps < 1.0) || rho >= 1.0 {
        return None;
    }
    if rho == 0.0 {
        return Some(1);
    }
    Some((eps.ln() / rho.ln()).ceil() as usize)
}

/// `W̄_ij = d_i d_j / vol V`, the limit of `W[l]` for non-bipartite graphs.
pub fn equilibrium_graph(g: &WeightedGraph) -> Result<WeightedGraph> {
    g.require_connected()?;
    if g.is_bipartite() {
        return Err(GraphError::new(
            ErrorKind::Bipartite,
            "W[l] has no limit on a bipartite graph; use bipartite_limits",
        ));
    }
    let n = g.n();
    let vol = g.volume();
    let d = g.degrees();
    let w = (0..n * n).map(|k| d[k / n] * d[k % n] / vol).collect();
    WeightedGraph::from_dense(n, w)
}

/// Limits of `W[2m]` and `W[2m+1]` on a bipartite graph: entries
/// `2 d_i d_j / vol V` within the color classes (even) or across them (odd).
pub fn bipartite_limits(g: &WeightedGraph) -> Result<(WeightedGraph, WeightedGraph)> {
    g.require_connected()?;
    let color = g.two_coloring().ok_or_else(|| {
        GraphError::new(ErrorKind::NotBipartite, "bipartite limits need a bipartite graph")
    })?;
    let n = g.n();
    let vol = g.volume();
    let d = g.degrees();
    let mut even = vec![0.0; n * n];
    let mut odd = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = 2.0 * d[i] * d[j] / vol;
            if color[i] == color[j] {
                even[i * n + j] = v;
            } else {
                odd[i * n + j] = v;
            }
        }
    }
    Ok((WeightedGraph::from_dense(n, even)?, WeightedGraph::from_dense(n, odd)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub l: usize,
    /// `max_ij |W[l]_ij − W̄_ij|`.
    pub distance: f64,
    /// `ρ^l vol V`.
    pub bound: f64,
}

/// Distance of `W[l]` from the equilibrium graph for `l = 1..=l_max`.
pub fn neighborhood_limit_check(g: &WeightedGraph, l_max: usize) -> Result<Vec<LimitRow>> {
    let limit = equilibrium_graph(g)?;
    let rho = spectral_radius_rho(&spectrum(g)?);
    let vol = g.volume();
    (1..=l_max)
        .map(|l| {
            let w = neighborhood_weights_raw(g, l)?;
            let distance = w
                .iter()
                .zip(limit.weights())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(LimitRow {
                l,
                distance,
                bound: rho.powi(l as i32) * vol,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn projections() {
        let k2 = complete_graph(2).unwrap();
        assert_eq!(equilibrium_projection(&k2, &[1.0, 0.0]), vec![0.5, 0.5]);
        let e3 = example3_graph(1.0).unwrap();
        assert_eq!(equilibrium_projection(&e3, &[2.0, 0.0]), vec![1.0, 1.0]);
        assert_eq!(equilibrium_projection(&e3, &[3.0, 3.0]), vec![3.0, 3.0]);
    }

    #[test]
    fn bipartite_does_not_decay() {
        let c4 = cycle_graph(4).unwrap();
        let tr = walk_trajectory(&c4, &[1.0, 0.0, -1.0, 0.0], 10, Some(2)).unwrap();
        assert!(!tr.converges);
        assert_eq!(tr.h_l, None);
        assert!(tr.rows.iter().all(|r| r.bound_hl.is_none() && r.deviation <= r.bound_rho + 1e-12));
        // eigenfunction for λ = 1: killed in one step
        assert_eq!(tr.rows[1].deviation, 0.0);
        // eigenfunction for λ = 2 alternates sign forever
        let tr = walk_trajectory(&c4, &[1.0, -1.0, 1.0, -1.0], 10, None).unwrap();
        let first = tr.rows[0].deviation;
        assert!(tr.rows.iter().all(|r| (r.deviation - first).abs() < 1e-12));
    }

    #[test]
    fn complete_graph_rate() {
        let k5 = complete_graph(5).unwrap();
        let mut f = vec![0.0; 5];
        f[0] = 1.0;
        let r = walk_deviation(&k5, &f, 4, Some(2)).unwrap();
        assert!(r.deviation <= r.bound_rho + 1e-12);
        assert!(r.deviation <= r.bound_hl.unwrap() + 1e-12);
        let r0 = walk_deviation(&k5, &f, 0, None).unwrap();
        assert!(r0.deviation <= r0.bound_rho);
    }

    #[test]
    fn mixing() {
        assert_eq!(mixing_steps(0.5, 0.01), Some(7));
        assert_eq!(mixing_steps(1.0, 0.01), None);
        assert_eq!(mixing_steps(0.0, 0.01), Some(1));
    }

    #[test]
    fn equilibrium() {
        let c = 0.7;
        let w = equilibrium_graph(&example3_graph(c).unwrap()).unwrap();
        assert!(w.weights().iter().all(|&x| (x - (1.0 + c) / 2.0).abs() < 1e-15));
        assert_eq!(equilibrium_graph(&cycle_graph(4).unwrap()).unwrap_err().kind, ErrorKind::Bipartite);
    }

    #[test]
    fn bipartite_limit_blocks() {
        let (even, odd) = bipartite_limits(&cycle_graph(4).unwrap()).unwrap();
        assert_eq!(even.weight(0, 2), 1.0);
        assert_eq!(even.weight(0, 1), 0.0);
        assert_eq!(even.component_count(), 2);
        assert_eq!(odd.weight(0, 1), 1.0);
        let (even, odd) = bipartite_limits(&complete_graph(2).unwrap()).unwrap();
        assert_eq!((even.weight(0, 0), even.weight(0, 1)), (1.0, 0.0));
        assert_eq!(odd.weight(0, 1), 1.0);
        let e = bipartite_limits(&complete_graph(3).unwrap()).unwrap_err();
        assert_eq!(e.kind, ErrorKind::NotBipartite);
    }

    #[test]
    fn limit_check() {
        let rows = neighborhood_limit_check(&example3_graph(1.0).unwrap(), 3).unwrap();
        assert!(rows[1].distance < 1e-15);
        let rows = neighborhood_limit_check(&complete_graph(3).unwrap(), 20).unwrap();
        for r in &rows {
            assert!(r.distance <= r.bound + 1e-12);
        }
        assert!(rows[19].distance < 1e-5);
    }
}
