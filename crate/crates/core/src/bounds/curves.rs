//! Bound curves over the parametric fixture families, as CSV.

use std::fmt::Write as _;

use serde::Serialize;

use super::{real_root, Caps};
use crate::error::{GraphError, Result};
use crate::generators::{complete_graph, example3_graph, example4_graph};
use crate::graph::WeightedGraph;
use crate::neighborhood::neighborhood_graph;
use crate::partition::{cheeger_exact_unchecked, dual_cheeger_exact_unchecked};
use crate::spectral::spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    Example3,
    Example4,
    /// Complete graphs; the parameter is `N`.
    Complete,
}

impl CurveFamily {
    pub fn build(self, param: f64) -> Result<WeightedGraph> {
        match self {
            CurveFamily::Example3 => example3_graph(param),
            CurveFamily::Example4 => example4_graph(param),
            CurveFamily::Complete => {
                if param.fract() != 0.0 || param < 1.0 {
                    return Err(GraphError::invalid(format!("complete graph size {param} is not a positive integer")));
                }
                complete_graph(param as usize)
            }
        }
    }
}

impl std::str::FromStr for CurveFamily {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example3" => Ok(CurveFamily::Example3),
            "example4" => Ok(CurveFamily::Example4),
            "complete" | "K_N" | "kn" => Ok(CurveFamily::Complete),
            other => Err(GraphError::invalid(format!("unknown curve family {other:?}"))),
        }
    }
}

/// One `(param, l)` point. `None` cells could not be computed or are
/// undefined for this `l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub param: f64,
    pub l: usize,
    /// `1 − (1 − h[l]²)^{1/2l}`.
    pub lower: Option<f64>,
    /// `1 − (1 − 2h[l])^{1/l}`.
    pub upper_coro6: Option<f64>,
    /// Odd `l`, or `2h[l] ≤ 1` together with `λ_1 ≤ 2 − λ_{N−1}`.
    pub coro6_applicable: Option<bool>,
    /// `1 + (1 − (1 − h̄[l])²)^{1/2l}`, odd `l` only.
    pub upper_coro59: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda_max: Option<f64>,
}

fn row(family: CurveFamily, param: f64, l: usize, caps: Caps) -> CurveRow {
    let mut out = CurveRow {
        param,
        l,
        lower: None,
        upper_coro6: None,
        coro6_applicable: None,
        upper_coro59: None,
        lambda1: None,
        lambda_max: None,
    };
    let Ok(g) = family.build(param) else { return out };
    if let Ok(s) = spectrum(&g) {
        out.lambda1 = s.lambda1();
        out.lambda_max = Some(s.lambda_max());
    }
    if l == 0 {
        return out;
    }
    let Ok(gl) = neighborhood_graph(&g, l) else { return out };
    let le = 1.0 / l as f64;
    if let Ok(h) = cheeger_exact_unchecked(&gl, caps.h).map(|r| r.value) {
        out.lower = Some(1.0 - (1.0 - h * h).powf(le / 2.0));
        let odd = l % 2 == 1;
        if odd || 2.0 * h <= 1.0 {
            out.upper_coro6 = Some(1.0 - real_root(1.0 - 2.0 * h, l));
        }
        let side = match (out.lambda1, out.lambda_max) {
            (Some(a), Some(b)) => Some(a <= 2.0 - b),
            _ => None,
        };
        out.coro6_applicable = if odd { Some(true) } else { side.map(|s| s && 2.0 * h <= 1.0) };
    }
    if l % 2 == 1 {
        if let Ok(hb) = dual_cheeger_exact_unchecked(&gl, caps.hbar).map(|r| r.value) {
            out.upper_coro59 = Some(1.0 + (1.0 - (1.0 - hb).powi(2)).powf(le / 2.0));
        }
    }
    out
}

/// Rows ordered by `(param, l)` in the order given.
pub fn bound_curves(family: CurveFamily, params: &[f64], l_list: &[usize], caps: Caps) -> Vec<CurveRow> {
    params
        .iter()
        .flat_map(|&p| l_list.iter().map(move |&l| row(family, p, l, caps)))
        .collect()
}

pub fn curves_csv(rows: &[CurveRow]) -> String {
    fn cell<T: ToString>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut out = String::from("param,l,lower,upper_coro6,coro6_applicable,upper_coro59,lambda1,lambdaMax\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.param,
            r.l,
            cell(r.lower),
            cell(r.upper_coro6),
            cell(r.coro6_applicable),
            cell(r.upper_coro59),
            cell(r.lambda1),
            cell(r.lambda_max)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example3_cheeger_wins_at_one() {
        let rows = bound_curves(CurveFamily::Example3, &[1.0], &[1, 2, 3, 4, 5], Caps::default());
        let l1 = rows[0].lower.unwrap();
        assert!(rows[1..].iter().all(|r| r.lower.unwrap() <= l1 + 1e-15));
    }

    #[test]
    fn csv_shape() {
        let rows = bound_curves(CurveFamily::Complete, &[3.0, 4.0], &[1, 2], Caps::default());
        let csv = curves_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().all(|l| l.split(',').count() == 8));
        let bad = bound_curves(CurveFamily::Complete, &[2.5], &[1], Caps::default());
        assert_eq!(bad[0].lower, None);
    }
}
