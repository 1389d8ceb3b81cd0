//! Closed-form eigenvalue bounds and the machinery to check them against an
//! exact spectrum.
//!
//! Every bound exists at two levels: a constant-level function that takes
//! precomputed `h`, `h̄`, … and a graph-level function that computes the
//! constants itself (subject to the enumeration caps in [`Caps`]).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{GraphError, Result};
use crate::spectral::Spectrum;

mod clustering;
mod curves;
mod direct;
mod identity;
mod lifted;

pub use clustering::{clustering_constants, clustering_upper, ClusteringConstants};
pub use curves::{bound_curves, curves_csv, CurveFamily, CurveRow};
pub use direct::{
    cheeger_bounds, combined_lower, dual_cheeger_bounds, eigenfunction_diameter_upper,
    localized_upper, poincare_upper, xi_dual_upper, xi_product_upper,
};
pub use identity::{lambda_identity_check, IdentityReport};
pub use lifted::{
    dual_odd_upper, gap_around_one, improvement_predicates, interval_contains_generic,
    neighborhood_constants, neighborhood_gap_generic, neighborhood_interval,
    neighborhood_lower_generic, neighborhood_sandwich, neighborhood_upper_generic,
    neighborhood_upper_or, ImprovementReport, LiftedConstants,
};

/// What a [`BoundReport`] constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Target {
    /// `lower ≤ λ_1 ≤ upper`.
    Lambda1,
    /// `lower ≤ λ_{N−1} ≤ upper`.
    LambdaMax,
    /// Every `λ_k`, `k ≥ 1`, lies in `[lower, upper]`.
    NonzeroSpectrum,
    /// No eigenvalue lies in the open interval `(lower, upper)`.
    GapAroundOne,
    /// Some eigenvalue lies in `[lower, upper]`, or, when branches are
    /// present, at least one branch holds.
    IntervalContainsSome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub text: String,
    pub holds: bool,
}

/// One alternative of a disjunctive report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch {
    pub target: Target,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub target: Target,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub conditions: Vec<Condition>,
    pub inputs: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<Branch>,
}

impl BoundReport {
    pub(crate) fn new(name: &str, target: Target) -> Self {
        BoundReport {
            name: name.to_string(),
            target,
            lower: None,
            upper: None,
            conditions: Vec::new(),
            inputs: BTreeMap::new(),
            branches: Vec::new(),
        }
    }

    pub(crate) fn lower(mut self, v: f64) -> Self {
        self.lower = Some(v);
        self
    }

    pub(crate) fn upper(mut self, v: f64) -> Self {
        self.upper = Some(v);
        self
    }

    pub(crate) fn input(mut self, key: &str, v: f64) -> Self {
        self.inputs.insert(key.to_string(), v);
        self
    }

    pub(crate) fn condition(mut self, text: &str, holds: bool) -> Self {
        self.conditions.push(Condition {
            text: text.to_string(),
            holds,
        });
        self
    }

    pub(crate) fn branch(mut self, target: Target, lower: Option<f64>, upper: Option<f64>) -> Self {
        self.branches.push(Branch { target, lower, upper });
        self
    }

    /// All stated conditions hold.
    pub fn applicable(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    /// Whether the report is true of `s` within `tol`; `None` when the
    /// report is inapplicable.
    pub fn consistent_with(&self, s: &Spectrum, tol: f64) -> Option<bool> {
        if !self.applicable() {
            return None;
        }
        if !self.branches.is_empty() {
            return Some(
                self.branches
                    .iter()
                    .any(|b| target_holds(b.target, b.lower, b.upper, s, tol)),
            );
        }
        Some(target_holds(self.target, self.lower, self.upper, s, tol))
    }
}

fn within(x: f64, lower: Option<f64>, upper: Option<f64>, tol: f64) -> bool {
    lower.is_none_or(|lo| x >= lo - tol) && upper.is_none_or(|hi| x <= hi + tol)
}

fn target_holds(t: Target, lower: Option<f64>, upper: Option<f64>, s: &Spectrum, tol: f64) -> bool {
    let nonzero = &s.eigenvalues[1.min(s.len())..];
    match t {
        Target::Lambda1 => s.lambda1().is_none_or(|l| within(l, lower, upper, tol)),
        Target::LambdaMax => within(s.lambda_max(), lower, upper, tol),
        Target::NonzeroSpectrum => nonzero.iter().all(|&l| within(l, lower, upper, tol)),
        Target::GapAroundOne => {
            let (lo, hi) = (lower.unwrap_or(1.0), upper.unwrap_or(1.0));
            s.eigenvalues.iter().all(|&l| l <= lo + tol || l >= hi - tol)
        }
        Target::IntervalContainsSome => s.eigenvalues.iter().any(|&l| within(l, lower, upper, tol)),
    }
}

/// Enumeration limits for constants computed on `Γ` and `Γ[l]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Caps {
    pub h: Option<usize>,
    pub hbar: Option<usize>,
}

pub(crate) fn check_unit(name: &str, v: f64, hi: f64) -> Result<()> {
    if !(0.0..=hi).contains(&v) {
        return Err(GraphError::invalid(format!("{name} = {v} outside [0, {hi}]")));
    }
    Ok(())
}

/// Real `l`-th root; negative radicands are allowed for odd `l`.
pub(crate) fn real_root(x: f64, l: usize) -> f64 {
    let e = 1.0 / l as f64;
    if x < 0.0 && l % 2 == 1 {
        -(-x).powf(e)
    } else {
        x.powf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(eigs: &[f64]) -> Spectrum {
        Spectrum {
            eigenvalues: eigs.to_vec(),
            eigenfunctions: vec![vec![0.0; eigs.len()]; eigs.len()],
            residual: 0.0,
        }
    }

    #[test]
    fn targets() {
        let s = spec(&[0.0, 0.5, 1.5]);
        let r = BoundReport::new("t", Target::Lambda1).lower(0.4).upper(0.6);
        assert_eq!(r.consistent_with(&s, 0.0), Some(true));
        let r = BoundReport::new("t", Target::GapAroundOne).lower(0.5).upper(1.5);
        assert_eq!(r.consistent_with(&s, 0.0), Some(true));
        let r = BoundReport::new("t", Target::GapAroundOne).lower(0.4).upper(1.5);
        assert_eq!(r.consistent_with(&s, 0.0), Some(false));
        let r = BoundReport::new("t", Target::IntervalContainsSome)
            .branch(Target::Lambda1, None, Some(0.1))
            .branch(Target::LambdaMax, Some(1.2), None);
        assert_eq!(r.consistent_with(&s, 0.0), Some(true));
        let r = r.condition("never", false);
        assert_eq!(r.consistent_with(&s, 0.0), None);
    }

    #[test]
    fn roots() {
        assert_eq!(real_root(-8.0, 3), -2.0);
        assert_eq!(real_root(16.0, 4), 2.0);
        assert!(real_root(-1.0, 2).is_nan());
    }
}
