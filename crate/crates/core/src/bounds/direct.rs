//! Bounds stated directly in terms of `Γ`: Cheeger, dual Cheeger, their
//! combination, eigenfunction localization and odd-walk congestion.

use super::{check_unit, BoundReport, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::partition::{xi_constant, xi_product_bound, OddWalkFamily, TriPartition};
use crate::spectral::Spectrum;

/// `1 − √(1 − h²) ≤ λ_1 ≤ 2h`.
pub fn cheeger_bounds(h: f64) -> Result<BoundReport> {
    check_unit("h", h, 1.0)?;
    Ok(BoundReport::new("cheeger", Target::Lambda1)
        .lower(1.0 - (1.0 - h * h).sqrt())
        .upper(2.0 * h)
        .input("h", h))
}

/// `2h̄ ≤ λ_{N−1} ≤ 1 + √(1 − (1 − h̄)²)`.
pub fn dual_cheeger_bounds(hbar: f64) -> Result<BoundReport> {
    check_unit("hbar", hbar, 1.0)?;
    Ok(BoundReport::new("dual_cheeger", Target::LambdaMax)
        .lower(2.0 * hbar)
        .upper(1.0 + (1.0 - (1.0 - hbar).powi(2)).sqrt())
        .input("hbar", hbar))
}

/// `λ_{N−1} ≥ 2h̄ + R(V1,V2)·h` when `vol(V1 ∪ V2) ≤ vol(V3)`.
///
/// The underlying test-function argument works for any tripartition, so
/// the witness's own ratio `2|E(V1,V2)|/(vol V1 + vol V2)` stands in for `h̄`.
pub fn combined_lower(g: &WeightedGraph, witness: &TriPartition, h: f64) -> BoundReport {
    let vol12 = witness.vol1() + witness.vol2();
    let vol3 = g.volume_of(witness.v3());
    let ratio = witness.dual_ratio();
    let r = witness.balance_ratio();
    BoundReport::new("combined_lower", Target::LambdaMax)
        .lower(2.0 * ratio + r * h)
        .condition("vol(V1 ∪ V2) <= vol(V3)", vol12 <= vol3)
        .input("hbar", ratio)
        .input("h", h)
        .input("R", r)
        .input("vol12", vol12)
        .input("vol3", vol3)
}

/// Support of the top eigenfunction: `|u(i)| > 1e-10 · max |u|`.
const SUPPORT_THRESHOLD: f64 = 1e-10;

/// `λ_{N−1} ≤ 1 + √(1 − h²)` when the top eigenfunction is localized on at
/// most half of the volume.
pub fn localized_upper(g: &WeightedGraph, s: &Spectrum, h: f64) -> BoundReport {
    let u = s.top_eigenfunction();
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (mut vol_support, mut vol_zero) = (0.0, 0.0);
    for (i, x) in u.iter().enumerate() {
        if x.abs() > SUPPORT_THRESHOLD * scale {
            vol_support += g.degree(i);
        } else {
            vol_zero += g.degree(i);
        }
    }
    BoundReport::new("localized_upper", Target::LambdaMax)
        .upper(1.0 + (1.0 - h * h).max(0.0).sqrt())
        .condition("vol(supp u) <= vol(zero set of u)", vol_support <= vol_zero)
        .input("h", h)
        .input("vol_support", vol_support)
        .input("vol_zero", vol_zero)
}

/// `λ_{N−1} ≤ 2 − w_min (1 − min|u|)² / (D vol V)` with `u` the top
/// eigenfunction scaled to `max|u| = 1` and `D` the hop diameter.
pub fn eigenfunction_diameter_upper(g: &WeightedGraph, s: &Spectrum) -> BoundReport {
    let u = s.top_eigenfunction();
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let min_abs = u.iter().fold(f64::INFINITY, |m, x| m.min(x.abs())) / scale;
    let diameter = g.hop_diameter().unwrap_or(0) as f64;
    let w_min = g.min_edge_weight();
    let vol = g.volume();
    let report = BoundReport::new("eigenfunction_diameter_upper", Target::LambdaMax)
        .condition("diameter >= 1", diameter >= 1.0)
        .input("min_abs_u", min_abs)
        .input("diameter", diameter)
        .input("w_min", w_min)
        .input("vol", vol);
    if diameter >= 1.0 {
        report.upper(2.0 - w_min * (1.0 - min_abs).powi(2) / (diameter * vol))
    } else {
        report
    }
}

/// `λ_{N−1} ≤ 1 + √(1 − 1/ξ²)`, from `h̄ ≤ 1 − 1/ξ` and the dual Cheeger bound.
pub fn xi_dual_upper(g: &WeightedGraph, fam: &OddWalkFamily) -> Result<BoundReport> {
    let xi = xi_constant(g, fam)?;
    Ok(BoundReport::new("xi_dual_upper", Target::LambdaMax)
        .upper(1.0 + (1.0 - 1.0 / (xi.xi * xi.xi)).max(0.0).sqrt())
        .input("xi", xi.xi)
        .input("hbar_upper", xi.hbar_upper))
}

/// `λ_{N−1} ≤ 1 + √(1 − 1/(d_Γ w_Γ b_Γ)²)`.
pub fn xi_product_upper(g: &WeightedGraph, fam: &OddWalkFamily) -> Result<BoundReport> {
    let p = xi_product_bound(g, fam)?;
    Ok(BoundReport::new("xi_product_upper", Target::LambdaMax)
        .upper(p.dual_cheeger_upper)
        .input("d_gamma", p.d_gamma)
        .input("w_gamma", p.w_gamma)
        .input("b_gamma", p.b_gamma)
        .input("sigma_gamma", p.sigma_gamma as f64))
}

/// `λ_{N−1} ≤ 2 − 2/(d_Γ w_Γ b σ_Γ)`, with `b` counting edge traversals.
pub fn poincare_upper(g: &WeightedGraph, fam: &OddWalkFamily) -> Result<BoundReport> {
    let p = xi_product_bound(g, fam)?;
    Ok(BoundReport::new("poincare_upper", Target::LambdaMax)
        .upper(p.poincare_upper)
        .input("d_gamma", p.d_gamma)
        .input("w_gamma", p.w_gamma)
        .input("b_traversals", p.b_gamma_traversals)
        .input("sigma_gamma", p.sigma_gamma as f64)
        .input("dual_cheeger_preferred", if p.dual_cheeger_preferred { 1.0 } else { 0.0 }))
}
