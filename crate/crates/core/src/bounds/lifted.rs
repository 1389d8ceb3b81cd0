//! Bounds transported from `Γ[l]` back to `Γ` through the spectral map
//! `λ ↦ 1 − (1 − λ)^l`.
//!
//! Each generic form takes a bound on one eigenvalue of `Γ[l]` and inverts
//! the map. For even `l` the map only sees `|1 − λ|`, which is why the
//! even cases come out as sandwiches, disjunctions, intervals or gaps.

use std::collections::BTreeMap;

use serde::Serialize;

use super::clustering::clustering_constants;
use super::{check_unit, real_root, BoundReport, Caps, Target};
use crate::error::{GraphError, Result};
use crate::graph::WeightedGraph;
use crate::neighborhood::neighborhood_graph;
use crate::partition::{cheeger_exact_unchecked, cheeger_exact_with_cap, dual_cheeger_exact_unchecked};
use crate::spectral::spectrum;

fn check_order(l: usize) -> Result<()> {
    if l == 0 {
        return Err(GraphError::invalid("neighborhood order l must be >= 1"));
    }
    Ok(())
}

fn even(l: usize) -> bool {
    l.is_multiple_of(2)
}

/// From `A ≤ λ_1[l]`: for even `l` all nonzero eigenvalues lie in
/// `[1 − (1−A)^{1/l}, 1 + (1−A)^{1/l}]`; for odd `l`, `λ_1 ≥ 1 − (1−A)^{1/l}`.
pub fn neighborhood_lower_generic(l: usize, a: f64) -> Result<BoundReport> {
    check_order(l)?;
    check_unit("A[l]", a, if even(l) { 1.0 } else { 2.0 })?;
    let r = real_root(1.0 - a, l);
    let report = if even(l) {
        BoundReport::new("neighborhood_lower", Target::NonzeroSpectrum)
            .lower(1.0 - r)
            .upper(1.0 + r)
    } else {
        BoundReport::new("neighborhood_lower", Target::Lambda1).lower(1.0 - r)
    };
    Ok(report.input("l", l as f64).input("A_l", a))
}

/// From `λ_1[l] ≤ B`: for even `l`, `λ_1 ≤ 1 − (1−B)^{1/l}` or
/// `λ_{N−1} ≥ 1 + (1−B)^{1/l}`; for odd `l`, `λ_1 ≤ 1 − (1−B)^{1/l}`.
pub fn neighborhood_upper_generic(l: usize, b: f64) -> Result<BoundReport> {
    check_order(l)?;
    check_unit("B[l]", b, 2.0)?;
    let report = if even(l) {
        let ok = b <= 1.0;
        let r = BoundReport::new("neighborhood_upper_or", Target::IntervalContainsSome)
            .condition("B[l] <= 1", ok);
        if ok {
            let root = (1.0 - b).powf(1.0 / l as f64);
            r.branch(Target::Lambda1, None, Some(1.0 - root))
                .branch(Target::LambdaMax, Some(1.0 + root), None)
        } else {
            r
        }
    } else {
        BoundReport::new("neighborhood_upper_or", Target::Lambda1).upper(1.0 - real_root(1.0 - b, l))
    };
    Ok(report.input("l", l as f64).input("B_l", b))
}

/// From `C ≤ λ_{N−1}[l]`: for even `l` some eigenvalue lies in
/// `[1 − (1−C)^{1/l}, 1 + (1−C)^{1/l}]`; for odd `l`,
/// `λ_{N−1} ≥ 1 − (1−C)^{1/l}` (real root).
pub fn interval_contains_generic(l: usize, c: f64) -> Result<BoundReport> {
    check_order(l)?;
    check_unit("C[l]", c, 2.0)?;
    let report = if even(l) {
        let ok = c <= 1.0;
        let r = BoundReport::new("neighborhood_interval", Target::IntervalContainsSome)
            .condition("C[l] <= 1", ok);
        if ok {
            let root = (1.0 - c).powf(1.0 / l as f64);
            r.lower(1.0 - root).upper(1.0 + root)
        } else {
            r
        }
    } else {
        BoundReport::new("neighborhood_interval", Target::LambdaMax).lower(1.0 - real_root(1.0 - c, l))
    };
    Ok(report.input("l", l as f64).input("C_l", c))
}

/// From `λ_{N−1}[l] ≤ D`: for even `l` no eigenvalue lies in
/// `(1 − (1−D)^{1/l}, 1 + (1−D)^{1/l})`; for odd `l`,
/// `λ_{N−1} ≤ 1 − (1−D)^{1/l}` (real root).
pub fn neighborhood_gap_generic(l: usize, d: f64) -> Result<BoundReport> {
    check_order(l)?;
    if !d.is_finite() {
        return Err(GraphError::invalid("D[l] must be finite"));
    }
    let report = if even(l) {
        let ok = (0.0..=1.0).contains(&d);
        let r = BoundReport::new("gap_around_one", Target::GapAroundOne).condition("0 <= D[l] <= 1", ok);
        if ok {
            let root = (1.0 - d).powf(1.0 / l as f64);
            r.lower(1.0 - root).upper(1.0 + root)
        } else {
            r
        }
    } else {
        BoundReport::new("gap_around_one", Target::LambdaMax).upper(1.0 - real_root(1.0 - d, l))
    };
    Ok(report.input("l", l as f64).input("D_l", d))
}

/// Constants of `Γ[l]`; a constant beyond its enumeration cap is `None`
/// and the reason is recorded in `errors`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftedConstants {
    pub l: usize,
    pub h: Option<f64>,
    pub hbar: Option<f64>,
    /// Clustering constant `H` of `Γ[l]`.
    pub big_h: f64,
    pub errors: BTreeMap<String, String>,
}

pub fn neighborhood_constants(g: &WeightedGraph, l: usize, caps: Caps) -> Result<LiftedConstants> {
    check_order(l)?;
    let gl = neighborhood_graph(g, l)?;
    let mut errors = BTreeMap::new();
    let h = match cheeger_exact_unchecked(&gl, caps.h) {
        Ok(r) => Some(r.value),
        Err(e) => {
            errors.insert("h".to_string(), e.to_string());
            None
        }
    };
    let hbar = match dual_cheeger_exact_unchecked(&gl, caps.hbar) {
        Ok(r) => Some(r.value),
        Err(e) => {
            errors.insert("hbar".to_string(), e.to_string());
            None
        }
    };
    Ok(LiftedConstants {
        l,
        h,
        hbar,
        big_h: clustering_constants(&gl).h,
        errors,
    })
}

fn lifted_h(g: &WeightedGraph, l: usize, caps: Caps) -> Result<f64> {
    check_order(l)?;
    Ok(cheeger_exact_unchecked(&neighborhood_graph(g, l)?, caps.h)?.value)
}

fn lifted_hbar(g: &WeightedGraph, l: usize, caps: Caps) -> Result<f64> {
    check_order(l)?;
    Ok(dual_cheeger_exact_unchecked(&neighborhood_graph(g, l)?, caps.hbar)?.value)
}

fn renamed(mut r: BoundReport, name: &str) -> BoundReport {
    r.name = name.to_string();
    r
}

/// Cheeger lower bound on `Γ[l]` transported back:
/// `1 − (1 − h[l]²)^{1/2l} ≤ λ_1`, and for even `l` also
/// `λ_{N−1} ≤ 1 + (1 − h[l]²)^{1/2l}`.
pub fn neighborhood_sandwich(g: &WeightedGraph, l: usize, caps: Caps) -> Result<BoundReport> {
    let h = lifted_h(g, l, caps)?;
    let a = 1.0 - (1.0 - h * h).sqrt();
    Ok(renamed(neighborhood_lower_generic(l, a)?, "neighborhood_sandwich").input("h_l", h))
}

/// Cheeger upper bound `λ_1[l] ≤ 2h[l]` transported back. For even `l`
/// it needs `2h[l] ≤ 1` and yields a disjunction.
pub fn neighborhood_upper_or(g: &WeightedGraph, l: usize, caps: Caps) -> Result<BoundReport> {
    let h = lifted_h(g, l, caps)?;
    Ok(neighborhood_upper_generic(l, 2.0 * h)?.input("h_l", h))
}

/// Dual Cheeger lower bound `2h̄[l] ≤ λ_{N−1}[l]` transported back.
pub fn neighborhood_interval(g: &WeightedGraph, l: usize, caps: Caps) -> Result<BoundReport> {
    let hbar = lifted_hbar(g, l, caps)?;
    Ok(interval_contains_generic(l, 2.0 * hbar)?.input("hbar_l", hbar))
}

/// Clustering upper bound `λ_{N−1}[l] ≤ 2 − H[l]` transported back; for
/// even `l` it needs `H[l] ≥ 1` and excludes a window around 1.
pub fn gap_around_one(g: &WeightedGraph, l: usize) -> Result<BoundReport> {
    check_order(l)?;
    let big_h = clustering_constants(&neighborhood_graph(g, l)?).h;
    let mut r = neighborhood_gap_generic(l, 2.0 - big_h)?.input("H_l", big_h);
    if even(l) {
        r.conditions = vec![super::Condition {
            text: "H[l] >= 1".to_string(),
            holds: big_h >= 1.0,
        }];
        if big_h < 1.0 {
            r.lower = None;
            r.upper = None;
        }
    }
    Ok(r)
}

/// Dual Cheeger upper bound on `Γ[l]` transported back, odd `l` only:
/// `λ_{N−1} ≤ 1 + (1 − (1 − h̄[l])²)^{1/2l}`.
pub fn dual_odd_upper(g: &WeightedGraph, l: usize, caps: Caps) -> Result<BoundReport> {
    check_order(l)?;
    if even(l) {
        return Ok(BoundReport::new("dual_odd_upper", Target::LambdaMax)
            .condition("l odd", false)
            .input("l", l as f64));
    }
    let hbar = lifted_hbar(g, l, caps)?;
    let d = 1.0 + (1.0 - (1.0 - hbar).powi(2)).sqrt();
    let r = neighborhood_gap_generic(l, d)?;
    Ok(renamed(r, "dual_odd_upper").condition("l odd", true).input("hbar_l", hbar))
}

/// Diagnostics comparing the transported bounds with the direct Cheeger
/// estimates. `None` marks a quantity whose denominator vanishes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImprovementReport {
    pub l: usize,
    pub h: f64,
    pub h_l: f64,
    pub lambda1: f64,
    pub lambda_max: f64,
    /// `λ_1[l] = min_{k≥1} 1 − (1 − λ_k)^l`.
    pub lambda1_l: f64,
    /// `(1 − √(1 − h²)) / λ_1`.
    pub sharpness_lower: Option<f64>,
    pub sharpness_lower_l: Option<f64>,
    /// `λ_1 / (2h)`.
    pub sharpness_upper: Option<f64>,
    pub sharpness_upper_l: Option<f64>,
    /// `h[l] ≥ √(1 − (1 − h²)^l)`: the transported lower bound beats the direct one.
    pub lower_improves: bool,
    /// `h[l] ≤ (1 − (1 − 2h)^l)/2`: the transported upper bound beats `2h`.
    pub upper_improves: bool,
    /// Sufficient condition for `lower_improves` (with the side condition for even `l`).
    pub lower_sufficient: Option<bool>,
    /// Sufficient condition for `upper_improves` (with `h[l] ≤ 1/2` and the
    /// side condition for even `l`).
    pub upper_sufficient: Option<bool>,
    /// `λ_1 ≤ 2 − λ_{N−1}`.
    pub side_condition: bool,
}

pub fn improvement_predicates(g: &WeightedGraph, l: usize, caps: Caps) -> Result<ImprovementReport> {
    check_order(l)?;
    let s = spectrum(g)?;
    let h = cheeger_exact_with_cap(g, caps.h)?.value;
    let h_l = lifted_h(g, l, caps)?;
    let li = l as i32;
    let lambda1 = s.lambda1().ok_or_else(|| GraphError::invalid("graph needs two vertices"))?;
    let lambda_max = s.lambda_max();
    let lambda1_l = s.eigenvalues[1..]
        .iter()
        .map(|&x| 1.0 - (1.0 - x).powi(li))
        .fold(f64::INFINITY, f64::min);
    let ratio = |a: f64, b: f64| (b != 0.0).then_some(a / b);
    let sharpness_lower = ratio(1.0 - (1.0 - h * h).sqrt(), lambda1);
    let sharpness_lower_l = ratio(1.0 - (1.0 - h_l * h_l).sqrt(), lambda1_l);
    let sharpness_upper = ratio(lambda1, 2.0 * h);
    let sharpness_upper_l = ratio(lambda1_l, 2.0 * h_l);

    let lower_sufficient = match (sharpness_lower, sharpness_lower_l) {
        (Some(sl), Some(sll)) => {
            let den = 1.0 - (1.0 - (1.0 - (1.0 - h * h).sqrt()) / sl).powi(li);
            ratio(1.0 - (1.0 - h * h).powf(l as f64 / 2.0), den).map(|rhs| sll >= rhs)
        }
        _ => None,
    };
    let upper_sufficient = match (sharpness_upper, sharpness_upper_l) {
        (Some(su), Some(sul)) => {
            let num = 1.0 - (1.0 - su * 2.0 * h).powi(li);
            ratio(num, 1.0 - (1.0 - 2.0 * h).powi(li)).map(|rhs| sul >= rhs)
        }
        _ => None,
    };
    Ok(ImprovementReport {
        l,
        h,
        h_l,
        lambda1,
        lambda_max,
        lambda1_l,
        sharpness_lower,
        sharpness_lower_l,
        sharpness_upper,
        sharpness_upper_l,
        lower_improves: h_l >= (1.0 - (1.0 - h * h).powi(li)).sqrt(),
        upper_improves: h_l <= (1.0 - (1.0 - 2.0 * h).powi(li)) / 2.0,
        lower_sufficient,
        upper_sufficient,
        side_condition: lambda1 <= 2.0 - lambda_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn generic_degenerate() {
        let r = neighborhood_lower_generic(2, 1.0).unwrap();
        assert_eq!((r.lower, r.upper), (Some(1.0), Some(1.0)));
        let r = neighborhood_lower_generic(3, 0.0).unwrap();
        assert_eq!(r.lower, Some(0.0));
        let r = neighborhood_lower_generic(2, 0.0).unwrap();
        assert_eq!((r.lower, r.upper), (Some(0.0), Some(2.0)));
        assert!(neighborhood_lower_generic(2, 1.5).is_err());
    }

    #[test]
    fn even_half_collapses() {
        let r = neighborhood_upper_generic(2, 1.0).unwrap();
        assert_eq!(r.branches[0].upper, Some(1.0));
        assert_eq!(r.branches[1].lower, Some(1.0));
    }

    #[test]
    fn bipartite_even_sandwich_vacuous() {
        let r = neighborhood_sandwich(&cycle_graph(4).unwrap(), 2, Caps::default()).unwrap();
        assert_eq!((r.lower, r.upper), (Some(0.0), Some(2.0)));
    }

    #[test]
    fn sandwich_at_one_is_cheeger() {
        let g = example4_graph(0.6).unwrap();
        let h = crate::partition::cheeger_exact(&g).unwrap().value;
        let r = neighborhood_sandwich(&g, 1, Caps::default()).unwrap();
        assert!((r.lower.unwrap() - (1.0 - (1.0 - h * h).sqrt())).abs() < 1e-15);
    }

    #[test]
    fn odd_dual_upper() {
        let g = example3_graph(1.0).unwrap();
        let r = dual_odd_upper(&g, 3, Caps::default()).unwrap();
        assert!(r.applicable());
        assert!(r.upper.unwrap() >= 1.0);
        assert!(!dual_odd_upper(&g, 2, Caps::default()).unwrap().applicable());
    }

    #[test]
    fn predicates_bipartite() {
        let p = improvement_predicates(&cycle_graph(6).unwrap(), 2, Caps::default()).unwrap();
        assert_eq!(p.h_l, 0.0);
        assert!(!p.lower_improves);
        assert_eq!(p.sharpness_upper_l, None);
    }
}
