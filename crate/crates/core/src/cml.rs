//! Coupled map lattices on a weighted graph,
//!
//! `x_i(t+1) = f(x_i) + (ε/d_i) Σ_j w_ij (f(x_j) − f(x_i))`,
//!
//! with the spectral window for ε in which the synchronized orbit is
//! linearly stable.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::Caps;
use crate::error::{GraphError, Result};
use crate::graph::WeightedGraph;
use crate::neighborhood::neighborhood_graph;
use crate::partition::{cheeger_exact_unchecked, dual_cheeger_exact_unchecked};
use crate::spectral::spectrum;

const DERIV_FLOOR: f64 = 1e-300;
const DIVERGENCE: f64 = 1e10;
pub const PERTURBATION: f64 = 1e-3;
/// Orbit length used by [`simulate_sync`] to estimate `μ`.
pub const LYAPUNOV_STEPS: usize = 100_000;

/// A map of the unit interval with its derivative.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapSpec {
    /// `a x (1 − x)`.
    Logistic { a: f64 },
    /// `s · min(x, 1 − x)`.
    Tent { s: f64 },
    /// Piecewise linear through `(x, y)` breakpoints with increasing `x`,
    /// extended linearly past the end segments.
    Custom { points: Vec<(f64, f64)> },
}

impl MapSpec {
    pub fn logistic(a: f64) -> Result<Self> {
        if !(0.0..=4.0).contains(&a) {
            return Err(GraphError::invalid(format!("logistic parameter {a} outside [0, 4]")));
        }
        Ok(MapSpec::Logistic { a })
    }

    pub fn tent(s: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&s) {
            return Err(GraphError::invalid(format!("tent parameter {s} outside [0, 2]")));
        }
        Ok(MapSpec::Tent { s })
    }

    pub fn custom(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(GraphError::invalid("custom map needs at least two breakpoints"));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(GraphError::invalid("custom map breakpoints must be finite"));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(GraphError::invalid("custom map breakpoints must have increasing x"));
        }
        Ok(MapSpec::Custom { points })
    }

    fn segment(points: &[(f64, f64)], x: f64) -> usize {
        // index k of the segment [p_k, p_{k+1}] used at x
        let k = points.partition_point(|p| p.0 <= x);
        k.clamp(1, points.len() - 1) - 1
    }

    pub fn f(&self, x: f64) -> f64 {
        match self {
            MapSpec::Logistic { a } => a * x * (1.0 - x),
            MapSpec::Tent { s } => s * x.min(1.0 - x),
            MapSpec::Custom { points } => {
                let k = Self::segment(points, x);
                let (x0, y0) = points[k];
                let (x1, y1) = points[k + 1];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Right derivative at kinks.
    pub fn f_prime(&self, x: f64) -> f64 {
        match self {
            MapSpec::Logistic { a } => a * (1.0 - 2.0 * x),
            MapSpec::Tent { s } => {
                if x < 0.5 {
                    *s
                } else {
                    -s
                }
            }
            MapSpec::Custom { points } => {
                let k = Self::segment(points, x);
                let (x0, y0) = points[k];
                let (x1, y1) = points[k + 1];
                (y1 - y0) / (x1 - x0)
            }
        }
    }
}

/// `logistic:A`, `tent:S`, or `custom:x0,y0;x1,y1;...`.
impl FromStr for MapSpec {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| GraphError::invalid(format!("map {s:?} is not of the form kind:param")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| GraphError::invalid(format!("bad number {t:?} in map {s:?}")))
        };
        match kind {
            "logistic" => MapSpec::logistic(num(param)?),
            "tent" => MapSpec::tent(num(param)?),
            "custom" => {
                let points = param
                    .split(';')
                    .map(|pair| {
                        let (x, y) = pair
                            .split_once(',')
                            .ok_or_else(|| GraphError::invalid(format!("breakpoint {pair:?} is not x,y")))?;
                        Ok((num(x)?, num(y)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                MapSpec::custom(points)
            }
            other => Err(GraphError::invalid(format!("unknown map kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmlState {
    pub x: Vec<f64>,
    pub t: usize,
}

impl CmlState {
    pub fn new(x: Vec<f64>) -> Self {
        CmlState { x, t: 0 }
    }

    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .x
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        hi - lo
    }
}

/// `(1/T) Σ ln |f′(s(t))|` over `T` steps after `transient` discarded ones.
pub fn lyapunov_exponent(map: &MapSpec, s0: f64, steps: usize, transient: usize) -> f64 {
    let mut s = s0;
    for _ in 0..transient {
        s = map.f(s);
    }
    let mut acc = 0.0;
    for _ in 0..steps {
        acc += map.f_prime(s).abs().max(DERIV_FLOOR).ln();
        s = map.f(s);
    }
    acc / steps.max(1) as f64
}

/// One lattice step. The coupling is computed from differences of `f`
/// values, so a synchronized state maps to an exactly synchronized state.
pub fn step_cml(g: &WeightedGraph, state: &CmlState, map: &MapSpec, eps: f64) -> CmlState {
    let fx: Vec<f64> = state.x.iter().map(|&v| map.f(v)).collect();
    let x = (0..g.n())
        .map(|i| {
            let c: f64 = g.row(i).iter().zip(&fx).map(|(w, fj)| w * (fj - fx[i])).sum();
            fx[i] + eps / g.degree(i) * c
        })
        .collect();
    CmlState { x, t: state.t + 1 }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncWindow {
    pub mu: f64,
    pub lambda1: f64,
    pub lambda_max: f64,
    /// `((1 − e^{−μ})/λ_1, (1 + e^{−μ})/λ_{N−1})`, present when nonempty.
    pub interval: Option<(f64, f64)>,
    /// `λ_{N−1}/λ_1`.
    pub ratio: f64,
    /// `(e^μ + 1)/(e^μ − 1)`; infinite at `μ = 0`, serialized as null.
    pub ratio_threshold: f64,
    /// The ratio inequality: `ratio < threshold` for `μ > 0`, reversed for `μ < 0`.
    pub ratio_condition: bool,
}

pub fn sync_interval(mu: f64, lambda1: f64, lambda_max: f64) -> Result<SyncWindow> {
    if lambda1.is_nan() || lambda1 <= 0.0 {
        return Err(GraphError::invalid(format!("lambda1 = {lambda1} must be positive")));
    }
    let q = (-mu).exp();
    let lo = (1.0 - q) / lambda1;
    let hi = (1.0 + q) / lambda_max;
    let ratio = lambda_max / lambda1;
    let ratio_threshold = if mu == 0.0 {
        f64::INFINITY
    } else {
        (mu.exp() + 1.0) / (mu.exp() - 1.0)
    };
    let ratio_condition = if mu >= 0.0 {
        ratio < ratio_threshold
    } else {
        ratio > ratio_threshold
    };
    Ok(SyncWindow {
        mu,
        lambda1,
        lambda_max,
        interval: (lo < hi).then_some((lo, hi)),
        ratio,
        ratio_threshold,
        ratio_condition,
    })
}

/// `max_{k≥1} |1 − ε λ_k| e^μ`, the per-step growth of transverse
/// perturbations along a typical orbit.
pub fn transverse_factor(mu: f64, eigenvalues: &[f64], eps: f64) -> f64 {
    eigenvalues
        .iter()
        .skip(1)
        .map(|&l| (1.0 - eps * l).abs())
        .fold(0.0, f64::max)
        * mu.exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub l: usize,
    pub h_l: Option<f64>,
    pub hbar_l: Option<f64>,
    /// `1 − (1 − h[l]²)^{1/2l}`.
    pub lambda1_lower: Option<f64>,
    /// Even `l`: `1 + (1 − h[l]²)^{1/2l}`. Odd `l`: `1 + (1 − (1 − h̄[l])²)^{1/2l}`.
    pub lambda_max_upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioBounds {
    pub h: Option<f64>,
    pub hbar: Option<f64>,
    /// `h̄ / h`.
    pub lower: Option<f64>,
    /// `min λ_max_upper / max λ1_lower`.
    pub upper: Option<f64>,
    pub exact: f64,
    pub rows: Vec<RatioRow>,
}

/// Bracket for `λ_{N−1}/λ_1` from the Cheeger constants of `g` and its
/// neighborhood graphs. Constants past their caps leave the cell empty.
pub fn ratio_bounds(g: &WeightedGraph, l_list: &[usize], caps: Caps) -> Result<RatioBounds> {
    let s = spectrum(g)?;
    let exact = s.lambda_max() / s.lambda1().ok_or_else(|| GraphError::invalid("graph has one vertex"))?;
    let h = cheeger_exact_unchecked(g, caps.h).ok().map(|r| r.value);
    let hbar = dual_cheeger_exact_unchecked(g, caps.hbar).ok().map(|r| r.value);
    let mut rows = Vec::with_capacity(l_list.len());
    for &l in l_list {
        if l == 0 {
            return Err(GraphError::invalid("l must be at least 1"));
        }
        let gl = neighborhood_graph(g, l)?;
        let e = 1.0 / (2 * l) as f64;
        let h_l = cheeger_exact_unchecked(&gl, caps.h).ok().map(|r| r.value);
        let hbar_l = if l % 2 == 1 {
            dual_cheeger_exact_unchecked(&gl, caps.hbar).ok().map(|r| r.value)
        } else {
            None
        };
        let root = h_l.map(|h| (1.0 - h * h).powf(e));
        let lambda_max_upper = if l % 2 == 0 {
            root.map(|r| 1.0 + r)
        } else {
            hbar_l.map(|hb| 1.0 + (1.0 - (1.0 - hb).powi(2)).powf(e))
        };
        rows.push(RatioRow {
            l,
            h_l,
            hbar_l,
            lambda1_lower: root.map(|r| 1.0 - r),
            lambda_max_upper,
        });
    }
    let num = rows.iter().filter_map(|r| r.lambda_max_upper).reduce(f64::min);
    let den = rows.iter().filter_map(|r| r.lambda1_lower).reduce(f64::max);
    let upper = match (num, den) {
        (Some(a), Some(b)) if b > 0.0 => Some(a / b),
        _ => None,
    };
    let lower = match (h, hbar) {
        (Some(h), Some(hb)) if h > 0.0 => Some(hb / h),
        _ => None,
    };
    Ok(RatioBounds {
        h,
        hbar,
        lower,
        upper,
        exact,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncParams {
    pub eps: f64,
    pub steps: usize,
    pub transient: usize,
    pub tol: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SyncParams {
    fn default() -> Self {
        SyncParams {
            eps: 0.5,
            steps: 5000,
            transient: 1000,
            tol: 1e-6,
            trials: 5,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub seed: u64,
    /// Largest spread over the final tenth of the run.
    pub tail_spread: f64,
    pub diverged: bool,
    pub synchronized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncReport {
    pub eps: f64,
    pub mu: f64,
    pub lambda1: f64,
    pub lambda_max: f64,
    pub interval: Option<(f64, f64)>,
    pub ratio: f64,
    pub ratio_threshold: f64,
    pub ratio_condition: bool,
    /// ε lies strictly inside the interval, so stability is guaranteed.
    pub guaranteed: bool,
    pub transverse_factor: f64,
    pub transverse_stable: bool,
    pub synchronized: bool,
    pub diverged: bool,
    pub trials: Vec<TrialOutcome>,
    /// `max_{i,j} |x_i − x_j|` for `t = 0..=steps` in the worst trial.
    pub trajectory_spread: Vec<f64>,
}

impl SyncReport {
    pub fn spread_csv(&self) -> String {
        let mut out = String::from("t,max_spread\n");
        for (t, s) in self.trajectory_spread.iter().enumerate() {
            let _ = writeln!(out, "{t},{s}");
        }
        out
    }
}

fn run_trial(g: &WeightedGraph, map: &MapSpec, p: &SyncParams, seed: u64) -> (TrialOutcome, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s: f64 = rng.random_range(0.05..0.95);
    for _ in 0..p.transient {
        s = map.f(s);
    }
    let x = (0..g.n())
        .map(|_| (s + rng.random_range(-PERTURBATION..PERTURBATION)).clamp(0.0, 1.0))
        .collect();
    let mut state = CmlState::new(x);
    let mut spreads = Vec::with_capacity(p.steps + 1);
    spreads.push(state.spread());
    let tail_start = p.steps - p.steps.div_ceil(10);
    let mut diverged = false;
    for _ in 0..p.steps {
        state = step_cml(g, &state, map, p.eps);
        if state.x.iter().any(|v| !v.is_finite() || v.abs() > DIVERGENCE) {
            diverged = true;
            break;
        }
        spreads.push(state.spread());
    }
    let tail_spread = if diverged {
        f64::INFINITY
    } else {
        spreads[tail_start..].iter().copied().fold(0.0, f64::max)
    };
    let outcome = TrialOutcome {
        seed,
        tail_spread,
        diverged,
        synchronized: !diverged && tail_spread < p.tol,
    };
    (outcome, spreads)
}

/// Runs `trials` lattices started within `PERTURBATION` of a common point
/// on the attractor of `f`; seeds are `seed + trial`.
pub fn simulate_sync(g: &WeightedGraph, map: &MapSpec, p: SyncParams) -> Result<SyncReport> {
    if p.tol.is_nan() || p.tol <= 0.0 || p.eps.is_nan() || p.eps < 0.0 || p.trials == 0 || p.steps == 0 {
        return Err(GraphError::invalid("need tol > 0, eps >= 0, steps >= 1 and trials >= 1"));
    }
    let s = spectrum(g)?;
    let mu = lyapunov_exponent(map, 0.2, LYAPUNOV_STEPS, p.transient);
    let window = sync_interval(mu, s.lambda1().unwrap_or(0.0), s.lambda_max())?;
    let factor = transverse_factor(mu, &s.eigenvalues, p.eps);
    let mut trials = Vec::with_capacity(p.trials);
    let mut worst: Option<(f64, Vec<f64>)> = None;
    for k in 0..p.trials {
        let (o, spreads) = run_trial(g, map, &p, p.seed.wrapping_add(k as u64));
        if worst.as_ref().is_none_or(|(w, _)| o.tail_spread > *w) {
            worst = Some((o.tail_spread, spreads));
        }
        trials.push(o);
    }
    Ok(SyncReport {
        eps: p.eps,
        mu,
        lambda1: window.lambda1,
        lambda_max: window.lambda_max,
        interval: window.interval,
        ratio: window.ratio,
        ratio_threshold: window.ratio_threshold,
        ratio_condition: window.ratio_condition,
        guaranteed: window.interval.is_some_and(|(lo, hi)| lo < p.eps && p.eps < hi),
        transverse_factor: factor,
        transverse_stable: factor < 1.0,
        synchronized: trials.iter().all(|t| t.synchronized),
        diverged: trials.iter().any(|t| t.diverged),
        trials,
        trajectory_spread: worst.map(|w| w.1).unwrap_or_default(),
    })
}
