//! Cheeger constant `h`, dual Cheeger constant `h̄`, balance ratio `R` and
//! the odd-walk congestion constant `ξ`.
//!
//! Exact constants are found by exhaustive enumeration with incremental
//! cut bookkeeping, so each step costs `O(n)`. With integer weights every
//! partial sum is an exact float and the final ratio is correctly rounded.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{ErrorKind, GraphError, Result};
use crate::graph::WeightedGraph;

/// Largest `n` accepted by [`cheeger_exact`] and [`balance_ratio_exact`].
pub const H_CAP: usize = 24;
/// Largest `n` accepted by [`dual_cheeger_exact`].
pub const HBAR_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Greedy,
}

/// A proper nonempty subset `U` and its complement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bipartition {
    members: Vec<usize>,
    #[serde(skip)]
    n: usize,
    volume: f64,
    complement_volume: f64,
    boundary: f64,
}

impl Bipartition {
    pub fn new(g: &WeightedGraph, mut members: Vec<usize>) -> Result<Self> {
        let n = g.n();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&i| i >= n) {
            return Err(GraphError::invalid("bipartition member out of range"));
        }
        if members.is_empty() || members.len() == n {
            return Err(GraphError::invalid("bipartition side must be nonempty and proper"));
        }
        let mut inside = vec![false; n];
        members.iter().for_each(|&i| inside[i] = true);
        let complement: Vec<usize> = (0..n).filter(|&i| !inside[i]).collect();
        let volume = g.volume_of(&members);
        let complement_volume = g.volume_of(&complement);
        let boundary = g.edge_weight_between(&members, &complement);
        Ok(Bipartition {
            members,
            n,
            volume,
            complement_volume,
            boundary,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|i| self.members.binary_search(i).is_err()).collect()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn complement_volume(&self) -> f64 {
        self.complement_volume
    }

    /// `|E(U, Ū)|`.
    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    /// `|E(U, Ū)| / min(vol U, vol Ū)`.
    pub fn cheeger_ratio(&self) -> f64 {
        self.boundary / self.volume.min(self.complement_volume)
    }

    /// `R(U) = min(vol U, vol Ū) / max(vol U, vol Ū)`.
    pub fn balance_ratio(&self) -> f64 {
        self.volume.min(self.complement_volume) / self.volume.max(self.complement_volume)
    }
}

/// Disjoint cover `V1 ∪ V2 ∪ V3 = V` with `V1`, `V2` nonempty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriPartition {
    v1: Vec<usize>,
    v2: Vec<usize>,
    v3: Vec<usize>,
    cut12: f64,
    vol1: f64,
    vol2: f64,
}

impl TriPartition {
    /// `V3` is everything not in `v1` or `v2`.
    pub fn new(g: &WeightedGraph, mut v1: Vec<usize>, mut v2: Vec<usize>) -> Result<Self> {
        let n = g.n();
        v1.sort_unstable();
        v1.dedup();
        v2.sort_unstable();
        v2.dedup();
        if v1.is_empty() || v2.is_empty() {
            return Err(GraphError::invalid("V1 and V2 must be nonempty"));
        }
        let mut label = vec![3u8; n];
        for &i in &v1 {
            if i >= n {
                return Err(GraphError::invalid("partition member out of range"));
            }
            label[i] = 1;
        }
        for &i in &v2 {
            if i >= n {
                return Err(GraphError::invalid("partition member out of range"));
            }
            if label[i] == 1 {
                return Err(GraphError::invalid("V1 and V2 overlap"));
            }
            label[i] = 2;
        }
        let v3 = (0..n).filter(|&i| label[i] == 3).collect();
        Ok(TriPartition {
            cut12: g.edge_weight_between(&v1, &v2),
            vol1: g.volume_of(&v1),
            vol2: g.volume_of(&v2),
            v1,
            v2,
            v3,
        })
    }

    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    pub fn v2(&self) -> &[usize] {
        &self.v2
    }

    pub fn v3(&self) -> &[usize] {
        &self.v3
    }

    /// `|E(V1, V2)|`.
    pub fn cut12(&self) -> f64 {
        self.cut12
    }

    pub fn vol1(&self) -> f64 {
        self.vol1
    }

    pub fn vol2(&self) -> f64 {
        self.vol2
    }

    /// `2|E(V1, V2)| / (vol V1 + vol V2)`.
    pub fn dual_ratio(&self) -> f64 {
        2.0 * self.cut12 / (self.vol1 + self.vol2)
    }

    /// `R(V1, V2) = min(vol V1, vol V2) / max(vol V1, vol V2)`.
    pub fn balance_ratio(&self) -> f64 {
        self.vol1.min(self.vol2) / self.vol1.max(self.vol2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Bipartition(Bipartition),
    Tripartition(TriPartition),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerResult {
    pub value: f64,
    pub witness: Witness,
    pub method: Method,
}

impl CheegerResult {
    pub fn bipartition(&self) -> Option<&Bipartition> {
        match &self.witness {
            Witness::Bipartition(b) => Some(b),
            Witness::Tripartition(_) => None,
        }
    }

    pub fn tripartition(&self) -> Option<&TriPartition> {
        match &self.witness {
            Witness::Tripartition(t) => Some(t),
            Witness::Bipartition(_) => None,
        }
    }
}

fn effective_cap(cap: Option<usize>, hard: usize) -> usize {
    cap.map_or(hard, |c| c.min(hard))
}

fn check_enumerable(g: &WeightedGraph, cap: usize, what: &str) -> Result<()> {
    if g.n() > cap {
        return Err(GraphError::size_cap(g.n(), cap, what));
    }
    if g.n() < 2 {
        return Err(GraphError::invalid(format!("{what} needs at least two vertices")));
    }
    Ok(())
}

/// Walks every proper subset `U` not containing vertex `n-1` in Gray-code
/// order and calls `visit(in_u, vol_u, boundary)` after each flip.
fn gray_code_walk(g: &WeightedGraph, mut visit: impl FnMut(&[bool], f64, f64)) {
    let n = g.n();
    let mut in_u = vec![false; n];
    let mut vol_u = 0.0;
    let mut boundary = 0.0;
    let total: u64 = 1 << (n - 1);
    for k in 1..total {
        let v = k.trailing_zeros() as usize;
        let mut to_u = 0.0;
        let mut to_rest = 0.0;
        for (j, &w) in g.row(v).iter().enumerate() {
            if j == v || w == 0.0 {
                continue;
            }
            if in_u[j] {
                to_u += w;
            } else {
                to_rest += w;
            }
        }
        if in_u[v] {
            in_u[v] = false;
            vol_u -= g.degree(v);
            boundary += to_u - to_rest;
        } else {
            in_u[v] = true;
            vol_u += g.degree(v);
            boundary += to_rest - to_u;
        }
        visit(&in_u, vol_u, boundary);
    }
}

fn members_of(in_u: &[bool]) -> Vec<usize> {
    (0..in_u.len()).filter(|&i| in_u[i]).collect()
}

/// Exact `h = min_U |E(U,Ū)| / min(vol U, vol Ū)` for a connected graph.
pub fn cheeger_exact(g: &WeightedGraph) -> Result<CheegerResult> {
    cheeger_exact_with_cap(g, None)
}

pub fn cheeger_exact_with_cap(g: &WeightedGraph, cap: Option<usize>) -> Result<CheegerResult> {
    g.require_connected()?;
    cheeger_exact_unchecked(g, cap)
}

/// As [`cheeger_exact_with_cap`] but accepts disconnected graphs (value 0).
pub fn cheeger_exact_unchecked(g: &WeightedGraph, cap: Option<usize>) -> Result<CheegerResult> {
    check_enumerable(g, effective_cap(cap, H_CAP), "cheeger_exact")?;
    let vol = g.volume();
    let mut best: Option<(f64, f64, Vec<bool>)> = None;
    gray_code_walk(g, |in_u, vol_u, boundary| {
        let m = vol_u.min(vol - vol_u);
        let better = match &best {
            None => true,
            Some((b, bm, _)) => boundary * bm < b * m,
        };
        if better {
            best = Some((boundary, m, in_u.to_vec()));
        }
    });
    let (_, _, in_u) = best.expect("at least one proper subset");
    let witness = Bipartition::new(g, members_of(&in_u))?;
    Ok(CheegerResult {
        value: witness.cheeger_ratio(),
        witness: Witness::Bipartition(witness),
        method: Method::Exact,
    })
}

/// `R = max_U R(U)` by exhaustive enumeration.
pub fn balance_ratio_exact(g: &WeightedGraph, cap: Option<usize>) -> Result<CheegerResult> {
    check_enumerable(g, effective_cap(cap, H_CAP), "balance_ratio_exact")?;
    let vol = g.volume();
    let mut best: Option<(f64, f64, Vec<bool>)> = None;
    gray_code_walk(g, |in_u, vol_u, _| {
        let lo = vol_u.min(vol - vol_u);
        let hi = vol_u.max(vol - vol_u);
        let better = match &best {
            None => true,
            Some((blo, bhi, _)) => lo * bhi > blo * hi,
        };
        if better {
            best = Some((lo, hi, in_u.to_vec()));
        }
    });
    let (_, _, in_u) = best.expect("at least one proper subset");
    let witness = Bipartition::new(g, members_of(&in_u))?;
    Ok(CheegerResult {
        value: witness.balance_ratio(),
        witness: Witness::Bipartition(witness),
        method: Method::Exact,
    })
}

/// `R(U)` for a given side `U`.
pub fn balance_ratio(g: &WeightedGraph, u: &[usize]) -> Result<f64> {
    Ok(Bipartition::new(g, u.to_vec())?.balance_ratio())
}

/// Exact `h̄ = max 2|E(V1,V2)| / (vol V1 + vol V2)` for a connected graph.
pub fn dual_cheeger_exact(g: &WeightedGraph) -> Result<CheegerResult> {
    dual_cheeger_exact_with_cap(g, None)
}

pub fn dual_cheeger_exact_with_cap(g: &WeightedGraph, cap: Option<usize>) -> Result<CheegerResult> {
    g.require_connected()?;
    dual_cheeger_exact_unchecked(g, cap)
}

struct DualSearch<'a> {
    g: &'a WeightedGraph,
    label: Vec<u8>,
    // s1[u] = weight from u into the current V1 (excluding u itself), same for s2
    s1: Vec<f64>,
    s2: Vec<f64>,
    cut: f64,
    vol12: f64,
    count1: usize,
    count2: usize,
    best: Option<(f64, f64, Vec<u8>)>,
}

impl DualSearch<'_> {
    fn assign(&mut self, v: usize, side: u8, sign: f64) {
        let row = self.g.row(v);
        let s = if side == 1 { &mut self.s1 } else { &mut self.s2 };
        for (u, &w) in row.iter().enumerate() {
            if u != v {
                s[u] += sign * w;
            }
        }
        self.vol12 += sign * self.g.degree(v);
    }

    fn descend(&mut self, v: usize) {
        let n = self.g.n();
        if v == n {
            if self.count1 > 0 && self.count2 > 0 {
                let better = match &self.best {
                    None => true,
                    Some((c, d, _)) => self.cut * d > c * self.vol12,
                };
                if better {
                    self.best = Some((self.cut, self.vol12, self.label.clone()));
                }
            }
            return;
        }
        // V1 before V2 before V3; the first non-V3 vertex is forced into V1.
        let allow_v2 = self.count1 > 0;
        for side in [1u8, 2, 3] {
            if side == 2 && !allow_v2 {
                continue;
            }
            self.label[v] = side;
            match side {
                1 => {
                    let gain = self.s2[v];
                    self.cut += gain;
                    self.count1 += 1;
                    self.assign(v, 1, 1.0);
                    self.descend(v + 1);
                    self.assign(v, 1, -1.0);
                    self.count1 -= 1;
                    self.cut -= gain;
                }
                2 => {
                    let gain = self.s1[v];
                    self.cut += gain;
                    self.count2 += 1;
                    self.assign(v, 2, 1.0);
                    self.descend(v + 1);
                    self.assign(v, 2, -1.0);
                    self.count2 -= 1;
                    self.cut -= gain;
                }
                _ => self.descend(v + 1),
            }
        }
        self.label[v] = 3;
    }
}

/// As [`dual_cheeger_exact_with_cap`] but accepts disconnected graphs.
pub fn dual_cheeger_exact_unchecked(g: &WeightedGraph, cap: Option<usize>) -> Result<CheegerResult> {
    check_enumerable(g, effective_cap(cap, HBAR_CAP), "dual_cheeger_exact")?;
    let n = g.n();
    let mut search = DualSearch {
        g,
        label: vec![3; n],
        s1: vec![0.0; n],
        s2: vec![0.0; n],
        cut: 0.0,
        vol12: 0.0,
        count1: 0,
        count2: 0,
        best: None,
    };
    search.descend(0);
    let (_, _, label) = search.best.expect("n >= 2 admits a tripartition");
    let v1 = (0..n).filter(|&i| label[i] == 1).collect();
    let v2 = (0..n).filter(|&i| label[i] == 2).collect();
    let witness = TriPartition::new(g, v1, v2)?;
    Ok(CheegerResult {
        value: witness.dual_ratio(),
        witness: Witness::Tripartition(witness),
        method: Method::Exact,
    })
}

/// Local search for a large `2|E(V1,V2)| / vol(V)` with `V3 = ∅`.
///
/// Starts with every vertex in `V1` and repeatedly moves the lowest-index
/// vertex that has more weight on its own side than across. Each move
/// strictly increases the cut, and at the fixed point
/// `|E(V1,V2)| ≥ |E(V_i,V_i)|` (ordered pairs) for both sides, so the
/// value is at least 1/2.
pub fn dual_cheeger_greedy_lower(g: &WeightedGraph) -> Result<CheegerResult> {
    if g.has_loops() {
        return Err(GraphError::new(
            ErrorKind::RequiresLoopless,
            "greedy dual Cheeger bound needs a loopless graph",
        ));
    }
    g.require_connected()?;
    let n = g.n();
    if n < 2 {
        return Err(GraphError::invalid("dual Cheeger constant needs at least two vertices"));
    }
    let mut side = vec![false; n];
    loop {
        let mover = (0..n).find(|&i| {
            let (mut same, mut other) = (0.0, 0.0);
            for (j, &w) in g.row(i).iter().enumerate() {
                if j != i {
                    if side[j] == side[i] {
                        same += w;
                    } else {
                        other += w;
                    }
                }
            }
            same > other
        });
        match mover {
            Some(i) => side[i] = !side[i],
            None => break,
        }
    }
    let v1 = (0..n).filter(|&i| !side[i]).collect();
    let v2 = (0..n).filter(|&i| side[i]).collect();
    let witness = TriPartition::new(g, v1, v2)?;
    Ok(CheegerResult {
        value: witness.dual_ratio(),
        witness: Witness::Tripartition(witness),
        method: Method::Greedy,
    })
}

/// Descending-degree greedy split and its guaranteed balance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyBalance {
    /// `U` is the lighter final side.
    pub partition: Bipartition,
    /// Position (1-based, in placement order) of the last vertex added to
    /// the heavier final side; `R(U) ≥ (M−1)/(M+1)`.
    pub m: usize,
    pub guaranteed: f64,
}

/// Places vertices in descending degree order (ties by index), each onto
/// the currently lighter side (ties to the first side).
pub fn greedy_balance_partition(g: &WeightedGraph) -> Result<GreedyBalance> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::invalid("balance partition needs at least two vertices"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).total_cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut on_b = vec![false; n];
    let (mut vol_a, mut vol_b) = (0.0, 0.0);
    for &v in &order {
        if vol_b < vol_a {
            on_b[v] = true;
            vol_b += g.degree(v);
        } else {
            vol_a += g.degree(v);
        }
    }
    let heavier_is_b = vol_b > vol_a;
    let m = if vol_a == vol_b {
        n
    } else {
        order
            .iter()
            .rposition(|&v| on_b[v] == heavier_is_b)
            .map_or(n, |p| p + 1)
    };
    let lighter: Vec<usize> = (0..n).filter(|&v| on_b[v] != heavier_is_b).collect();
    let lighter = if lighter.is_empty() || lighter.len() == n {
        vec![order[0]]
    } else {
        lighter
    };
    Ok(GreedyBalance {
        partition: Bipartition::new(g, lighter)?,
        m,
        guaranteed: (m as f64 - 1.0) / (m as f64 + 1.0),
    })
}

/// One odd closed walk per vertex, as vertex sequences `[i, …, i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddWalkFamily {
    pub walks: Vec<Vec<usize>>,
}

impl OddWalkFamily {
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        if self.walks.len() != g.n() {
            return Err(GraphError::invalid(format!(
                "walk family has {} walks for {} vertices",
                self.walks.len(),
                g.n()
            )));
        }
        for (i, walk) in self.walks.iter().enumerate() {
            if walk.first() != Some(&i) || walk.last() != Some(&i) {
                return Err(GraphError::invalid(format!("walk {i} must start and end at {i}")));
            }
            if walk.len() % 2 != 0 {
                return Err(GraphError::invalid(format!("walk {i} has an even number of edges")));
            }
            for pair in walk.windows(2) {
                if pair[0] >= g.n() || pair[1] >= g.n() || g.weight(pair[0], pair[1]) <= 0.0 {
                    return Err(GraphError::invalid(format!(
                        "walk {i} uses non-edge ({}, {})",
                        pair[0], pair[1]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of edges in walk `i`.
    pub fn length(&self, i: usize) -> usize {
        self.walks[i].len() - 1
    }

    /// Distinct unordered edges of walk `i`.
    pub fn edge_set(&self, i: usize) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self.walks[i]
            .windows(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }
}

/// Shortest odd closed walk at every vertex, by BFS on the bipartite
/// double cover from `(i, even)` to `(i, odd)`.
pub fn default_odd_walk_family(g: &WeightedGraph) -> Result<OddWalkFamily> {
    g.require_connected()?;
    if g.is_bipartite() {
        return Err(GraphError::new(
            ErrorKind::NoOddWalk,
            "a bipartite graph has no odd closed walks",
        ));
    }
    let n = g.n();
    let mut walks = Vec::with_capacity(n);
    for s in 0..n {
        let mut parent = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        let start = 2 * s;
        let goal = 2 * s + 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            if state == goal {
                break;
            }
            let (v, parity) = (state / 2, state % 2);
            for u in g.adjacent(v) {
                let next = 2 * u + (1 - parity);
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = state;
                    queue.push_back(next);
                }
            }
        }
        let mut walk = vec![s];
        let mut state = goal;
        while state != start {
            state = parent[state];
            walk.push(state / 2);
        }
        walk.reverse();
        walks.push(walk);
    }
    Ok(OddWalkFamily { walks })
}

/// `ξ = max_e (1/w_e) Σ_{i: σ_i ∋ e} d_i`, with the implied `h̄ ≤ 1 − 1/ξ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiResult {
    pub xi: f64,
    pub hbar_upper: f64,
}

pub fn xi_constant(g: &WeightedGraph, fam: &OddWalkFamily) -> Result<XiResult> {
    fam.validate(g)?;
    let n = g.n();
    let mut load = vec![0.0; n * n];
    for i in 0..n {
        for (k, l) in fam.edge_set(i) {
            load[k * n + l] += g.degree(i);
        }
    }
    let xi = g
        .edges()
        .map(|(k, l, w)| load[k * n + l] / w)
        .fold(0.0, f64::max);
    Ok(XiResult {
        xi,
        hbar_upper: 1.0 - 1.0 / xi,
    })
}

/// Ingredients of `ξ ≤ d_Γ w_Γ b_Γ` and the two resulting `λ_max` upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiProductBound {
    pub d_gamma: f64,
    pub w_gamma: f64,
    /// Largest number of walks containing a single edge.
    pub b_gamma: f64,
    /// Largest number of traversals of a single edge, counted with
    /// multiplicity over all walks.
    pub b_gamma_traversals: f64,
    pub sigma_gamma: usize,
    /// `1 + √(1 − 1/(d_Γ w_Γ b_Γ)²)`.
    pub dual_cheeger_upper: f64,
    /// `2 − 2/(d_Γ w_Γ b σ_Γ)` with the traversal load as `b`.
    pub poincare_upper: f64,
    /// `d_Γ w_Γ b_Γ < 1/σ_Γ + σ_Γ/4`.
    pub dual_cheeger_preferred: bool,
}

pub fn xi_product_bound(g: &WeightedGraph, fam: &OddWalkFamily) -> Result<XiProductBound> {
    fam.validate(g)?;
    let n = g.n();
    let mut walks_on = vec![0usize; n * n];
    let mut traversals = vec![0usize; n * n];
    for i in 0..n {
        for (k, l) in fam.edge_set(i) {
            walks_on[k * n + l] += 1;
        }
        for p in fam.walks[i].windows(2) {
            traversals[p[0].min(p[1]) * n + p[0].max(p[1])] += 1;
        }
    }
    let b_gamma = *walks_on.iter().max().unwrap_or(&0) as f64;
    let b_trav = *traversals.iter().max().unwrap_or(&0) as f64;
    let d_gamma = g.degrees().iter().copied().fold(0.0, f64::max);
    let w_gamma = 1.0 / g.min_edge_weight();
    let sigma_gamma = (0..n).map(|i| fam.length(i)).max().unwrap_or(0);
    let x = d_gamma * w_gamma * b_gamma;
    let sigma = sigma_gamma as f64;
    Ok(XiProductBound {
        d_gamma,
        w_gamma,
        b_gamma,
        b_gamma_traversals: b_trav,
        sigma_gamma,
        dual_cheeger_upper: 1.0 + (1.0 - 1.0 / (x * x)).max(0.0).sqrt(),
        poincare_upper: 2.0 - 2.0 / (d_gamma * w_gamma * b_trav * sigma),
        dual_cheeger_preferred: x < 1.0 / sigma + sigma / 4.0,
    })
}
