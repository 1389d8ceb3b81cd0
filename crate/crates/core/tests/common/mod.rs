//! Independent brute-force oracles over integer weights, evaluated in exact
//! rational arithmetic, and the named fixture list shared by the suites.

#![allow(dead_code)]

use graph_spectra::generators::*;
use graph_spectra::WeightedGraph;
use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// Symmetric integer weight matrix, row-major.
#[derive(Debug, Clone)]
pub struct IntGraph {
    pub n: usize,
    pub w: Vec<i64>,
}

impl IntGraph {
    pub fn to_graph(&self) -> WeightedGraph {
        WeightedGraph::from_dense(self.n, self.w.iter().map(|&x| x as f64).collect()).unwrap()
    }

    fn degree(&self, i: usize) -> i64 {
        self.w[i * self.n..(i + 1) * self.n].iter().sum()
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, &w) in self.w[i * self.n..(i + 1) * self.n].iter().enumerate() {
                if w > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_valid(&self) -> bool {
        (0..self.n).all(|i| self.degree(i) > 0) && self.connected()
    }
}

/// `h` by scanning every bitmask `1..2^n − 1` and recomputing each cut.
pub fn cheeger_oracle(g: &IntGraph) -> Q {
    let n = g.n;
    let mut best: Option<Q> = None;
    for mask in 1u32..(1 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let (mut vol_in, mut vol_out, mut cut) = (0, 0, 0);
        for i in 0..n {
            for j in 0..n {
                let w = g.w[i * n + j];
                if inside(i) {
                    vol_in += w;
                    if !inside(j) {
                        cut += w;
                    }
                } else {
                    vol_out += w;
                }
            }
        }
        let r = Q::new(cut, vol_in.min(vol_out));
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

/// `h̄` by counting through every base-3 labeling (0 = V1, 1 = V2, 2 = V3).
pub fn dual_cheeger_oracle(g: &IntGraph) -> Q {
    let n = g.n;
    let mut best: Option<Q> = None;
    let mut label = vec![0u8; n];
    loop {
        let (mut cut, mut vol) = (0, 0);
        let (mut has1, mut has2) = (false, false);
        for i in 0..n {
            has1 |= label[i] == 0;
            has2 |= label[i] == 1;
            if label[i] == 2 {
                continue;
            }
            for j in 0..n {
                let w = g.w[i * n + j];
                vol += w;
                if label[i] == 0 && label[j] == 1 {
                    cut += w;
                }
            }
        }
        if has1 && has2 {
            let r = Q::new(2 * cut, vol);
            if best.is_none_or(|b| r > b) {
                best = Some(r);
            }
        }
        // increment the base-3 counter, least significant digit last
        let mut k = n;
        loop {
            if k == 0 {
                return best.unwrap();
            }
            k -= 1;
            label[k] += 1;
            if label[k] < 3 {
                break;
            }
            label[k] = 0;
        }
    }
}

/// All connected simple graphs on `n` labeled vertices.
pub fn all_simple_connected(n: usize) -> Vec<IntGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let mut w = vec![0; n * n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    w[i * n + j] = 1;
                    w[j * n + i] = 1;
                }
            }
            let g = IntGraph { n, w };
            g.is_valid().then_some(g)
        })
        .collect()
}

/// Connected graphs with small integer weights and occasional loops.
pub fn random_int_graphs(n: usize, count: usize, seed: u64) -> Vec<IntGraph> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut w = vec![0; n * n];
        for i in 0..n {
            if rng.random_bool(0.15) {
                w[i * n + i] = rng.random_range(1..4);
            }
            for j in i + 1..n {
                if rng.random_bool(0.5) {
                    let x = rng.random_range(1..6);
                    w[i * n + j] = x;
                    w[j * n + i] = x;
                }
            }
        }
        let g = IntGraph { n, w };
        if g.is_valid() {
            out.push(g);
        }
    }
    out
}

pub fn as_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Named fixtures: complete graphs, cycles, paths and both example families.
pub fn named_fixtures() -> Vec<(String, WeightedGraph)> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push((format!("K_{n}"), complete_graph(n).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("C_{n}"), cycle_graph(n).unwrap()));
    }
    for n in 2..=5 {
        out.push((format!("P_{n}"), path_graph(n).unwrap()));
    }
    for c in [0.0, 0.5, 1.0, 2.0, 3.0] {
        out.push((format!("example3({c})"), example3_graph(c).unwrap()));
    }
    for c in [0.3, 0.5, 1.0, 2.0] {
        out.push((format!("example4({c})"), example4_graph(c).unwrap()));
    }
    out
}
