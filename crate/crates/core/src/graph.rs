//! Dense weighted undirected graphs with optional loops.

use std::collections::VecDeque;

use crate::error::{ErrorKind, GraphError, Result};
use crate::partition::Bipartition;

/// Hard limit on the vertex count of any graph built by this crate.
pub const MAX_VERTICES: usize = 10_000;

/// Symmetric nonnegative weight matrix with cached degrees.
///
/// `w_ij > 0` iff `i ~ j`; the diagonal holds loop weights. The degree of
/// a vertex is `d_i = sum_j w_ij`, so a loop contributes its weight once.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<f64>,
    degrees: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl WeightedGraph {
    /// Builds a graph from an edge list `(i, j, w)` with 0-based indices.
    ///
    /// `(i, i, w)` is a loop. Each unordered pair may appear at most once.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        check_size(n)?;
        let mut weights = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(GraphError::invalid(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            if !w.is_finite() {
                return Err(GraphError::invalid(format!(
                    "edge ({i}, {j}) has non-finite weight {w}"
                )));
            }
            if w <= 0.0 {
                return Err(GraphError::new(
                    ErrorKind::NegativeWeight,
                    format!("edge ({i}, {j}) has non-positive weight {w}"),
                ));
            }
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            if seen[a * n + b] {
                return Err(GraphError::new(
                    ErrorKind::AsymmetricInput,
                    format!("duplicate edge ({a}, {b})"),
                ));
            }
            seen[a * n + b] = true;
            weights[a * n + b] = w;
            weights[b * n + a] = w;
        }
        Self::finish(n, weights)
    }

    /// Builds a graph from a row-major `n x n` weight matrix.
    ///
    /// The matrix must be exactly symmetric.
    pub fn from_dense(n: usize, weights: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if weights.len() != n * n {
            return Err(GraphError::invalid(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if !w.is_finite() {
                    return Err(GraphError::invalid(format!(
                        "entry ({i}, {j}) is not finite"
                    )));
                }
                if w < 0.0 {
                    return Err(GraphError::new(
                        ErrorKind::NegativeWeight,
                        format!("entry ({i}, {j}) = {w} is negative"),
                    ));
                }
                if j > i && w != weights[j * n + i] {
                    return Err(GraphError::new(
                        ErrorKind::AsymmetricInput,
                        format!("w[{i}][{j}] = {w} but w[{j}][{i}] = {}", weights[j * n + i]),
                    ));
                }
            }
        }
        Self::finish(n, weights)
    }

    fn finish(n: usize, weights: Vec<f64>) -> Result<Self> {
        let degrees: Vec<f64> = weights.chunks(n).map(|row| row.iter().sum()).collect();
        if let Some(i) = degrees.iter().position(|&d| d <= 0.0) {
            return Err(GraphError::new(
                ErrorKind::ZeroDegreeVertex,
                format!("vertex {i} has degree zero"),
            ));
        }
        Ok(WeightedGraph {
            n,
            weights,
            degrees,
            labels: None,
        })
    }

    /// Attaches the original vertex labels (index `i` is labelled `labels[i]`).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(GraphError::invalid("label count does not match vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// `vol(V) = sum_i d_i`.
    pub fn volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    /// `vol` of an empty set is `+0.0` (an empty `Sum` of floats is `-0.0`).
    pub fn volume_of(&self, set: &[usize]) -> f64 {
        set.iter().fold(0.0, |acc, &i| acc + self.degrees[i])
    }

    /// `|E(A, B)| = sum_{k in A, l in B} w_kl`.
    pub fn edge_weight_between(&self, a: &[usize], b: &[usize]) -> f64 {
        a.iter()
            .flat_map(|&k| b.iter().map(move |&l| (k, l)))
            .fold(0.0, |acc, (k, l)| acc + self.weight(k, l))
    }

    /// Vertices `j` with `w_ij > 0`, loops included.
    pub fn adjacent(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(j, _)| j)
    }

    /// Unordered edges `(i, j, w)` with `i <= j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i..self.n).filter_map(move |j| {
                let w = self.weight(i, j);
                (w > 0.0).then_some((i, j, w))
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.weight(i, i) > 0.0)
    }

    pub fn is_loopless(&self) -> bool {
        !self.has_loops()
    }

    /// True when every positive weight equals one.
    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    /// Smallest positive weight over all edges, loops included.
    pub fn min_edge_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).fold(f64::INFINITY, f64::min)
    }

    /// Component index for every vertex, numbered in order of first vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for u in self.adjacent(v) {
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::disconnected())
        }
    }

    /// BFS 2-coloring over all components; `None` if some loop or odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for u in self.adjacent(v) {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Bipartition into color classes; `U` is the class containing vertex 0.
    pub fn bipartition(&self) -> Result<Option<Bipartition>> {
        self.require_connected()?;
        match self.two_coloring() {
            None => Ok(None),
            Some(color) => {
                let members: Vec<usize> = (0..self.n).filter(|&i| color[i] == 0).collect();
                Bipartition::new(self, members).map(Some)
            }
        }
    }

    /// Hop distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn hop_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for u in self.adjacent(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Largest hop distance between two vertices, `None` when disconnected.
    pub fn hop_diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for s in 0..self.n {
            for d in self.hop_distances(s) {
                if d == usize::MAX {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    /// Unordered triples of distinct, mutually adjacent vertices.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.weight(i, j) <= 0.0 {
                    continue;
                }
                for k in (j + 1)..n {
                    if self.weight(i, k) > 0.0 && self.weight(j, k) > 0.0 {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// `3 * #triangles / #connected triples`, zero when there are no triples.
    pub fn clustering_coefficient(&self) -> Result<f64> {
        if !self.is_unweighted() {
            return Err(GraphError::new(
                ErrorKind::RequiresUnweighted,
                "clustering coefficient is defined for unweighted graphs",
            ));
        }
        if self.has_loops() {
            return Err(GraphError::new(
                ErrorKind::RequiresLoopless,
                "clustering coefficient is defined for loopless graphs",
            ));
        }
        let triples: usize = (0..self.n)
            .map(|i| {
                let k = self.adjacent(i).count();
                k * k.saturating_sub(1) / 2
            })
            .sum();
        if triples == 0 {
            return Ok(0.0);
        }
        Ok(3.0 * self.triangles().len() as f64 / triples as f64)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(GraphError::invalid("graph needs at least one vertex"));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::size_cap(n, MAX_VERTICES, "graph construction"));
    }
    Ok(())
}
