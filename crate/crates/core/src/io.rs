//! Graph file formats.
//!
//! Canonical: `{"n": 3, "edges": [[0, 1, 1.0], [1, 1, 0.5]]}` with 0-based
//! indices. Alternate: one `i j w` per line, `#` starts a comment, labels
//! are arbitrary tokens re-indexed in order of first appearance.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::WeightedGraph;
use crate::partition::OddWalkFamily;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl From<&WeightedGraph> for GraphFile {
    fn from(g: &WeightedGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

pub fn parse_json(text: &str) -> Result<WeightedGraph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| GraphError::invalid(format!("graph JSON: {e}")))?;
    WeightedGraph::from_edges(file.n, &file.edges)
}

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut id = |tok: &str| -> usize {
        *index.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(GraphError::invalid(format!(
                "line {}: expected `i j w`, got {:?}",
                lineno + 1,
                raw
            )));
        }
        let w: f64 = toks[2].parse().map_err(|_| {
            GraphError::invalid(format!("line {}: bad weight {:?}", lineno + 1, toks[2]))
        })?;
        let (i, j) = (id(toks[0]), id(toks[1]));
        edges.push((i, j, w));
    }
    let n = labels.len();
    WeightedGraph::from_edges(n, &edges)?.with_labels(labels)
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

pub fn to_json(g: &WeightedGraph) -> String {
    serde_json::to_string(&GraphFile::from(g)).expect("graph serializes")
}

pub fn parse_walk_family(text: &str) -> Result<OddWalkFamily> {
    serde_json::from_str(text).map_err(|e| GraphError::invalid(format!("walk family JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::example4_graph;

    #[test]
    fn json_round_trip() {
        let g = example4_graph(0.25).unwrap();
        assert_eq!(parse_graph(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_relabels() {
        let g = parse_graph("# triangle\na b 1\nb c 2 # heavy\n\nc a 1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.weight(1, 2), 2.0);
        assert_eq!(g.labels().unwrap(), &["a", "b", "c"]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph("a b").is_err());
        assert!(parse_graph("a b x").is_err());
        assert!(parse_graph("{\"n\": 2}").is_err());
        let e = parse_graph("{\"n\": 3, \"edges\": [[0, 1, 1]]}").unwrap_err();
        assert_eq!(e.kind, crate::ErrorKind::ZeroDegreeVertex);
    }
}
