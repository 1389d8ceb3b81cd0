use std::fmt;

use serde::{Deserialize, Serialize};

/// The failure category of a [`GraphError`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ErrorKind {
    AsymmetricInput,
    NegativeWeight,
    ZeroDegreeVertex,
    Disconnected,
    RequiresUnweighted,
    RequiresLoopless,
    SizeCapExceeded,
    NotBipartite,
    /// The operation needs a non-bipartite graph (e.g. an equilibrium limit).
    Bipartite,
    NoOddWalk,
    /// Malformed input: bad index, unparsable file, argument outside its domain.
    InvalidInput,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::AsymmetricInput => "AsymmetricInput",
            ErrorKind::NegativeWeight => "NegativeWeight",
            ErrorKind::ZeroDegreeVertex => "ZeroDegreeVertex",
            ErrorKind::Disconnected => "Disconnected",
            ErrorKind::RequiresUnweighted => "RequiresUnweighted",
            ErrorKind::RequiresLoopless => "RequiresLoopless",
            ErrorKind::SizeCapExceeded => "SizeCapExceeded",
            ErrorKind::NotBipartite => "NotBipartite",
            ErrorKind::Bipartite => "Bipartite",
            ErrorKind::NoOddWalk => "NoOddWalk",
            ErrorKind::InvalidInput => "InvalidInput",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error returned by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{kind}: {detail}")]
pub struct GraphError {
    pub kind: ErrorKind,
    pub detail: String,
}

impl GraphError {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        GraphError {
            kind,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        GraphError::new(ErrorKind::InvalidInput, detail)
    }

    pub(crate) fn disconnected() -> Self {
        GraphError::new(ErrorKind::Disconnected, "graph is not connected")
    }

    pub(crate) fn size_cap(n: usize, cap: usize, what: &str) -> Self {
        GraphError::new(
            ErrorKind::SizeCapExceeded,
            format!("{what} supports at most {cap} vertices, got {n}"),
        )
    }
}

pub type Result<T> = std::result::Result<T, GraphError>;
