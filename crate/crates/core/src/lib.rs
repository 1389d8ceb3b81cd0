//! Spectral analysis of weighted graphs through the normalized Laplacian
//! `Δ = I − D⁻¹W`.
//!
//! The crate computes exact spectra, exact Cheeger and dual Cheeger
//! constants by enumeration, neighborhood graphs `Γ[l]`, closed-form
//! eigenvalue bounds built from these constants, random-walk convergence
//! rates and synchronization windows for coupled map lattices.

pub mod bounds;
pub mod cml;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod neighborhood;
pub mod partition;
pub mod random_walk;
pub mod spectral;

pub use error::{ErrorKind, GraphError, Result};
pub use graph::WeightedGraph;
pub use partition::{Bipartition, CheegerResult, Method, TriPartition};
pub use spectral::Spectrum;
