//! Distance α-matrix toolkit for connected graphs.
//!
//! For a connected graph `G` and `α ∈ [0,1)` the distance α-matrix is
//! `D_α(G) = α·T(G) + (1−α)·D(G)`, where `D(G)` is the hop-distance matrix and
//! `T(G)` the diagonal matrix of vertex transmissions. This crate computes
//! `D_α`, its spectrum and Perron vector, evaluates closed-form bounds on the
//! spectral radius `μ_α`, applies graft transformations with known monotone
//! effect on `μ_α`, and checks extremal statements exhaustively over
//! isomorphism-free censuses of small graphs.
//!
//! Module map:
//! - [`graph`]: graphs, exact metrics, named families, canonical forms, graph6.
//! - [`spectral`]: `D_α`, dense symmetric eigensolver, power iteration, energy.
//! - [`bounds`]: every closed-form bound with a tightness verdict.
//! - [`transforms`]: graft transformations and their monotonicity claims.
//! - [`census`]: non-isomorphic trees, unicyclic graphs and connected graphs.
//! - [`verify`]: extremal checks over censuses and α grids, suite runner.

pub mod bounds;
pub mod census;
pub mod graph;
pub mod par;
pub mod report;
pub mod spectral;
pub mod tolerance;
pub mod transforms;
pub mod verify;

mod error;

pub use error::{Error, Result};
pub use graph::Graph;
pub use report::Alpha;
pub use tolerance::Tolerances;
