//! Edge isoperimetry on distance powers of the hypercube.
//!
//! The graph under study joins two 0/1 vectors of length n whenever their
//! Hamming distance is between 1 and r. This crate counts edges and edge
//! boundaries of vertex families exactly, builds the named extremal
//! candidates, normalizes families by compression, evaluates the closed-form
//! upper bounds with their hypotheses, solves the maximum-induced-edges
//! problem exactly at small scale, and re-checks the supporting
//! inequalities numerically.

pub mod analysis;
pub mod bounds;
pub mod compress;
pub mod construct;
pub mod error;
pub mod solver;
pub mod suites;
pub mod table;
pub mod vertex;

pub use error::{Error, Result};
pub use vertex::{Vertex, VertexFamily};
