//! Exact computation of the triple-point strangeness invariant `St₂` of
//! generic PL immersions of closed oriented surfaces in ℝ³.
//!
//! The pipeline is: [`surface`] meshes → [`arrangement`] (double curves,
//! triple points, genericity) → [`numbering`] (Alexander indices, `ind(t)`,
//! `St₂`) → [`moves`] (jump verification and homotopy ledgers). The
//! [`oracle`] module recomputes indices on a voxel lattice for cross-checks.

pub mod arrangement;
pub mod bvh;
pub mod catalogue;
pub mod error;
pub mod exactgeom;
pub mod moves;
pub mod numbering;
pub mod oracle;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
