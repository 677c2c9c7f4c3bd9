//! Exact computations with Hochschild chains of truncated Hilbert-Schmidt kernel algebras on
//! finite simplicial complexes: boundaries, contracting homotopies, the symbol and
//! Alexander-Spanier correspondences, and support-filtered homology.

pub mod bridge;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod hochschild;
pub mod homotopy;
pub mod kernel;
pub mod lincomb;
pub mod locality;
pub mod rank;
pub mod scalar;
pub mod simplicial;
pub mod theorem;
pub mod verify;

pub use error::{Error, Result};
