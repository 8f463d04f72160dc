//! Numerical engine for entangled cat-state experiments driven by a
//! number-state nonlinearity `exp(−i t n̂^k)`.
//!
//! States live in a truncated Fock basis; quadrature statistics are sampled on
//! uniform grids; closed-form oracles in [`oracles`] cross-check the numerics.

pub mod angle;
pub mod dynamics;
pub mod experiments;
pub mod error;
pub mod fock;
pub mod oracles;
pub mod quadrature;

pub use angle::PiFraction;
pub use error::{Error, Result};

/// Engine version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
