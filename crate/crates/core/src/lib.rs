//! Numerical toolkit for quantum states, effects and channels on
//! finite-dimensional spaces carrying an indefinite metric.
//!
//! A fundamental symmetry `J` (Hermitian, squaring to the identity) turns
//! `C^n` into a space with indefinite inner product `[x, y] = <Jx, y>`.
//! The crate provides the dense linear algebra kernel, the metric layer
//! (adjoints, positivity, Jordan splits), J-states and J-effects, Kraus
//! J-maps with Choi certification, and the two-dimensional Bloch-style
//! geometry with measurements and isospectral dynamics.

pub mod error;
pub mod linalg;
pub mod metric;
pub mod random;
pub mod states;

pub use error::{Error, Result};

/// Default relative tolerance used by validation predicates.
pub const DEFAULT_TOL: f64 = 1e-9;
