//! LMI regions of the complex plane.
//!
//! An LMI region is a set 𝔇 = {z ∈ ℂ : L + Mz + Mᵀz̄ ≺ 0} for a real
//! symmetric L and a real M. This crate builds such regions from their
//! generating pair (L, M), answers membership queries, computes their
//! geometric characteristics (emptiness, boundedness, real-axis interval,
//! lineality space, recession cone and inner angle, vertical slice bounds,
//! inscribed disks), classifies the second-order curves that bound them, and
//! rasterizes them to SVG/CSV. Brute-force scan oracles are shipped alongside
//! the analytic routines so results can be cross-checked independently.

pub mod analysis;
pub mod classify;
pub mod config;
pub mod kernel;
pub mod matrix;
pub mod oracle;
pub mod plot;
pub mod region;

#[cfg(test)]
pub(crate) mod testutil;

pub use config::ToleranceConfig;
pub use matrix::DenseMatrix;
pub use num_complex::Complex64;
pub use region::{ComplexPoint, LmiRegion};
