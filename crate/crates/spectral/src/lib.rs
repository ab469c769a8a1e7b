//! Spectral toolkit for periodic-box PDE experiments: field representation,
//! Littlewood-Paley dyadic calculus, homogeneous and hybrid Besov norms, the
//! Bony paraproduct, and the Fourier-multiplier operators (Leray, fractional
//! Laplacian, heat semigroups, Friedrichs truncation, differentiation).
//!
//! All operations are pure functions of immutable inputs; fields are plain
//! data and safe to share across threads.

pub mod besov;
pub mod bony;
pub mod dyadic;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod ops;
pub mod snapshot;
pub mod synth;

pub use besov::{besov, besov_norm, hybrid_besov_norm, BesovParams, HybridBesovParams, Integrability};
pub use bony::{paraproduct, remainder};
pub use dyadic::{dyadic_block, highlow_split, low_pass, DyadicDecomposition, Mollifier};
pub use error::SpectralError;
pub use field::SpectralField;
pub use grid::Grid;
pub use ops::{
    div, friedrichs, grad, heat_flow, lambda_power, laplacian, leray, viscosity_a,
    viscous_heat_flow, MultiplierOp,
};

pub use num_complex::Complex64;
