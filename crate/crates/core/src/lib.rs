//! Exact persistence diagrams of the quadratic form `xᵀMx` on the unit
//! sphere, computed from the spectrum of `M`, together with the random
//! matrix ensembles and spectral diagnostics used to study them.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the common `f64` instantiation.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod eigensolve;
pub mod ensembles;
pub mod error;
pub mod matrix;
pub mod numeric;
pub mod persistence;
pub mod scalar;
pub mod spectral_stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Matrix = matrix::DenseMatrix<f64>;
pub type MatrixSample = ensembles::MatrixSample<f64>;
pub type Spectrum = eigensolve::Spectrum<f64>;
pub type Bar = persistence::Bar<f64>;
pub type PersistenceDiagram = persistence::PersistenceDiagram<f64>;
pub type SummaryStats = persistence::SummaryStats<f64>;
pub type DensityModel = persistence::DensityModel<f64>;
pub type SpacingSequence = spectral_stats::SpacingSequence<f64>;
pub type KsResult = spectral_stats::KsResult<f64>;
pub type ScoreSet = analysis::ScoreSet<f64>;
pub type SnrCurve = analysis::SnrCurve<f64>;

pub type SpectrumF32 = eigensolve::Spectrum<f32>;
pub type PersistenceDiagramF32 = persistence::PersistenceDiagram<f32>;
