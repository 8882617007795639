//! Total, classical and quantum correlations of two-qubit states measured by
//! sandwiched and traditional Rényi/Tsallis relative entropies, and their use
//! as order parameters for the transverse-field Ising chain.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod correlation;
pub mod entropy;
pub mod error;
pub mod io;
pub mod ising;
pub mod optimize;
pub mod qpt;
pub mod qstate;
pub mod quadrature;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Real;

pub type DensityMatrix = qstate::DensityMatrix<f64>;
pub type ProjectiveMeasurement = qstate::ProjectiveMeasurement<f64>;
pub type EntropyKind = entropy::EntropyKind<f64>;
pub type ExtendedReal = entropy::ExtendedReal<f64>;
pub type CorrelationResult = correlation::CorrelationResult<f64>;
pub type ProductAnsatz = correlation::ProductAnsatz<f64>;
pub type IsingPoint = ising::IsingPoint<f64>;
pub type IsingCorrelators = ising::IsingCorrelators<f64>;
pub type SweepCurve = qpt::SweepCurve<f64>;
pub type ScalingSample = qpt::ScalingSample<f64>;
pub type ScalingFit = qpt::ScalingFit<f64>;
