//! Numerical toolkit for minimum-error discrimination of qubit channels,
//! centered on coherence-breaking channel families.
//!
//! The crate is organised in layers:
//!
//! * [`cmat`] — dense complex matrices up to 8x8 with a cyclic Jacobi
//!   eigensolver, singular values, and the trace norm;
//! * [`channel`] — Kraus channels, density matrices, the three
//!   coherence-breaking families, and Pauli channels;
//! * [`choi`] — operator vectorization and the weighted Choi-type
//!   difference operator used by the entanglement-assisted analysis;
//! * [`discrimination`] — Helstrom error, grid-plus-refine optimizers for
//!   unassisted and assisted probing, the entanglement bound, and the
//!   closed-form results for the channel families;
//! * [`oracle`] — an independent brute-force path (direct channel extension,
//!   no vectorization) used to cross-check the Choi-based computation,
//!   plus a portable RNG and a derivative-free refiner.
//!
//! All numerical code is generic over the scalar type through [`Real`];
//! the concrete `f64` instantiations below are the intended defaults.

#![forbid(unsafe_code)]

pub mod channel;
pub mod choi;
pub mod cmat;
pub mod discrimination;
mod error;
pub mod oracle;
mod scalar;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations of the core types.
pub type ComplexScalar = num_complex::Complex<f64>;
pub type ComplexMatrix = cmat::Matrix<f64>;
pub type HermitianMatrix = cmat::HermitianMatrix<f64>;
pub type KrausChannel = channel::KrausChannel<f64>;
pub type DensityMatrix = channel::DensityMatrix<f64>;
pub type CbcSpec = channel::CbcSpec<f64>;
pub type PauliSpec = channel::PauliSpec<f64>;
pub type VecOperator = choi::VecOperator<f64>;
pub type DeltaOperator = choi::DeltaOperator<f64>;
pub type ProbeP = discrimination::ProbeP<f64>;
pub type BlochProbe = discrimination::BlochProbe<f64>;
pub type DiscriminationProblem = discrimination::DiscriminationProblem<f64>;
pub type DiscriminationReport = discrimination::DiscriminationReport<f64>;
pub type OptimizerConfig = oracle::OptimizerConfig<f64>;
pub type Tolerances = tol::Tolerances<f64>;
