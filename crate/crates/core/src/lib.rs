//! Certification and refutation of exponential stability for matrix
//! semigroup generators via the Gearhart-Pruss criterion: a clear imaginary
//! axis plus a uniform resolvent bound there is equivalent, for bounded
//! semigroups on a Hilbert space, to exponential decay of `e^{tA}`. Every
//! quantitative inequality used along the way is verified numerically and
//! reported in a machine-readable certificate.
//!
//! All numerics are generic over the real scalar type (`f32`/`f64`) through
//! the [`scalar::Scalar`] trait; concrete `f64` aliases are exported at the
//! crate root.

pub mod error;
pub mod generator;
pub mod mat;
pub mod scalar;

pub use error::{Error, Result};
pub use generator::{spectral_norm, Generator};
pub use mat::ComplexMatrix;
pub use scalar::{Cx, Scalar};

/// f64 generator (the default desk-scale configuration).
pub type Generator64 = Generator<f64>;
/// f64 dense complex matrix.
pub type ComplexMatrix64 = ComplexMatrix<f64>;
/// f64 complex scalar.
pub type Cx64 = Cx<f64>;
