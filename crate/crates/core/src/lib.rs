//! Finsler geometry of the cone of positive-definite matrices under
//! Schatten-p norms.
//!
//! * [`linalg`]: Hermitian eigensolver, spectral functions, Schatten norms.
//! * [`cone`]: geodesics, exponential and logarithm maps, distance, transport.
//! * [`metricprops`]: signed gaps for the metric inequalities of the cone.
//! * [`convexopt`]: best approximation, Moreau–Yoshida resolvents, circumcenters.
//! * [`splitting`]: conditional expectations and the factorization `g = g_A e^v u`.

pub mod cone;
pub mod convexopt;
pub mod error;
pub mod linalg;
pub mod metricprops;
pub mod random;
pub mod splitting;

pub use error::{Error, Result};
