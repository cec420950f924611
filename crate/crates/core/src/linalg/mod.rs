//! Dense Hermitian linear algebra: Jacobi eigensolver, spectral functions,
//! Schatten norms, polar decomposition and commutator calculus.

mod eigen;
mod hermitian;
pub mod io;
mod matrix;
mod norms;
mod polar;
mod subspace;

pub use eigen::{jacobi_eigh, EigenDecomposition, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use hermitian::{
    ad_fn, bch_curvature_term, commutator, double_ad, matrix_fn, sinhc, HermitianMatrix,
    PosDefMatrix, EPS_PD,
};
pub use matrix::CMatrix;
pub use norms::{schatten_norm, schatten_norm_general, singular_values, SchattenP};
pub use polar::{check_invertible, polar, Polar};
pub use subspace::{gram_rank, HermitianSubspace, GRAM_RANK_TOL};
