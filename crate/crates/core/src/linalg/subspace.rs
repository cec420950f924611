//! Real subspaces of Hermitian matrices under the trace inner product.

use super::eigen::jacobi_eigh;
use super::hermitian::HermitianMatrix;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Relative eigenvalue floor of the normalized Gram matrix for rank decisions.
pub const GRAM_RANK_TOL: f64 = 1e-10;

/// Numerical rank of a family from the spectrum of its normalized Gram matrix.
pub fn gram_rank(basis: &[HermitianMatrix]) -> usize {
    let normed: Vec<HermitianMatrix> = basis
        .iter()
        .filter(|b| b.frobenius() > 0.0)
        .map(|b| b.scale(1.0 / b.frobenius()))
        .collect();
    let k = normed.len();
    if k == 0 {
        return 0;
    }
    let mut gram = CMatrix::zeros(k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, normed[i].inner(&normed[j]).into());
        }
    }
    let e = jacobi_eigh(&gram).expect("Jacobi converges on a Gram matrix");
    e.values.iter().filter(|&&l| l > GRAM_RANK_TOL).count()
}

/// Orthonormal basis (trace inner product) of a real span of Hermitian
/// matrices. Fails if the family is not linearly independent.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSubspace {
    n: usize,
    basis: Vec<HermitianMatrix>,
}

impl HermitianSubspace {
    pub fn new(n: usize, family: &[HermitianMatrix]) -> Result<Self> {
        for b in family {
            if b.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.n(),
                });
            }
        }
        let rank = gram_rank(family);
        if rank < family.len() {
            return Err(Error::DegenerateBasis {
                rank,
                len: family.len(),
            });
        }
        let mut basis: Vec<HermitianMatrix> = Vec::with_capacity(family.len());
        for b in family {
            let mut r = b.clone();
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for q in &basis {
                    r = r.axpy(-q.inner(&r), q);
                }
            }
            let norm = r.frobenius();
            basis.push(r.scale(1.0 / norm));
        }
        Ok(Self { n, basis })
    }

    /// Subspace that is already known to be orthonormal.
    pub(crate) fn from_orthonormal(n: usize, basis: Vec<HermitianMatrix>) -> Self {
        Self { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HermitianMatrix] {
        &self.basis
    }

    pub fn coordinates(&self, x: &HermitianMatrix) -> Vec<f64> {
        self.basis.iter().map(|q| q.inner(x)).collect()
    }

    pub fn combine(&self, coords: &[f64]) -> HermitianMatrix {
        self.basis
            .iter()
            .zip(coords)
            .fold(HermitianMatrix::zeros(self.n), |acc, (q, &c)| acc.axpy(c, q))
    }

    /// Orthogonal projection onto the span.
    pub fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        self.combine(&self.coordinates(x))
    }

    /// Frobenius norm of `x - project(x)`.
    pub fn residual(&self, x: &HermitianMatrix) -> f64 {
        (x - &self.project(x)).frobenius()
    }
}
