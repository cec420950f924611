//! Hermitian and positive-definite matrices and their spectral calculus.

use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::eigen::{jacobi_eigh, EigenDecomposition};
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Relative spectral floor below which a matrix is not accepted as positive definite.
pub const EPS_PD: f64 = 1e-12;

/// A complex Hermitian matrix. Construction symmetrizes the input, so the
/// stored entries satisfy `a[i][j] == conj(a[j][i])` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Self {
        Self(m.hermitian_part())
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    pub fn from_diag(d: &[f64]) -> Self {
        Self(CMatrix::from_diag(d))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        CMatrix::from_real_rows(rows).map(Self::new)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &HermitianMatrix) -> Self {
        Self(self.0.axpy(s, &other.0))
    }

    /// Trace inner product `tr(self other)`, real for Hermitian arguments.
    pub fn inner(&self, other: &HermitianMatrix) -> f64 {
        self.0.inner_re(&other.0)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.frobenius()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    pub fn check_same_dim(&self, other: &HermitianMatrix) -> Result<()> {
        self.0.check_same_dim(&other.0)
    }

    pub fn eigh(&self) -> Result<EigenDecomposition> {
        jacobi_eigh(&self.0)
    }

    /// `g self g^*`.
    pub fn congruence(&self, g: &CMatrix) -> Self {
        Self::new(g.matmul(&self.0).matmul(&g.adjoint()))
    }

    /// Spectral function `U diag(f(λ)) U^*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        matrix_fn(self, f)
    }

    /// Matrix exponential, which is always positive definite.
    pub fn exp(&self) -> Result<PosDefMatrix> {
        PosDefMatrix::from_exp(self)
    }

    /// Spectral radius, i.e. the operator norm.
    pub fn spectral_radius(&self) -> Result<f64> {
        let e = self.eigh()?;
        Ok(e.min().abs().max(e.max().abs()))
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        self.axpy(-1.0, rhs)
    }
}

/// Applies a real scalar function through the spectral decomposition.
///
/// Fails with [`Error::Domain`] when `f` is not finite on the spectrum, which
/// is how `ln` and non-integer powers reject matrices that are not positive
/// definite.
pub fn matrix_fn(a: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let e = a.eigh()?;
    let vals: Vec<f64> = e.values.iter().map(|&l| f(l)).collect();
    if let Some(bad) = e.values.iter().zip(&vals).find(|(_, y)| !y.is_finite()) {
        return Err(Error::Domain(format!(
            "function is not finite at eigenvalue {:e}",
            bad.0
        )));
    }
    Ok(HermitianMatrix(e.vectors.sandwich_diag(&vals)))
}

/// A point of the positive cone: Hermitian with spectrum bounded away from zero.
///
/// The eigendecomposition, square root and inverse square root are computed
/// once at construction.
#[derive(Debug, Clone)]
pub struct PosDefMatrix {
    h: HermitianMatrix,
    eig: EigenDecomposition,
    sqrt: CMatrix,
    inv_sqrt: CMatrix,
}

impl PartialEq for PosDefMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

impl PosDefMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eig = h.eigh()?;
        Self::check_spectrum(&eig)?;
        Ok(Self::assemble(h, eig))
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_eigen(EigenDecomposition {
            values: vec![1.0; n],
            vectors: CMatrix::identity(n),
        })
        .expect("identity is positive definite")
    }

    pub fn from_diag(d: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diag(d))
    }

    /// `e^s`, reusing the eigenbasis of `s`.
    pub fn from_exp(s: &HermitianMatrix) -> Result<Self> {
        let e = s.eigh()?;
        Self::from_eigen(EigenDecomposition {
            values: e.values.iter().map(|l| l.exp()).collect(),
            vectors: e.vectors,
        })
    }

    /// Builds `U diag(λ) U^*` from an eigendecomposition with positive values.
    pub fn from_eigen(eig: EigenDecomposition) -> Result<Self> {
        Self::check_spectrum(&eig)?;
        let h = HermitianMatrix(eig.rebuild(|l| l));
        Ok(Self::assemble(h, eig))
    }

    fn check_spectrum(eig: &EigenDecomposition) -> Result<()> {
        let (min, max) = (eig.min(), eig.max());
        if !(min.is_finite() && max.is_finite()) || max <= 0.0 || min <= EPS_PD * max {
            return Err(Error::NotPositiveDefinite { min, max });
        }
        Ok(())
    }

    fn assemble(h: HermitianMatrix, eig: EigenDecomposition) -> Self {
        let sqrt = eig.rebuild(f64::sqrt);
        let inv_sqrt = eig.rebuild(|l| 1.0 / l.sqrt());
        Self {
            h,
            eig,
            sqrt,
            inv_sqrt,
        }
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.h.as_matrix()
    }

    pub fn eig(&self) -> &EigenDecomposition {
        &self.eig
    }

    /// `a^{1/2}`.
    pub fn sqrt_matrix(&self) -> &CMatrix {
        &self.sqrt
    }

    /// `a^{-1/2}`.
    pub fn inv_sqrt_matrix(&self) -> &CMatrix {
        &self.inv_sqrt
    }

    pub fn sqrt(&self) -> PosDefMatrix {
        self.powf(0.5).expect("square root of a positive matrix")
    }

    pub fn ln(&self) -> HermitianMatrix {
        HermitianMatrix(self.eig.rebuild(f64::ln))
    }

    pub fn powf(&self, t: f64) -> Result<PosDefMatrix> {
        Self::from_eigen(EigenDecomposition {
            values: self.eig.values.iter().map(|l| l.powf(t)).collect(),
            vectors: self.eig.vectors.clone(),
        })
    }

    pub fn inverse(&self) -> PosDefMatrix {
        self.powf(-1.0).expect("inverse of a positive matrix")
    }

    /// `a^{-1/2} u a^{-1/2}`: moves a tangent vector at `a` to the identity.
    pub fn whiten(&self, u: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::new(self.inv_sqrt.matmul(u.as_matrix()).matmul(&self.inv_sqrt))
    }

    /// `a^{1/2} u a^{1/2}`: inverse of [`whiten`](Self::whiten).
    pub fn unwhiten(&self, u: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::new(self.sqrt.matmul(u.as_matrix()).matmul(&self.sqrt))
    }

    pub fn check_same_dim(&self, other: &PosDefMatrix) -> Result<()> {
        self.h.check_same_dim(&other.h)
    }
}

/// `[v, w] = vw - wv`, skew-Hermitian for Hermitian arguments.
pub fn commutator(v: &HermitianMatrix, w: &HermitianMatrix) -> Result<CMatrix> {
    v.check_same_dim(w)?;
    Ok(v.as_matrix().commutator(w.as_matrix()))
}

/// `[v, [v, w]]`, the operator `ad_v^2` applied to `w`.
pub fn double_ad(v: &HermitianMatrix, w: &HermitianMatrix) -> Result<HermitianMatrix> {
    let inner = commutator(v, w)?;
    Ok(HermitianMatrix::new(v.as_matrix().commutator(&inner)))
}

/// Third-order term of the distance expansion, `(1/12) [v + w, [w, v]]`.
pub fn bch_curvature_term(v: &HermitianMatrix, w: &HermitianMatrix) -> Result<HermitianMatrix> {
    let wv = commutator(w, v)?;
    let sum = v + w;
    Ok(HermitianMatrix::new(sum.as_matrix().commutator(&wv).scale(1.0 / 12.0)))
}

/// `f(ad v)` applied to `w` through the eigenbasis of `v`: the entries of
/// `U^* w U` are multiplied by `f(λ_i - λ_j)`.
///
/// `f` must be even for the result to be Hermitian and must already encode
/// its limit at zero (see [`sinhc`]).
pub fn ad_fn(
    v: &HermitianMatrix,
    w: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianMatrix> {
    v.check_same_dim(w)?;
    let n = v.n();
    let e = v.eigh()?;
    let u = &e.vectors;
    let mut inner = u.adjoint().matmul(w.as_matrix()).matmul(u);
    for i in 0..n {
        for j in 0..n {
            let gap = e.values[i] - e.values[j];
            let m = f(gap);
            if !m.is_finite() {
                return Err(Error::Domain(format!(
                    "multiplier is not finite at spectral gap {gap:e}"
                )));
            }
            let z = inner.get(i, j) * m;
            inner.set(i, j, z);
        }
    }
    Ok(HermitianMatrix::new(u.matmul(&inner).matmul(&u.adjoint())))
}

/// `sinh(x) / x` with its value 1 at the origin.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}
