//! Dense complex square matrices stored as separate real and imaginary planes.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense `n × n` complex matrix, row-major, with the real and imaginary
/// parts kept in two separate planes.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            re: vec![0.0; n * n],
            im: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.re[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major real and imaginary planes.
    pub fn from_planes(n: usize, re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        if re.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: re.len(),
            });
        }
        if im.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: im.len(),
            });
        }
        Ok(Self { n, re, im })
    }

    /// Builds a real matrix from rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            m.re[i * n..(i + 1) * n].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &x) in d.iter().enumerate() {
            m.re[i * n + i] = x;
        }
        m
    }

    pub fn from_complex_diag(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &z) in d.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let k = i * self.n + j;
        Complex64::new(self.re[k], self.im[k])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let k = i * self.n + j;
        self.re[k] = z.re;
        self.im[k] = z.im;
    }

    pub fn re(&self) -> &[f64] {
        &self.re
    }

    pub fn im(&self) -> &[f64] {
        &self.im
    }

    pub fn re_mut(&mut self) -> &mut [f64] {
        &mut self.re
    }

    pub fn im_mut(&mut self) -> &mut [f64] {
        &mut self.im
    }

    pub fn check_same_dim(&self, other: &CMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[j * n + i] = self.re[i * n + j];
                out.im[j * n + i] = -self.im[i * n + j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            n: self.n,
            re: self.re.iter().map(|x| x * s).collect(),
            im: self.im.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_complex(&self, z: Complex64) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for k in 0..self.re.len() {
            let w = Complex64::new(self.re[k], self.im[k]) * z;
            out.re[k] = w.re;
            out.im[k] = w.im;
        }
        out
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        CMatrix {
            n: self.n,
            re: self.re.iter().zip(&other.re).map(|(a, b)| a + s * b).collect(),
            im: self.im.iter().zip(&other.im).map(|(a, b)| a + s * b).collect(),
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let ar = self.re[i * n + k];
                let ai = self.im[i * n + k];
                if ar == 0.0 && ai == 0.0 {
                    continue;
                }
                let row = k * n;
                let orow = i * n;
                for j in 0..n {
                    let br = other.re[row + j];
                    let bi = other.im[row + j];
                    out.re[orow + j] += ar * br - ai * bi;
                    out.im[orow + j] += ar * bi + ai * br;
                }
            }
        }
        out
    }

    /// `self * diag(d) * self^*`, used to rebuild spectral functions.
    pub fn sandwich_diag(&self, d: &[f64]) -> CMatrix {
        let n = self.n;
        debug_assert_eq!(d.len(), n);
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut sr = 0.0;
                let mut si = 0.0;
                for k in 0..n {
                    // u_ik * d_k * conj(u_jk)
                    let ar = self.re[i * n + k] * d[k];
                    let ai = self.im[i * n + k] * d[k];
                    let br = self.re[j * n + k];
                    let bi = -self.im[j * n + k];
                    sr += ar * br - ai * bi;
                    si += ar * bi + ai * br;
                }
                out.re[i * n + j] = sr;
                out.im[i * n + j] = si;
                out.re[j * n + i] = sr;
                out.im[j * n + i] = -si;
            }
            out.im[i * n + i] = 0.0;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(a, b)| a.hypot(*b))
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.re
            .iter()
            .chain(&self.im)
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }

    /// Real part of the trace inner product `tr(self^* other)`.
    pub fn inner_re(&self, other: &CMatrix) -> f64 {
        self.re
            .iter()
            .zip(&other.re)
            .chain(self.im.iter().zip(&other.im))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        (self - other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.re.iter().chain(&self.im).all(|x| x.is_finite())
    }

    /// `vw - wv`.
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `(A + A^*) / 2`.
    pub fn hermitian_part(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[i * n + j] = 0.5 * (self.re[i * n + j] + self.re[j * n + i]);
                out.im[i * n + j] = 0.5 * (self.im[i * n + j] - self.im[j * n + i]);
            }
        }
        out
    }

    /// Largest deviation of `self^* self` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&CMatrix::identity(self.n))
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.axpy(-1.0, rhs)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}
