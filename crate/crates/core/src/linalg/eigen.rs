//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Maximum number of row-cyclic sweeps before giving up.
pub const MAX_SWEEPS: usize = 60;
/// Relative off-diagonal Frobenius threshold that ends the iteration.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// `A = U diag(values) U^*` with ascending eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `U diag(f(λ)) U^*`, a Hermitian matrix (no finiteness check).
    pub fn rebuild(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.vectors.sandwich_diag(&d)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// Eigendecomposition of a Hermitian matrix by row-cyclic Jacobi sweeps.
///
/// Only the Hermitian part of `a` is used. Each rotation first removes the
/// phase of the pivot with a diagonal unitary and then applies a real plane
/// rotation, so the accumulated transform stays exactly unitary up to
/// round-off.
pub fn jacobi_eigh(a: &CMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    let sym = a.hermitian_part();
    let mut re = sym.re().to_vec();
    let mut im = sym.im().to_vec();
    let mut v = CMatrix::identity(n);

    let scale = sym.frobenius();
    let target = OFF_DIAGONAL_TOL * scale;

    let off = |re: &[f64], im: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let k = i * n + j;
                    s += re[k] * re[k] + im[k] * im[k];
                }
            }
        }
        s.sqrt()
    };

    // Once the threshold is met one more sweep is run: convergence is
    // quadratic, so it drives the remaining off-diagonal mass to round-off
    // and makes the eigenvectors accurate to working precision.
    let mut polished = false;
    let mut sweeps = 0;
    loop {
        let o = off(&re, &im);
        if o == 0.0 || (o <= target && polished) {
            break;
        }
        polished = o <= target;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "Jacobi eigensolver",
                iterations: sweeps,
                residual: off(&re, &im),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let kpq = p * n + q;
                let apq = Complex64::new(re[kpq], im[kpq]);
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let app = re[p * n + p];
                let aqq = re[q * n + q];
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau.abs() > 1e150 {
                    0.5 / tau
                } else {
                    let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / b; // e^{iφ}
                let phase_conj = phase.conj();

                // Q = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
                let q_pp = Complex64::new(c, 0.0);
                let q_pq = Complex64::new(s, 0.0);
                let q_qp = phase_conj * (-s);
                let q_qq = phase_conj * c;

                // A <- A Q (columns p, q)
                for k in 0..n {
                    let ip = k * n + p;
                    let iq = k * n + q;
                    let x = Complex64::new(re[ip], im[ip]);
                    let y = Complex64::new(re[iq], im[iq]);
                    let nx = x * q_pp + y * q_qp;
                    let ny = x * q_pq + y * q_qq;
                    re[ip] = nx.re;
                    im[ip] = nx.im;
                    re[iq] = ny.re;
                    im[iq] = ny.im;
                }
                // A <- Q^* A (rows p, q)
                for k in 0..n {
                    let ip = p * n + k;
                    let iq = q * n + k;
                    let x = Complex64::new(re[ip], im[ip]);
                    let y = Complex64::new(re[iq], im[iq]);
                    let nx = q_pp.conj() * x + q_qp.conj() * y;
                    let ny = q_pq.conj() * x + q_qq.conj() * y;
                    re[ip] = nx.re;
                    im[ip] = nx.im;
                    re[iq] = ny.re;
                    im[iq] = ny.im;
                }
                re[kpq] = 0.0;
                im[kpq] = 0.0;
                re[q * n + p] = 0.0;
                im[q * n + p] = 0.0;
                im[p * n + p] = 0.0;
                im[q * n + q] = 0.0;

                // V <- V Q
                for k in 0..n {
                    let x = v.get(k, p);
                    let y = v.get(k, q);
                    v.set(k, p, x * q_pp + y * q_qp);
                    v.set(k, q, x * q_pq + y * q_qq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| re[i * n + i].total_cmp(&re[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&i| re[i * n + i]).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok(EigenDecomposition { values, vectors })
}
