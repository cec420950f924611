//! The cone of positive-definite matrices with the Finsler metric induced by
//! a Schatten norm: tangent norm `‖u‖_a = ‖a^{-1/2} u a^{-1/2}‖_p`, geodesics
//! `γ(t) = a^{1/2} (a^{-1/2} b a^{-1/2})^t a^{1/2}` and distance
//! `d(a, b) = ‖ln(a^{-1/2} b a^{-1/2})‖_p`.
//!
//! Congruences `x ↦ g x g^*` act by isometries for every `p`.

use crate::error::{Error, Result};
use crate::linalg::{
    check_invertible, schatten_norm, CMatrix, EigenDecomposition, HermitianMatrix, PosDefMatrix,
    SchattenP,
};

/// A tangent vector `u` at the point `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentAt {
    base: PosDefMatrix,
    u: HermitianMatrix,
}

impl TangentAt {
    pub fn new(base: PosDefMatrix, u: HermitianMatrix) -> Result<Self> {
        if base.n() != u.n() {
            return Err(Error::DimensionMismatch {
                expected: base.n(),
                found: u.n(),
            });
        }
        Ok(Self { base, u })
    }

    pub fn zero(base: PosDefMatrix) -> Self {
        let n = base.n();
        Self {
            base,
            u: HermitianMatrix::zeros(n),
        }
    }

    pub fn base(&self) -> &PosDefMatrix {
        &self.base
    }

    pub fn vector(&self) -> &HermitianMatrix {
        &self.u
    }

    /// The vector moved to the identity, `a^{-1/2} u a^{-1/2}`.
    pub fn whitened(&self) -> HermitianMatrix {
        self.base.whiten(&self.u)
    }

    pub fn norm(&self, p: SchattenP) -> f64 {
        schatten_norm(&self.whitened(), p)
    }

    pub fn check_base(&self, x: &PosDefMatrix) -> Result<()> {
        if &self.base != x {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// `self + s * other`; both must share a base point.
    pub fn axpy(&self, s: f64, other: &TangentAt) -> Result<TangentAt> {
        other.check_base(&self.base)?;
        Ok(Self {
            base: self.base.clone(),
            u: self.u.axpy(s, &other.u),
        })
    }

    pub fn scale(&self, s: f64) -> TangentAt {
        Self {
            base: self.base.clone(),
            u: self.u.scale(s),
        }
    }
}

/// `ln(a^{-1/2} b a^{-1/2})`.
pub fn whitened_log(a: &PosDefMatrix, b: &PosDefMatrix) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    let c = a.whiten(b.as_hermitian());
    let e = c.eigh()?;
    Ok(HermitianMatrix::new(e.rebuild(f64::ln)))
}

/// Geodesic distance `‖ln(a^{-1/2} b a^{-1/2})‖_p`.
pub fn distance(a: &PosDefMatrix, b: &PosDefMatrix, p: SchattenP) -> Result<f64> {
    a.check_same_dim(b)?;
    let c = a.whiten(b.as_hermitian());
    let e = c.eigh()?;
    Ok(p.norm_of(e.values.iter().map(|l| l.ln())))
}

/// `exp_x(v) = x^{1/2} e^{x^{-1/2} v x^{-1/2}} x^{1/2}`.
pub fn exp_point(x: &PosDefMatrix, v: &TangentAt) -> Result<PosDefMatrix> {
    v.check_base(x)?;
    let e = v.whitened().eigh()?;
    let m = x.sqrt_matrix().matmul(&e.vectors);
    let d: Vec<f64> = e.values.iter().map(|l| l.exp()).collect();
    PosDefMatrix::new(HermitianMatrix::new(m.sandwich_diag(&d)))
}

/// `log_x(y) = x^{1/2} ln(x^{-1/2} y x^{-1/2}) x^{1/2}`, the inverse of [`exp_point`].
pub fn log_point(x: &PosDefMatrix, y: &PosDefMatrix) -> Result<TangentAt> {
    let l = whitened_log(x, y)?;
    TangentAt::new(x.clone(), x.unwhiten(&l))
}

/// `g x g^*`.
pub fn congruence(g: &CMatrix, x: &PosDefMatrix) -> Result<PosDefMatrix> {
    if g.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            found: g.n(),
        });
    }
    check_invertible(g)?;
    PosDefMatrix::new(x.as_hermitian().congruence(g))
}

/// Differential of [`congruence`]: `u ↦ g u g^*`, based at `g x g^*`.
pub fn congruence_tangent(g: &CMatrix, v: &TangentAt) -> Result<TangentAt> {
    let base = congruence(g, v.base())?;
    TangentAt::new(base, v.vector().congruence(g))
}

/// The geodesic from `a` to `b`, with the spectral data of
/// `c = a^{-1/2} b a^{-1/2}` computed once.
#[derive(Debug, Clone)]
pub struct Geodesic {
    a: PosDefMatrix,
    b: PosDefMatrix,
    /// `a^{1/2} U` where `c = U diag(μ) U^*`.
    frame: CMatrix,
    c_eig: EigenDecomposition,
}

impl Geodesic {
    pub fn new(a: &PosDefMatrix, b: &PosDefMatrix) -> Result<Self> {
        a.check_same_dim(b)?;
        let c = a.whiten(b.as_hermitian());
        let c_eig = c.eigh()?;
        if c_eig.min() <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                min: c_eig.min(),
                max: c_eig.max(),
            });
        }
        let frame = a.sqrt_matrix().matmul(&c_eig.vectors);
        Ok(Self {
            a: a.clone(),
            b: b.clone(),
            frame,
            c_eig,
        })
    }

    pub fn start(&self) -> &PosDefMatrix {
        &self.a
    }

    pub fn end(&self) -> &PosDefMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// `γ(t) = a^{1/2} c^t a^{1/2}`, defined for every real `t`.
    pub fn eval(&self, t: f64) -> Result<PosDefMatrix> {
        if t == 0.0 {
            return Ok(self.a.clone());
        }
        if t == 1.0 {
            return Ok(self.b.clone());
        }
        let d: Vec<f64> = self.c_eig.values.iter().map(|m| m.powf(t)).collect();
        PosDefMatrix::new(HermitianMatrix::new(self.frame.sandwich_diag(&d)))
    }

    pub fn midpoint(&self) -> Result<PosDefMatrix> {
        self.eval(0.5)
    }

    /// `γ'(t) = a^{1/2} c^t ln(c) a^{1/2}`.
    pub fn velocity(&self, t: f64) -> Result<TangentAt> {
        let d: Vec<f64> = self
            .c_eig
            .values
            .iter()
            .map(|m| m.powf(t) * m.ln())
            .collect();
        TangentAt::new(self.eval(t)?, HermitianMatrix::new(self.frame.sandwich_diag(&d)))
    }

    /// Length over `[0, 1]`, equal to `d(a, b)`.
    pub fn length(&self, p: SchattenP) -> f64 {
        p.norm_of(self.c_eig.values.iter().map(|m| m.ln()))
    }

    /// Parallel transport from `a` to `b`: `u ↦ m u m^*` with
    /// `m = a^{1/2} c^{1/2} a^{-1/2}`.
    pub fn transport(&self, u: &TangentAt) -> Result<TangentAt> {
        u.check_base(&self.a)?;
        let half: Vec<f64> = self.c_eig.values.iter().map(|m| m.sqrt()).collect();
        let c_half = self.c_eig.vectors.sandwich_diag(&half);
        let m = self
            .a
            .sqrt_matrix()
            .matmul(&c_half)
            .matmul(self.a.inv_sqrt_matrix());
        TangentAt::new(self.b.clone(), u.vector().congruence(&m))
    }
}

/// Free-function form of [`Geodesic::eval`].
pub fn geodesic_eval(geo: &Geodesic, t: f64) -> Result<PosDefMatrix> {
    geo.eval(t)
}

/// Free-function form of [`Geodesic::transport`].
pub fn transport(geo: &Geodesic, u: &TangentAt) -> Result<TangentAt> {
    geo.transport(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: SchattenP = SchattenP::Real(2.0);

    fn pair() -> (PosDefMatrix, PosDefMatrix) {
        (
            PosDefMatrix::from_diag(&[1.0, 4.0]).unwrap(),
            PosDefMatrix::from_diag(&[4.0, 1.0]).unwrap(),
        )
    }

    #[test]
    fn diagonal_distance_closed_form() {
        let (a, b) = pair();
        let ln4 = 4f64.ln();
        assert!((distance(&a, &b, P2).unwrap() - 2f64.sqrt() * ln4).abs() < 1e-14);
        assert!((distance(&a, &b, SchattenP::Inf).unwrap() - ln4).abs() < 1e-14);
        assert!((distance(&a, &b, SchattenP::One).unwrap() - 2.0 * ln4).abs() < 1e-14);
        assert_eq!(distance(&a, &a, P2).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_midpoint() {
        let (a, b) = pair();
        let m = Geodesic::new(&a, &b).unwrap().eval(0.5).unwrap();
        assert!(m.as_matrix().max_abs_diff(&CMatrix::from_diag(&[2.0, 2.0])) < 1e-14);
    }

    #[test]
    fn geodesic_from_identity_is_matrix_exponential() {
        let lb = HermitianMatrix::from_real_rows(&[vec![0.3, 0.2], vec![0.2, -0.5]]).unwrap();
        let b = lb.exp().unwrap();
        let geo = Geodesic::new(&PosDefMatrix::identity(2), &b).unwrap();
        let g = geo.eval(0.3).unwrap();
        let expected = lb.scale(0.3).exp().unwrap();
        assert!(g.as_matrix().max_abs_diff(expected.as_matrix()) < 1e-14);
    }

    #[test]
    fn exp_point_diagonal() {
        let x = PosDefMatrix::from_diag(&[4.0, 9.0]).unwrap();
        let v = TangentAt::new(x.clone(), HermitianMatrix::from_diag(&[4.0 * 2f64.ln(), 0.0]))
            .unwrap();
        // commuting case: x exp(x^{-1} v) = diag(4 * 2, 9)
        let y = exp_point(&x, &v).unwrap();
        assert!(y.as_matrix().max_abs_diff(&CMatrix::from_diag(&[8.0, 9.0])) < 1e-12);
        let zero = TangentAt::zero(x.clone());
        assert!(exp_point(&x, &zero).unwrap().as_matrix().max_abs_diff(x.as_matrix()) < 1e-14);
    }

    #[test]
    fn log_at_identity_is_matrix_log() {
        let y = PosDefMatrix::from_diag(&[2.0, 5.0]).unwrap();
        let l = log_point(&PosDefMatrix::identity(2), &y).unwrap();
        assert!(l.vector().as_matrix().max_abs_diff(y.ln().as_matrix()) < 1e-15);
        let same = log_point(&y, &y).unwrap();
        assert!(same.vector().max_abs() < 1e-14);
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let (a, b) = pair();
        let v = TangentAt::zero(a.clone());
        assert_eq!(exp_point(&b, &v), Err(Error::BaseMismatch));
        let geo = Geodesic::new(&b, &a).unwrap();
        assert!(matches!(geo.transport(&v), Err(Error::BaseMismatch)));
    }

    #[test]
    fn transport_from_identity() {
        let v = HermitianMatrix::from_real_rows(&[vec![0.4, 0.1], vec![0.1, -0.3]]).unwrap();
        let w = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.5]]).unwrap();
        let b = v.exp().unwrap();
        let geo = Geodesic::new(&PosDefMatrix::identity(2), &b).unwrap();
        let moved = geo
            .transport(&TangentAt::new(PosDefMatrix::identity(2), w.clone()).unwrap())
            .unwrap();
        let half = v.scale(0.5).exp().unwrap();
        let expected = w.congruence(half.as_matrix());
        assert!(moved.vector().as_matrix().max_abs_diff(expected.as_matrix()) < 1e-14);
    }

    #[test]
    fn congruence_trivial_cases() {
        let (a, _) = pair();
        let same = congruence(&CMatrix::identity(2), &a).unwrap();
        assert_eq!(same.as_matrix(), a.as_matrix());
        let u = CMatrix::from_real_rows(&[vec![0.6, -0.8], vec![0.8, 0.6]]).unwrap();
        let id = congruence(&u, &PosDefMatrix::identity(2)).unwrap();
        assert!(id.as_matrix().max_abs_diff(&CMatrix::identity(2)) < 1e-15);
        let singular = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(
            congruence(&singular, &a),
            Err(Error::Singular { .. })
        ));
    }
}
