use super::hermitian::{HermitianMatrix, PosDefMatrix, EPS_PD};
use super::matrix::CMatrix;
use super::norms::singular_values;
use crate::error::{Error, Result};

/// `g = e^w u` with `w` Hermitian and `u` unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Polar {
    pub w: HermitianMatrix,
    pub u: CMatrix,
}

/// Rejects `g` whose smallest singular value is below `EPS_PD` times the largest.
pub fn check_invertible(g: &CMatrix) -> Result<()> {
    let sv = singular_values(g);
    let (max, min) = (sv[0], sv[sv.len() - 1]);
    let ratio = if max > 0.0 { min / max } else { 0.0 };
    if !(ratio > EPS_PD) {
        return Err(Error::Singular { ratio });
    }
    Ok(())
}

/// Left polar decomposition: `w = ½ ln(g g^*)`, `u = e^{-w} g`.
pub fn polar(g: &CMatrix) -> Result<Polar> {
    check_invertible(g)?;
    let p = PosDefMatrix::from_matrix(g.matmul(&g.adjoint()))?;
    let w = p.ln().scale(0.5);
    let u = p.inv_sqrt_matrix().matmul(g);
    Ok(Polar { w, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn diagonal_with_phase() {
        let g = CMatrix::from_complex_diag(&[Complex64::new(0.0, 2.0), Complex64::new(3.0, 0.0)]);
        let Polar { w, u } = polar(&g).unwrap();
        let w_expected = CMatrix::from_diag(&[2f64.ln(), 3f64.ln()]);
        assert!(w.as_matrix().max_abs_diff(&w_expected) < 1e-15);
        let u_expected = CMatrix::from_complex_diag(&[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
        assert!(u.max_abs_diff(&u_expected) < 1e-15);
    }

    #[test]
    fn unitary_input() {
        let c = 0.6;
        let s = 0.8;
        let g = CMatrix::from_real_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        let Polar { w, u } = polar(&g).unwrap();
        assert!(w.max_abs() < 1e-15);
        assert!(u.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn singular_input_is_rejected() {
        let g = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(polar(&g), Err(Error::Singular { .. })));
    }
}
