//! Schatten-p norms.

use std::fmt;
use std::str::FromStr;

use super::eigen::jacobi_eigh;
use super::hermitian::HermitianMatrix;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Selector for the Schatten-p norm `‖A‖_p = (Σ σ_i^p)^{1/p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenP {
    /// Trace norm.
    One,
    /// `1 < p < ∞`.
    Real(f64),
    /// Operator norm.
    Inf,
}

impl SchattenP {
    /// `p` in `(1, ∞)`; `1` and `∞` have their own variants.
    pub fn real(p: f64) -> Result<Self> {
        if p.is_finite() && p > 1.0 {
            Ok(Self::Real(p))
        } else {
            Err(Error::Range(format!("Schatten exponent must satisfy 1 < p < ∞, got {p}")))
        }
    }

    /// Maps `1` to [`One`](Self::One) and `+∞` to [`Inf`](Self::Inf).
    pub fn from_exponent(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(Self::One)
        } else if p == f64::INFINITY {
            Ok(Self::Inf)
        } else {
            Self::real(p)
        }
    }

    pub fn exponent(&self) -> f64 {
        match *self {
            Self::One => 1.0,
            Self::Real(p) => p,
            Self::Inf => f64::INFINITY,
        }
    }

    /// Whether the norm is strictly convex (false for `p = 1` and `p = ∞`).
    pub fn is_strictly_convex(&self) -> bool {
        matches!(self, Self::Real(_))
    }

    /// Exponent of uniform convexity, `max(p, 2)`.
    pub fn convexity_exponent(&self) -> Option<f64> {
        match *self {
            Self::Real(p) => Some(p.max(2.0)),
            _ => None,
        }
    }

    /// Known uniform-convexity constant: `1` for `p ≥ 2` (Clarkson–McCarthy).
    /// For `1 < p < 2` the constant has to be estimated.
    pub fn convexity_constant(&self) -> Option<f64> {
        match *self {
            Self::Real(p) if p >= 2.0 => Some(1.0),
            _ => None,
        }
    }

    /// Norm of a vector of singular values (or absolute eigenvalues).
    pub fn norm_of(&self, sv: impl IntoIterator<Item = f64>) -> f64 {
        let sv: Vec<f64> = sv.into_iter().map(f64::abs).collect();
        let max = sv.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        match *self {
            Self::Inf => max,
            Self::One => sv.iter().sum(),
            Self::Real(p) => {
                if p == 2.0 {
                    return sv.iter().map(|x| x * x).sum::<f64>().sqrt();
                }
                let s: f64 = sv.iter().map(|x| (x / max).powf(p)).sum();
                max * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for SchattenP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "1"),
            Self::Real(p) => write!(f, "{p}"),
            Self::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for SchattenP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::Inf),
            t => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::Range(format!("not a Schatten exponent: {s:?}")))?;
                Self::from_exponent(p)
            }
        }
    }
}

/// Schatten-p norm of a Hermitian matrix from its eigenvalues.
pub fn schatten_norm(a: &HermitianMatrix, p: SchattenP) -> f64 {
    if p == SchattenP::Real(2.0) {
        return a.frobenius();
    }
    let e = jacobi_eigh(a.as_matrix()).expect("Jacobi converges on Hermitian input");
    p.norm_of(e.values)
}

/// Singular values of an arbitrary square matrix, descending.
///
/// Computed from the Hermitian dilation `[[0, A], [A^*, 0]]`, whose spectrum
/// is `±σ_i`; this keeps small singular values accurate to working precision
/// instead of the square-root loss of `eig(A^* A)`.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let n = a.n();
    let mut d = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            d.set(i, n + j, a.get(i, j));
            d.set(n + j, i, a.get(i, j).conj());
        }
    }
    let e = jacobi_eigh(&d).expect("Jacobi converges on Hermitian input");
    let mut sv: Vec<f64> = e.values[n..].iter().map(|x| x.max(0.0)).collect();
    sv.reverse();
    sv
}

/// Schatten-p norm of an arbitrary square matrix.
pub fn schatten_norm_general(a: &CMatrix, p: SchattenP) -> f64 {
    if p == SchattenP::Real(2.0) {
        return a.frobenius();
    }
    p.norm_of(singular_values(a))
}
