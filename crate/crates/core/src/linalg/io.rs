//! JSON matrix format: `{"n": int, "re": [[f64; n]; n], "im": [[f64; n]; n]}`.
//!
//! Numbers are written with 17 significant digits so that a save/load cycle
//! reproduces every entry bit for bit.

use std::fmt::Write;

use serde::Deserialize;

use super::hermitian::HermitianMatrix;
use super::matrix::CMatrix;
use crate::error::{Error, Result};

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Parses a general complex matrix.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let n = file.n;
    if n == 0 {
        return Err(Error::Format("matrix dimension must be positive".into()));
    }
    let flatten = |name: &str, rows: Vec<Vec<f64>>| -> Result<Vec<f64>> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!("\"{name}\" is not an {n}x{n} array")));
        }
        Ok(rows.into_iter().flatten().collect())
    };
    let re = flatten("re", file.re)?;
    let im = flatten("im", file.im)?;
    CMatrix::from_planes(n, re, im)
}

/// Parses a matrix and applies Hermitian symmetrization.
pub fn parse_hermitian(text: &str) -> Result<HermitianMatrix> {
    parse_matrix(text).map(HermitianMatrix::new)
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json(m: &CMatrix) -> String {
    let n = m.n();
    let mut out = String::new();
    let plane = |out: &mut String, data: &[f64]| {
        out.push('[');
        for i in 0..n {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for j in 0..n {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&fmt_f64(data[i * n + j]));
            }
            out.push(']');
        }
        out.push(']');
    };
    let _ = write!(out, "{{\"n\": {n}, \"re\": ");
    plane(&mut out, m.re());
    out.push_str(", \"im\": ");
    plane(&mut out, m.im());
    out.push('}');
    out
}
