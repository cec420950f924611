//! Loading matrix files with exit-code aware errors.

use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use pcone::linalg::io::parse_matrix;
use pcone::linalg::{CMatrix, HermitianMatrix, PosDefMatrix};

use crate::error::CliError;

pub fn load_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        ErrorKind::NotFound => CliError::NotFound(path.to_path_buf()),
        _ => CliError::Io {
            path: path.to_path_buf(),
            msg: e.to_string(),
        },
    })?;
    parse_matrix(&text).map_err(|e| match e {
        pcone::Error::Format(msg) => CliError::Malformed {
            path: path.to_path_buf(),
            msg,
        },
        other => CliError::Malformed {
            path: path.to_path_buf(),
            msg: other.to_string(),
        },
    })
}

/// Hermitian part of the stored matrix.
pub fn load_hermitian(path: &Path) -> Result<HermitianMatrix, CliError> {
    load_matrix(path).map(HermitianMatrix::new)
}

pub fn load_pd(path: &Path) -> Result<PosDefMatrix, CliError> {
    Ok(PosDefMatrix::new(load_hermitian(path)?)?)
}

/// Fails with a dimension error unless all sizes agree.
pub fn same_dims(dims: &[(&Path, usize)]) -> Result<usize, CliError> {
    let (first, n) = dims[0];
    for &(path, m) in &dims[1..] {
        if m != n {
            return Err(CliError::Dimension(format!(
                "{} is {n}x{n} but {} is {m}x{m}",
                first.display(),
                path.display()
            )));
        }
    }
    Ok(n)
}
