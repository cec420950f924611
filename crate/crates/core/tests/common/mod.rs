//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use pcone::cone::TangentAt;
use pcone::linalg::{CMatrix, HermitianMatrix, PosDefMatrix};
use pcone::random::InstanceGen;

/// Dimensions cycled through by the randomized checks.
pub const DIMS: [usize; 4] = [2, 3, 4, 6];

pub fn dim_for(trial: usize) -> usize {
    DIMS[trial % DIMS.len()]
}

/// Tangent vector at `x` whose whitened form is a random Hermitian matrix of
/// operator norm `scale`.
pub fn tangent(gen: &mut InstanceGen, x: &PosDefMatrix, scale: f64) -> TangentAt {
    let h = gen.hermitian(x.n()).scale(scale);
    TangentAt::new(x.clone(), x.unwhiten(&h)).unwrap()
}

/// Tangent vector at `x` with a prescribed whitened form.
pub fn tangent_from_whitened(x: &PosDefMatrix, h: &HermitianMatrix) -> TangentAt {
    TangentAt::new(x.clone(), x.unwhiten(h)).unwrap()
}

/// Plain Nelder–Mead simplex search (standard coefficients 1, 2, ½, ½).
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let m = x0.len();
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..m {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    for _ in 0..max_iter {
        let mut idx: Vec<usize> = (0..=m).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
        if (vals[m] - vals[0]).abs() <= ftol {
            break;
        }
        let centroid: Vec<f64> = (0..m)
            .map(|j| simplex[..m].iter().map(|v| v[j]).sum::<f64>() / m as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[m])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[m] = xe;
                vals[m] = fe;
            } else {
                simplex[m] = xr;
                vals[m] = fr;
            }
        } else if fr < vals[m - 1] {
            simplex[m] = xr;
            vals[m] = fr;
        } else {
            let xc = if fr < vals[m] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < vals[m].min(fr) {
                simplex[m] = xc;
                vals[m] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=m {
                    simplex[i] = best
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, v)| b + 0.5 * (v - b))
                        .collect();
                    vals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=m).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    (simplex[best].clone(), vals[best])
}

/// Nelder–Mead restarted from its own optimum until the value stalls.
pub fn nelder_mead_restarted(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64) -> (Vec<f64>, f64) {
    let (mut x, mut v) = nelder_mead(&f, x0, step, 1e-15, 20_000);
    for k in 0..8 {
        let (x2, v2) = nelder_mead(&f, &x, step * 0.1f64.powi(k + 1).max(1e-6), 1e-15, 20_000);
        if v2 >= v - 1e-15 {
            break;
        }
        x = x2;
        v = v2;
    }
    (x, v)
}

/// `exp(diag(z))` as a positive matrix.
pub fn exp_diag(z: &[f64]) -> PosDefMatrix {
    let d: Vec<f64> = z.iter().map(|v| v.exp()).collect();
    PosDefMatrix::from_diag(&d).unwrap()
}

/// Unitary `V diag(e^{2πik/m}) V^*` of order `m`.
pub fn finite_order_unitary(gen: &mut InstanceGen, n: usize, m: usize) -> CMatrix {
    let v = gen.unitary(n);
    let phases: Vec<Complex64> = (0..n)
        .map(|k| {
            let j = (k + gen.index(m)) % m;
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64)
        })
        .collect();
    v.matmul(&CMatrix::from_complex_diag(&phases)).matmul(&v.adjoint())
}

/// Largest entry modulus.
pub fn max_entry(m: &CMatrix) -> f64 {
    m.max_abs()
}
