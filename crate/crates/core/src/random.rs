//! Seeded random instances for tests and the verification harness.
//!
//! Hermitian samples have i.i.d. standard normal real and imaginary parts
//! (real on the diagonal) and are rescaled to operator norm one; positive
//! points are exponentials of such samples.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{singular_values, CMatrix, HermitianMatrix, PosDefMatrix};

#[derive(Debug, Clone)]
pub struct InstanceGen {
    rng: ChaCha8Rng,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl InstanceGen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent generator for one trial of one stream, so results do not
    /// depend on the order in which trials are evaluated.
    pub fn for_trial(seed: u64, stream: u64, trial: u64) -> Self {
        Self::new(mix(mix(seed ^ mix(stream)) ^ trial))
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// Gaussian Hermitian matrix without rescaling.
    pub fn gaussian_hermitian(&mut self, n: usize) -> HermitianMatrix {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(self.normal(), 0.0));
            for j in (i + 1)..n {
                let z = Complex64::new(self.normal(), self.normal());
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        HermitianMatrix::new(m)
    }

    /// Gaussian Hermitian matrix scaled to operator norm one.
    pub fn hermitian(&mut self, n: usize) -> HermitianMatrix {
        loop {
            let h = self.gaussian_hermitian(n);
            let r = h.spectral_radius().expect("Jacobi converges");
            if r > 1e-8 {
                return h.scale(1.0 / r);
            }
        }
    }

    /// Gaussian complex matrix (no symmetry).
    pub fn complex(&mut self, n: usize) -> CMatrix {
        CMatrix::from_fn(n, |_, _| Complex64::new(self.normal(), self.normal()))
    }

    /// `e^S` with `S` from [`hermitian`](Self::hermitian).
    pub fn pd(&mut self, n: usize) -> PosDefMatrix {
        self.hermitian(n).exp().expect("exp of a bounded Hermitian matrix")
    }

    /// `e^{iπH}` for a random Hermitian `H` with operator norm one.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        let h = self.hermitian(n);
        let e = h.eigh().expect("Jacobi converges");
        let phases: Vec<Complex64> = e
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, std::f64::consts::PI * l))
            .collect();
        e.vectors
            .matmul(&CMatrix::from_complex_diag(&phases))
            .matmul(&e.vectors.adjoint())
    }

    /// Gaussian complex matrix with condition number at most `max_cond`.
    pub fn invertible(&mut self, n: usize, max_cond: f64) -> CMatrix {
        loop {
            let g = self.complex(n).scale(1.0 / (n as f64).sqrt());
            let sv = singular_values(&g);
            if sv[0] <= max_cond * sv[n - 1] {
                return g;
            }
        }
    }

    /// Two Hermitian matrices diagonal in a common random basis.
    pub fn commuting_pair(&mut self, n: usize) -> (HermitianMatrix, HermitianMatrix) {
        let u = self.unitary(n);
        let diag = |gen: &mut Self| -> HermitianMatrix {
            let d: Vec<f64> = (0..n).map(|_| gen.uniform(-1.0, 1.0)).collect();
            HermitianMatrix::from_diag(&d).congruence(&u)
        };
        let v = diag(self);
        let w = diag(self);
        (v, w)
    }
}
