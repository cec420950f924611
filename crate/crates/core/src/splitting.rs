//! Block-diagonal conditional expectations, Lie-triple and reductive-pair
//! checks, and the factorization `g = g_A e^v u` of invertible matrices.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::io::{fmt_f64, to_json};
use crate::linalg::{
    check_invertible, gram_rank, schatten_norm, schatten_norm_general, CMatrix, HermitianMatrix,
    HermitianSubspace, PosDefMatrix, SchattenP,
};
use crate::random::InstanceGen;

/// Ordered disjoint cover of `{0, .., n-1}` by nonempty index blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {k} is empty")));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "index {i} out of range for n = {n}"
                    )));
                }
                if block_of[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
                block_of[i] = k;
            }
        }
        if let Some(i) = block_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidPartition(format!("index {i} is not covered")));
        }
        Ok(Self { blocks, block_of })
    }

    /// `n` singleton blocks: the diagonal subalgebra.
    pub fn diagonal(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: n,
            });
        }
        Ok(())
    }
}

impl FromStr for BlockPartition {
    type Err = Error;

    /// `"0,1|2,3"`; the dimension is the number of indices listed.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let mut block = Vec::new();
            for tok in part.split(',') {
                let tok = tok.trim();
                let i: usize = tok.parse().map_err(|_| {
                    Error::InvalidPartition(format!("bad index {tok:?} in {s:?}"))
                })?;
                block.push(i);
            }
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Self::new(n, blocks)
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Compression to the diagonal blocks of `part`.
pub fn conditional_expectation(x: &CMatrix, part: &BlockPartition) -> Result<CMatrix> {
    part.check_dim(x.n())?;
    let n = x.n();
    let mut out = x.clone();
    for i in 0..n {
        for j in 0..n {
            if !part.same_block(i, j) {
                out.set(i, j, Complex64::new(0.0, 0.0));
            }
        }
    }
    Ok(out)
}

fn expect_hermitian(x: &HermitianMatrix, part: &BlockPartition) -> Result<HermitianMatrix> {
    Ok(HermitianMatrix::new(conditional_expectation(x.as_matrix(), part)?))
}

/// Orthonormal basis of Hermitian matrices supported on index pairs accepted
/// by `keep`: `E_ii`, `(E_ij + E_ji)/√2`, `i(E_ij - E_ji)/√2`.
fn pair_basis(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<HermitianMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for i in 0..n {
        if keep(i, i) {
            let mut m = CMatrix::zeros(n);
            m.set(i, i, Complex64::new(1.0, 0.0));
            out.push(HermitianMatrix::new(m));
        }
        for j in (i + 1)..n {
            if !keep(i, j) {
                continue;
            }
            let mut re = CMatrix::zeros(n);
            re.set(i, j, Complex64::new(h, 0.0));
            re.set(j, i, Complex64::new(h, 0.0));
            out.push(HermitianMatrix::new(re));
            let mut im = CMatrix::zeros(n);
            im.set(i, j, Complex64::new(0.0, h));
            im.set(j, i, Complex64::new(0.0, -h));
            out.push(HermitianMatrix::new(im));
        }
    }
    out
}

/// Orthonormal basis of the block-diagonal Hermitian matrices.
pub fn block_diagonal_basis(part: &BlockPartition) -> Vec<HermitianMatrix> {
    pair_basis(part.n(), |i, j| part.same_block(i, j))
}

/// Orthonormal basis of the Hermitian matrices with vanishing diagonal blocks.
pub fn off_block_basis(part: &BlockPartition) -> Vec<HermitianMatrix> {
    pair_basis(part.n(), |i, j| !part.same_block(i, j))
}

/// Orthonormal basis of all `n × n` Hermitian matrices.
pub fn hermitian_basis(n: usize) -> Vec<HermitianMatrix> {
    pair_basis(n, |_, _| true)
}

/// Absolute tolerance on defects of orthonormalized families.
pub const STRUCTURE_TOL: f64 = 1e-9;

fn dim_of(basis: &[HermitianMatrix]) -> Option<usize> {
    basis.first().map(HermitianMatrix::n)
}

fn lie_triple_defect(sub: &HermitianSubspace) -> f64 {
    let q = sub.basis();
    let mut defect: f64 = 0.0;
    for i in 0..q.len() {
        for j in (i + 1)..q.len() {
            let vw = q[i].as_matrix().commutator(q[j].as_matrix());
            for s in q {
                let t = HermitianMatrix::new(vw.commutator(s.as_matrix()));
                defect = defect.max(sub.residual(&t));
            }
        }
    }
    defect
}

/// Whether `span(basis)` is closed under `[[v, w], s]`.
///
/// The family is orthonormalized first, so the defect (largest Frobenius
/// distance of a double bracket to the span) is on the unit scale.
pub fn is_lie_triple(basis: &[HermitianMatrix]) -> Result<(bool, f64)> {
    let Some(n) = dim_of(basis) else {
        return Ok((true, 0.0));
    };
    let sub = HermitianSubspace::new(n, basis)?;
    let defect = lie_triple_defect(&sub);
    Ok((defect <= STRUCTURE_TOL, defect))
}

/// Whether `ad²` of `span(s_basis)` preserves `span(s_basis)` and
/// `span(sprime_basis)`.
///
/// `ad_s²` for all `s` is polarized into the symmetric pairs
/// `[s_i, [s_j, x]] + [s_j, [s_i, x]]`.
pub fn is_reductive(
    s_basis: &[HermitianMatrix],
    sprime_basis: &[HermitianMatrix],
) -> Result<(bool, f64)> {
    let Some(n) = dim_of(s_basis).or(dim_of(sprime_basis)) else {
        return Ok((true, 0.0));
    };
    let s = HermitianSubspace::new(n, s_basis)?;
    let sp = HermitianSubspace::new(n, sprime_basis)?;
    let union: Vec<HermitianMatrix> = s.basis().iter().chain(sp.basis()).cloned().collect();
    let rank = gram_rank(&union);
    if rank < union.len() {
        return Err(Error::DegenerateBasis {
            rank,
            len: union.len(),
        });
    }
    let mut defect = lie_triple_defect(&s);
    let q = s.basis();
    for x in sp.basis() {
        for i in 0..q.len() {
            let ix = q[i].as_matrix().commutator(x.as_matrix());
            for j in i..q.len() {
                let jx = q[j].as_matrix().commutator(x.as_matrix());
                let t = &q[i].as_matrix().commutator(&jx) + &q[j].as_matrix().commutator(&ix);
                let t = HermitianMatrix::new(t);
                let scale = if i == j { 0.5 } else { std::f64::consts::FRAC_1_SQRT_2 };
                defect = defect.max(scale * sp.residual(&t));
            }
        }
    }
    Ok((defect <= STRUCTURE_TOL, defect))
}

/// `g = g_A e^v u` with `g_A = e^s` block-diagonal positive, `E(v) = 0` and
/// `u` unitary.
#[derive(Debug, Clone)]
pub struct CprFactorization {
    pub g_a: CMatrix,
    pub v: HermitianMatrix,
    pub u: CMatrix,
    pub s: HermitianMatrix,
    /// `max|g - g_A e^v u| / max|g|`.
    pub residual: f64,
    /// `‖E(ln(e^{-s} g g^* e^{-s}))‖_p` at the returned `s`.
    pub stationarity: f64,
    pub iterations: usize,
}

impl CprFactorization {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"g_A\": {}, \"v\": {}, \"u\": {}, \"s\": {}, \"residual\": {}}}",
            to_json(&self.g_a),
            to_json(self.v.as_matrix()),
            to_json(&self.u),
            to_json(self.s.as_matrix()),
            fmt_f64(self.residual)
        )
    }
}

/// Iteration cap of the factorization solver.
pub const CPR_MAX_ITERATIONS: usize = 200;

struct CprProblem<'a> {
    p_mat: &'a PosDefMatrix,
    part: &'a BlockPartition,
    basis: Vec<HermitianMatrix>,
}

impl CprProblem<'_> {
    fn point(&self, c: &[f64]) -> HermitianMatrix {
        self.basis
            .iter()
            .zip(c)
            .fold(HermitianMatrix::zeros(self.part.n()), |acc, (q, &x)| acc.axpy(x, q))
    }

    /// `ln(e^{-s} P e^{-s})` for `s` with coordinates `c`.
    fn log_whitened(&self, c: &[f64]) -> Result<HermitianMatrix> {
        let e = self.point(c).scale(-1.0).exp()?;
        let m = self.p_mat.as_hermitian().congruence(e.as_matrix());
        Ok(PosDefMatrix::new(m)?.ln())
    }

    /// Coordinates of `E(ln(e^{-s} P e^{-s}))`.
    fn residual(&self, c: &[f64]) -> Result<Vec<f64>> {
        let l = self.log_whitened(c)?;
        Ok(self.basis.iter().map(|q| q.inner(&l)).collect())
    }
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Dense solve by Gaussian elimination with partial pivoting; `None` if singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let m = b.len();
    for k in 0..m {
        let piv = (k..m).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[piv][k].abs() < 1e-300 {
            return None;
        }
        a.swap(k, piv);
        b.swap(k, piv);
        for i in (k + 1)..m {
            let f = a[i][k] / a[k][k];
            for j in k..m {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; m];
    for k in (0..m).rev() {
        let s: f64 = ((k + 1)..m).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Factorization of `g` relative to the block-diagonal subalgebra of `part`,
/// started from `s = ½ E(ln gg^*)`.
pub fn cpr_factorize(g: &CMatrix, part: &BlockPartition, p: SchattenP) -> Result<CprFactorization> {
    cpr_factorize_from(g, part, p, None)
}

/// As [`cpr_factorize`] from a caller-supplied block-diagonal initial `s`.
///
/// Solves `E(ln(e^{-s} gg^* e^{-s})) = 0`. Each iteration tries a Newton
/// step (finite-difference Jacobian in an orthonormal block-diagonal basis)
/// and falls back to the damped step `s + ½ E(…)`, halving on increase.
pub fn cpr_factorize_from(
    g: &CMatrix,
    part: &BlockPartition,
    p: SchattenP,
    s0: Option<&HermitianMatrix>,
) -> Result<CprFactorization> {
    part.check_dim(g.n())?;
    check_invertible(g)?;
    let n = g.n();
    let p_mat = PosDefMatrix::from_matrix(g.matmul(&g.adjoint()))?;
    let prob = CprProblem {
        p_mat: &p_mat,
        part,
        basis: block_diagonal_basis(part),
    };
    let mut c: Vec<f64> = match s0 {
        Some(s) => {
            if s.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n(),
                });
            }
            prob.basis.iter().map(|q| q.inner(s)).collect()
        }
        None => {
            let l = p_mat.ln();
            prob.basis.iter().map(|q| 0.5 * q.inner(&l)).collect()
        }
    };

    let scale = 1.0 + p_mat.ln().frobenius();
    let target = 1e-13 * scale;
    let mut f = prob.residual(&c)?;
    let mut fnorm = norm2(&f);
    let mut iterations = 0;
    while fnorm > target {
        if iterations == CPR_MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                what: "block factorization",
                iterations,
                residual: fnorm,
            });
        }
        iterations += 1;
        let m = c.len();
        let h = 1e-6 * (1.0 + norm2(&c));
        let mut jac = vec![vec![0.0; m]; m];
        for k in 0..m {
            let mut cp = c.clone();
            let mut cm = c.clone();
            cp[k] += h;
            cm[k] -= h;
            let (fp, fm) = (prob.residual(&cp)?, prob.residual(&cm)?);
            for i in 0..m {
                jac[i][k] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let mut accepted = false;
        if let Some(delta) = solve(jac, f.iter().map(|x| -x).collect()) {
            let mut lam = 1.0;
            for _ in 0..10 {
                let trial: Vec<f64> = c.iter().zip(&delta).map(|(a, d)| a + lam * d).collect();
                if let Ok(ft) = prob.residual(&trial) {
                    let nt = norm2(&ft);
                    if nt < fnorm {
                        (c, f, fnorm) = (trial, ft, nt);
                        accepted = true;
                        break;
                    }
                }
                lam *= 0.5;
            }
        }
        if !accepted {
            let mut mu = 0.5;
            for _ in 0..40 {
                let trial: Vec<f64> = c.iter().zip(&f).map(|(a, d)| a + mu * d).collect();
                if let Ok(ft) = prob.residual(&trial) {
                    let nt = norm2(&ft);
                    if nt < fnorm {
                        (c, f, fnorm) = (trial, ft, nt);
                        accepted = true;
                        break;
                    }
                }
                mu *= 0.5;
            }
        }
        if !accepted {
            // no descent left: round-off floor
            if fnorm <= 1e-10 * scale {
                break;
            }
            return Err(Error::NoConvergence {
                what: "block factorization",
                iterations,
                residual: fnorm,
            });
        }
    }

    let s = prob.point(&c);
    let l = prob.log_whitened(&c)?;
    let v = l.scale(0.5);
    // drop the round-off left in the diagonal blocks
    let v = &v - &expect_hermitian(&v, part)?;
    let g_a_pd = s.exp()?;
    let g_a = g_a_pd.as_matrix().clone();
    let s_inv = s.scale(-1.0).exp()?;
    let v_inv = v.scale(-1.0).exp()?;
    let u = v_inv.as_matrix().matmul(s_inv.as_matrix()).matmul(g);
    let ev = v.exp()?;
    let recon = g_a.matmul(ev.as_matrix()).matmul(&u);
    let residual = recon.max_abs_diff(g) / g.max_abs();
    let stationarity = schatten_norm(&expect_hermitian(&l, part)?, p);
    Ok(CprFactorization {
        g_a,
        v,
        u,
        s,
        residual,
        stationarity,
        iterations,
    })
}

/// Sampled lower bounds for the operator norms of `E` and `1 - E` on the
/// Schatten-p class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationNorms {
    pub norm_e: f64,
    pub norm_one_minus_e: f64,
}

impl ExpectationNorms {
    /// Interpolation bound `2^{|1 - 2/p|}` for `‖1 - E‖`.
    pub fn one_minus_e_bound(p: SchattenP) -> f64 {
        let e = p.exponent();
        2f64.powf((1.0 - 2.0 / e).abs())
    }
}

/// Supremum of `‖E(X)‖_p / ‖X‖_p` and `‖X - E(X)‖_p / ‖X‖_p` over `trials`
/// random complex `X`, block-diagonal and off-block witnesses, and (at
/// `p = 2`) a power iteration.
pub fn expectation_norm_estimate(
    part: &BlockPartition,
    p: SchattenP,
    trials: usize,
    gen: &mut InstanceGen,
) -> Result<ExpectationNorms> {
    let n = part.n();
    let mut out = ExpectationNorms {
        norm_e: 0.0,
        norm_one_minus_e: 0.0,
    };
    let record = |x: &CMatrix, out: &mut ExpectationNorms| -> Result<()> {
        let nx = schatten_norm_general(x, p);
        if nx == 0.0 {
            return Ok(());
        }
        let ex = conditional_expectation(x, part)?;
        let rest = x - &ex;
        out.norm_e = out.norm_e.max(schatten_norm_general(&ex, p) / nx);
        out.norm_one_minus_e = out.norm_one_minus_e.max(schatten_norm_general(&rest, p) / nx);
        Ok(())
    };
    for t in 0..trials {
        let x = gen.complex(n);
        record(&x, &mut out)?;
        // structured witnesses on alternate trials
        let ex = conditional_expectation(&x, part)?;
        if t % 2 == 0 {
            record(&ex, &mut out)?;
        } else {
            record(&(&x - &ex), &mut out)?;
        }
    }
    if p == SchattenP::Real(2.0) && trials > 0 {
        // 1 - E is self-adjoint and idempotent on Hilbert-Schmidt, so one
        // application lands in its top eigenspace.
        let mut x = gen.complex(n);
        for _ in 0..3 {
            let y = &x - &conditional_expectation(&x, part)?;
            if y.frobenius() == 0.0 {
                break;
            }
            x = y.scale(1.0 / y.frobenius());
            record(&x, &mut out)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SchattenP;

    const P2: SchattenP = SchattenP::Real(2.0);

    #[test]
    fn partition_parse_and_validate() {
        let p: BlockPartition = "0,1|2,3".parse().unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.to_string(), "0,1|2,3");
        assert!(p.same_block(0, 1) && !p.same_block(1, 2));
        assert!("0,1|1,2".parse::<BlockPartition>().is_err());
        assert!("0,2".parse::<BlockPartition>().is_err());
        assert!("0,a".parse::<BlockPartition>().is_err());
        assert!(BlockPartition::new(2, vec![vec![0], vec![]]).is_err());
        assert_eq!(BlockPartition::diagonal(3).to_string(), "0|1|2");
    }

    #[test]
    fn expectation_compresses() {
        let x = CMatrix::from_real_rows(&[vec![1.0, 5.0], vec![7.0, 2.0]]).unwrap();
        let e = conditional_expectation(&x, &BlockPartition::diagonal(2)).unwrap();
        assert_eq!(e, CMatrix::from_diag(&[1.0, 2.0]));
        assert!(conditional_expectation(&x, &BlockPartition::diagonal(3)).is_err());
    }

    #[test]
    fn bases_are_orthonormal_and_complementary() {
        let part: BlockPartition = "0,2|1".parse().unwrap();
        let a = block_diagonal_basis(&part);
        let b = off_block_basis(&part);
        assert_eq!(a.len(), 5);
        assert_eq!(a.len() + b.len(), 9);
        let all: Vec<_> = a.iter().chain(&b).collect();
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((x.inner(y) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn lie_triples() {
        let part = BlockPartition::diagonal(3);
        assert_eq!(is_lie_triple(&block_diagonal_basis(&part)).unwrap(), (true, 0.0));
        assert!(is_lie_triple(&hermitian_basis(2)).unwrap().0);
        // [[σz, σx], σz] = -4σx stays in span{σz, σx}
        let sz = HermitianMatrix::from_diag(&[1.0, -1.0]);
        let sx = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (pass, defect) = is_lie_triple(&[sz.clone(), sx.clone()]).unwrap();
        assert!(pass, "defect {defect}");
        // off-diagonal Hermitians of n = 3 are not a triple: brackets leave them
        let (pass, defect) = is_lie_triple(&off_block_basis(&part)).unwrap();
        assert!(!pass && defect > 0.1);
    }

    #[test]
    fn reductive_pairs() {
        let part = BlockPartition::diagonal(3);
        let s = block_diagonal_basis(&part);
        let sp = off_block_basis(&part);
        let (pass, defect) = is_reductive(&s, &sp).unwrap();
        assert!(pass && defect < 1e-14);
        assert!(is_reductive(&s, &[]).unwrap().0);
        assert!(matches!(
            is_reductive(&s, &[s[0].clone()]),
            Err(Error::DegenerateBasis { .. })
        ));
    }

    #[test]
    fn factorize_trivial_cases() {
        let part: BlockPartition = "0,1|2".parse().unwrap();
        let s = HermitianMatrix::from_real_rows(&[
            vec![0.3, 0.2, 0.0],
            vec![0.2, -0.1, 0.0],
            vec![0.0, 0.0, 0.5],
        ])
        .unwrap();
        let g = s.exp().unwrap().as_matrix().clone();
        let f = cpr_factorize(&g, &part, P2).unwrap();
        assert!(f.v.max_abs() < 1e-12);
        assert!(f.g_a.max_abs_diff(&g) < 1e-12);
        assert!(f.u.max_abs_diff(&CMatrix::identity(3)) < 1e-12);

        let mut gen = InstanceGen::new(5);
        let u = gen.unitary(3);
        let f = cpr_factorize(&u, &part, P2).unwrap();
        assert!(f.g_a.max_abs_diff(&CMatrix::identity(3)) < 1e-12);
        assert!(f.u.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn factorize_random() {
        let mut gen = InstanceGen::new(9);
        let part = BlockPartition::diagonal(4);
        for _ in 0..20 {
            let g = gen.invertible(4, 50.0);
            let f = cpr_factorize(&g, &part, P2).unwrap();
            assert!(f.residual < 1e-10);
            assert!(conditional_expectation(f.v.as_matrix(), &part).unwrap().max_abs() < 1e-12);
            assert!(f.u.unitarity_defect() < 1e-10);
            assert!(f.stationarity < 1e-10);
        }
    }

    #[test]
    fn factorize_rejects_singular() {
        let g = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(
            cpr_factorize(&g, &BlockPartition::diagonal(2), P2),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn expectation_norms_hilbert() {
        let mut gen = InstanceGen::new(3);
        let part = BlockPartition::diagonal(3);
        let r = expectation_norm_estimate(&part, P2, 20, &mut gen).unwrap();
        assert!((r.norm_e - 1.0).abs() < 1e-12);
        assert!((r.norm_one_minus_e - 1.0).abs() < 1e-12);
        assert!((ExpectationNorms::one_minus_e_bound(SchattenP::Real(4.0)) - 2f64.sqrt()).abs() < 1e-15);
    }
}
