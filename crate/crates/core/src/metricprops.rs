//! Signed gaps for the metric inequalities of the cone.
//!
//! Every evaluator returns `rhs - lhs` (or the analogous difference) so that a
//! non-negative value means the inequality holds on that instance.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::cone::{distance, exp_point, Geodesic, TangentAt};
use crate::error::{Error, Result};
use crate::linalg::io::fmt_f64;
use crate::linalg::{
    bch_curvature_term, schatten_norm, CMatrix, HermitianMatrix, HermitianSubspace, PosDefMatrix,
    SchattenP,
};
use crate::random::InstanceGen;

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub name: String,
    pub gap: f64,
    pub inputs_digest: String,
    pub tolerance_used: f64,
}

impl GapReport {
    pub fn new(name: impl Into<String>, gap: f64, inputs_digest: String, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            gap,
            inputs_digest,
            tolerance_used: tolerance,
        }
    }

    pub fn pass(&self) -> bool {
        self.gap >= -self.tolerance_used
    }

    /// One JSON object, numbers with 17 significant digits.
    pub fn to_json_line(&self) -> String {
        let num = |x: f64| {
            if x.is_finite() {
                fmt_f64(x)
            } else {
                "null".to_string()
            }
        };
        format!(
            "{{\"name\": {}, \"gap\": {}, \"inputs_digest\": \"{}\", \"tolerance_used\": {}, \"pass\": {}}}",
            serde_json::Value::String(self.name.clone()),
            num(self.gap),
            self.inputs_digest,
            num(self.tolerance_used),
            self.pass()
        )
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.name,
            fmt_f64(self.gap),
            self.inputs_digest,
            fmt_f64(self.tolerance_used),
            self.pass()
        )
    }
}

/// First 16 hex digits of the SHA-256 of the matrices' entries and extra scalars.
pub fn inputs_digest(matrices: &[&CMatrix], scalars: &[f64]) -> String {
    let mut h = Sha256::new();
    for m in matrices {
        h.update((m.n() as u64).to_le_bytes());
        for x in m.re().iter().chain(m.im()) {
            h.update(x.to_le_bytes());
        }
    }
    for x in scalars {
        h.update(x.to_le_bytes());
    }
    let bytes = h.finalize();
    let mut out = String::with_capacity(16);
    for b in &bytes[..8] {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// `d(exp_x v, exp_x w) - ‖v - w‖_x`, non-negative by the exponential metric
/// increasing property.
pub fn emi_gap(x: &PosDefMatrix, v: &TangentAt, w: &TangentAt, p: SchattenP) -> Result<f64> {
    v.check_base(x)?;
    w.check_base(x)?;
    let lhs = v.axpy(-1.0, w)?.norm(p);
    let d = distance(&exp_point(x, v)?, &exp_point(x, w)?, p)?;
    Ok(d - lhs)
}

/// `½(d(x,y)^p + d(x,z)^p) - d(x, m)^p - d(y,z)^p / (2K)^p` with `m` the
/// midpoint of `y` and `z`. Only the exponent-`p` form for `p ≥ 2` is covered.
pub fn pparallelogram_gap(
    x: &PosDefMatrix,
    y: &PosDefMatrix,
    z: &PosDefMatrix,
    p: SchattenP,
    k: f64,
) -> Result<f64> {
    let e = match p {
        SchattenP::Real(e) if e >= 2.0 => e,
        _ => {
            return Err(Error::UnsupportedNorm {
                p: p.to_string(),
                op: "semi-parallelogram law (needs real p >= 2)",
            })
        }
    };
    if !(k > 0.0) {
        return Err(Error::Range(format!("convexity constant must be positive, got {k}")));
    }
    let m = Geodesic::new(y, z)?.midpoint()?;
    let dxy = distance(x, y, p)?;
    let dxz = distance(x, z, p)?;
    let dxm = distance(x, &m, p)?;
    let dyz = distance(y, z, p)?;
    Ok(0.5 * (dxy.powf(e) + dxz.powf(e)) - dxm.powf(e) - (dyz / (2.0 * k)).powf(e))
}

/// `½(f(0) + f(1)) - f(½)` for `f(t) = d(α(t), β(t))`.
pub fn geodesic_convexity_gap(alpha: &Geodesic, beta: &Geodesic, p: SchattenP) -> Result<f64> {
    if alpha.n() != beta.n() {
        return Err(Error::DimensionMismatch {
            expected: alpha.n(),
            found: beta.n(),
        });
    }
    let f0 = distance(alpha.start(), beta.start(), p)?;
    let f1 = distance(alpha.end(), beta.end(), p)?;
    let fm = distance(&alpha.midpoint()?, &beta.midpoint()?, p)?;
    Ok(0.5 * (f0 + f1) - fm)
}

/// `t ‖ln(a^{-1/2} b a^{-1/2})‖_p - ‖ln(a^{-t/2} b^t a^{-t/2})‖_p` for `t ∈ [0, 1]`.
pub fn loewner_heinz_gap(a: &PosDefMatrix, b: &PosDefMatrix, t: f64, p: SchattenP) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Range(format!("t must lie in [0, 1], got {t}")));
    }
    let full = distance(a, b, p)?;
    let at = a.powf(t)?;
    let bt = b.powf(t)?;
    let partial = distance(&at, &bt, p)?;
    Ok(t * full - partial)
}

fn check_curvature_inputs(
    x: &PosDefMatrix,
    v: &TangentAt,
    w: &TangentAt,
    p: SchattenP,
) -> Result<f64> {
    v.check_base(x)?;
    w.check_base(x)?;
    let gap = v.axpy(-1.0, w)?.norm(p);
    if gap < 1e-10 {
        return Err(Error::DegenerateInput(format!(
            "‖v - w‖ = {gap:e} is below 1e-10"
        )));
    }
    Ok(gap)
}

/// `d(e^{rv}, e^{rw})` evaluated without forming matrices close to the
/// identity: with `D = e^{-rv/2} (e^{rw} - e^{rv}) e^{-rv/2}` built from
/// `expm1`, the distance is `‖ln(1 + D)‖_p`. The absolute error is `O(ε r)`
/// instead of `O(ε)`, which the small-`r` quotients below depend on.
fn exp_pair_distance(
    v: &HermitianMatrix,
    w: &HermitianMatrix,
    r: f64,
    p: SchattenP,
) -> Result<f64> {
    v.check_same_dim(w)?;
    let ev = v.eigh()?;
    let ew = w.eigh()?;
    let em1 = |e: &crate::linalg::EigenDecomposition| {
        e.rebuild(|l| (r * l).exp_m1())
    };
    let diff = &em1(&ew) - &em1(&ev);
    let half = ev.rebuild(|l| (-0.5 * r * l).exp());
    let d = HermitianMatrix::new(half.matmul(&diff).matmul(&half));
    let e = d.eigh()?;
    if e.min() <= -1.0 {
        return Err(Error::NotPositiveDefinite {
            min: 1.0 + e.min(),
            max: 1.0 + e.max(),
        });
    }
    Ok(p.norm_of(e.values.iter().map(|x| x.ln_1p())))
}

/// `(r‖v - w‖_x - d(exp_x(rv), exp_x(rw))) / (r² d(exp_x v, exp_x w))`,
/// non-positive for every `r > 0`.
pub fn curvature_estimate(
    x: &PosDefMatrix,
    v: &TangentAt,
    w: &TangentAt,
    r: f64,
    p: SchattenP,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Range(format!("r must be positive, got {r}")));
    }
    let vw = check_curvature_inputs(x, v, w, p)?;
    // congruence by x^{-1/2} maps exp_x(u) to e^{x^{-1/2} u x^{-1/2}}
    let (vt, wt) = (v.whitened(), w.whitened());
    let dr = exp_pair_distance(&vt, &wt, r, p)?;
    let d1 = exp_pair_distance(&vt, &wt, 1.0, p)?;
    Ok((r * vw - dr) / (r * r * d1))
}

/// Radii used by [`curvature_limit`], coarsest first.
pub const CURVATURE_RADII: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Extrapolated sectional-curvature quotient and its a priori bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureLimit {
    /// Limit of `(r‖v-w‖ - d(exp_x(rv), exp_x(rw))) / (r³ ‖v-w‖)` as `r → 0`.
    pub s: f64,
    /// `-‖R(v,w)‖_p / ‖v - w‖_p`.
    pub lower_bound: f64,
    /// `(1 - ‖v - w + R(v,w)‖_p / ‖v - w‖_p) / 4`, the tighter bound for the
    /// cone's normalization.
    pub sharp_lower_bound: f64,
    /// Convergence order measured from the three samples (`NaN` when the
    /// differences are at round-off level).
    pub observed_order: f64,
    /// `(r, quotient)` for each radius in [`CURVATURE_RADII`].
    pub samples: [(f64, f64); 3],
}

/// Richardson-extrapolated curvature at `x` in the plane of `v` and `w`.
///
/// The normalized quotient behaves like `s + c r² + O(r⁴)` for a smooth norm,
/// so the two finest samples are combined with order 2.
pub fn curvature_limit(
    x: &PosDefMatrix,
    v: &TangentAt,
    w: &TangentAt,
    p: SchattenP,
) -> Result<CurvatureLimit> {
    let vw = check_curvature_inputs(x, v, w, p)?;
    let vt = v.whitened();
    let wt = w.whitened();
    let mut samples = [(0.0, 0.0); 3];
    for (slot, &r) in samples.iter_mut().zip(&CURVATURE_RADII) {
        let dr = exp_pair_distance(&vt, &wt, r, p)?;
        *slot = (r, (r * vw - dr) / (r * r * r * vw));
    }
    let (q1, q2, q3) = (samples[0].1, samples[1].1, samples[2].1);
    let (d12, d23) = (q1 - q2, q2 - q3);
    let noise = 1e-9 * (1.0 + q3.abs());
    let observed_order = if d12.abs() > noise && d23.abs() > noise && d12 * d23 > 0.0 {
        (d12 / d23).log2()
    } else {
        f64::NAN
    };
    let s = q3 + (q3 - q2) / 3.0;

    let r = bch_curvature_term(&vt, &wt)?;
    let diff = &vt - &wt;
    let lower_bound = -schatten_norm(&r, p) / vw;
    let sharp_lower_bound = 0.25 * (1.0 - schatten_norm(&(&diff + &r), p) / vw);
    Ok(CurvatureLimit {
        s,
        lower_bound,
        sharp_lower_bound,
        observed_order,
        samples,
    })
}

/// `|d(e^{rv}, e^{rw}) - ‖r(w - v) - (r³/4) R(v,w)‖_p|`, the remainder of the
/// third-order distance expansion at the identity.
///
/// The expansion is odd in `r`, so the remainder is `O(r⁵)`; requires
/// `r ‖v‖_∞ ≤ ½` and `r ‖w‖_∞ ≤ ½`.
pub fn bch_distance_remainder(
    v: &HermitianMatrix,
    w: &HermitianMatrix,
    r: f64,
    p: SchattenP,
) -> Result<f64> {
    v.check_same_dim(w)?;
    let reach = r.abs() * v.spectral_radius()?.max(w.spectral_radius()?);
    if !(reach <= 0.5) {
        return Err(Error::Range(format!(
            "r·max(‖v‖∞, ‖w‖∞) = {reach:e} exceeds 1/2"
        )));
    }
    let d = exp_pair_distance(v, w, r, p)?;
    let rr = bch_curvature_term(v, w)?;
    let approx = (w - v).scale(r).axpy(-0.25 * r * r * r, &rr);
    Ok((d - schatten_norm(&approx, p)).abs())
}

/// Numerical Birkhoff-orthogonality certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffCertificate {
    /// `min_s ‖v + s‖_p - ‖v‖_p` over the sampled search; never positive.
    pub gap: f64,
    /// The minimizing `s` found.
    pub witness: HermitianMatrix,
}

const BIRKHOFF_STARTS: usize = 5;
const BIRKHOFF_ITERATIONS: usize = 200;
const BIRKHOFF_SHRINK: f64 = 0.5;
const BIRKHOFF_SEED: u64 = 0xB1F7_40FF;

/// `min_{s ∈ span(basis)} ‖v + s‖_p - ‖v‖_p` by multi-start coordinate
/// pattern search over the basis coefficients.
///
/// A value `≥ -tol` certifies `v ⊥ span(basis)` in the sense of Birkhoff;
/// a clearly negative value comes with the witness `s`.
pub fn birkhoff_gap(
    v: &HermitianMatrix,
    basis: &[HermitianMatrix],
    p: SchattenP,
) -> Result<BirkhoffCertificate> {
    let n = v.n();
    let sub = HermitianSubspace::new(n, basis)?;
    let base = schatten_norm(v, p);
    if sub.dim() == 0 || base == 0.0 {
        return Ok(BirkhoffCertificate {
            gap: 0.0,
            witness: HermitianMatrix::zeros(n),
        });
    }
    let q = sub.basis();
    let objective = |c: &[f64]| -> f64 {
        let s = sub.combine(c);
        schatten_norm(&(v + &s), p)
    };

    let mut gen = InstanceGen::new(BIRKHOFF_SEED);
    let mut best_val = base;
    let mut best_c = vec![0.0; q.len()];
    for start in 0..BIRKHOFF_STARTS {
        let mut c: Vec<f64> = if start == 0 {
            vec![0.0; q.len()]
        } else {
            (0..q.len()).map(|_| base * gen.normal()).collect()
        };
        let mut val = objective(&c);
        let mut step = base;
        for _ in 0..BIRKHOFF_ITERATIONS {
            let mut improved = false;
            for i in 0..c.len() {
                for dir in [1.0, -1.0] {
                    let old = c[i];
                    c[i] = old + dir * step;
                    let trial = objective(&c);
                    if trial < val {
                        val = trial;
                        improved = true;
                        break;
                    }
                    c[i] = old;
                }
            }
            if !improved {
                step *= BIRKHOFF_SHRINK;
                if step < 1e-14 * base {
                    break;
                }
            }
        }
        if val < best_val {
            best_val = val;
            best_c = c;
        }
    }
    Ok(BirkhoffCertificate {
        gap: best_val - base,
        witness: sub.combine(&best_c),
    })
}

/// Smallest `K ≥ 1` with `2(‖v‖^p / K^p + ‖w‖^p) ≤ ‖v+w‖^p + ‖v-w‖^p` on
/// `trials` sampled pairs of `n × n` Hermitian matrices.
///
/// Returns `+∞` when some sample violates the inequality for every `K`.
pub fn convexity_constant_estimate(
    p: SchattenP,
    n: usize,
    trials: usize,
    gen: &mut InstanceGen,
) -> Result<f64> {
    let e = match p {
        SchattenP::Real(e) => e,
        _ => {
            return Err(Error::UnsupportedNorm {
                p: p.to_string(),
                op: "uniform convexity constant",
            })
        }
    };
    let mut k: f64 = 1.0;
    for _ in 0..trials {
        let w = gen.hermitian(n);
        let scale = 10f64.powf(gen.uniform(-2.0, 0.0));
        let v = gen.hermitian(n).scale(scale);
        let nv = schatten_norm(&v, p);
        let lhs = 0.5 * (schatten_norm(&(&v + &w), p).powf(e) + schatten_norm(&(&v - &w), p).powf(e))
            - schatten_norm(&w, p).powf(e);
        let ratio = if lhs > 0.0 {
            nv / lhs.powf(1.0 / e)
        } else {
            f64::INFINITY
        };
        k = k.max(ratio);
    }
    Ok(k)
}
