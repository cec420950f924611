//! Geodesically convex optimization on the cone: nearest points on
//! exponential submanifolds, Moreau–Yoshida resolvents, circumcenters.

use crate::cone::{distance, Geodesic};
use crate::error::{Error, Result};
use crate::linalg::{
    jacobi_eigh, CMatrix, EigenDecomposition, HermitianMatrix, HermitianSubspace,
    PosDefMatrix, SchattenP,
};
use crate::metricprops::birkhoff_gap;
use crate::splitting::{block_diagonal_basis, hermitian_basis, is_lie_triple, BlockPartition};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Distance tolerance for `x ∈ C` when computing tangent spaces.
pub const MEMBERSHIP_TOL: f64 = 1e-8;

/// Defect allowed when checking that a subspace is a Lie triple system.
pub const LIE_TRIPLE_TOL: f64 = 1e-10;

/// One solver trace row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub objective: f64,
    pub step: f64,
}

/// Whether `v` is below `current` by more than round-off.
fn improves(v: f64, current: f64) -> bool {
    v < current - 4.0 * f64::EPSILON * current.abs().max(1e-300)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite)
    }
}

/// Brent's minimization of `phi` on `[lo, hi]` down to width `tol`:
/// parabolic steps where the fit is trustworthy, golden sections otherwise.
/// The endpoints are compared with the interior minimum.
fn brent(
    mut phi: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const CGOLD: f64 = 1.0 - INV_PHI;
    let (mut a, mut b) = (lo, hi);
    let mut x = a + CGOLD * (b - a);
    let mut fx = finite(phi(x)?)?;
    let (mut w, mut fw, mut v, mut fv) = (x, fx, x, fx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    let tol1 = 0.25 * tol;
    let tol2 = 2.0 * tol1;
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden_step = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = finite(phi(u)?)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    let (mut t, mut val) = (x, fx);
    for end in [lo, hi] {
        let fe = finite(phi(end)?)?;
        if fe < val {
            (t, val) = (end, fe);
        }
    }
    Ok((t, val))
}

/// Minimizes a convex `phi` over the whole line: brackets by doubling from
/// `h0`, then Brent. `f0 = phi(0)` is passed in to save a call.
fn line_minimize(
    mut phi: impl FnMut(f64) -> Result<f64>,
    f0: f64,
    h0: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let mut h = h0;
    let fp = finite(phi(h)?)?;
    let (dir, mut f1) = if fp < f0 {
        (1.0, fp)
    } else {
        let fm = finite(phi(-h)?)?;
        if fm < f0 {
            (-1.0, fm)
        } else {
            // minimum inside [-h, h]
            return brent(&mut phi, -h, h, tol).map(|(t, v)| if v < f0 { (t, v) } else { (0.0, f0) });
        }
    };
    let mut prev = 0.0;
    let mut cur = h;
    for _ in 0..60 {
        let next = cur + 2.0 * h;
        let fnext = finite(phi(dir * next)?)?;
        if fnext >= f1 {
            let (lo, hi) = (prev, next);
            let (t, v) = brent(|t| phi(dir * t), lo, hi, tol)?;
            return Ok((dir * t, v));
        }
        h *= 2.0;
        prev = cur;
        cur = next;
        f1 = fnext;
    }
    Err(Error::NoConvergence {
        what: "line bracketing",
        iterations: 60,
        residual: f1,
    })
}

/// Brent minimization of `f` along the geodesic from `a` to `b`,
/// `t ∈ [0, 1]` to width `tol`. Returns `(t*, f(γ(t*)))`.
pub fn minimize_along_geodesic(
    mut f: impl FnMut(&PosDefMatrix) -> f64,
    a: &PosDefMatrix,
    b: &PosDefMatrix,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::Range(format!("tol must be positive, got {tol}")));
    }
    let geo = Geodesic::new(a, b)?;
    brent(|t| Ok(f(&geo.eval(t)?)), 0.0, 1.0, tol)
}

/// Geodesic `t ↦ a^{1/2} e^{t s} a^{1/2}` with the spectral data of `s`
/// computed once.
struct Ray {
    frame: CMatrix,
    eig: EigenDecomposition,
}

impl Ray {
    fn new(a: &PosDefMatrix, s: &HermitianMatrix) -> Result<Self> {
        let eig = s.eigh()?;
        let frame = a.sqrt_matrix().matmul(&eig.vectors);
        Ok(Self { frame, eig })
    }

    fn eval(&self, t: f64) -> Result<PosDefMatrix> {
        let d: Vec<f64> = self.eig.values.iter().map(|l| (t * l).exp()).collect();
        PosDefMatrix::new(HermitianMatrix::new(self.frame.sandwich_diag(&d)))
    }

    /// `d(x, ray(t))` without forming the point: the whitened matrix is
    /// `F diag(e^{tλ}) F^*` with `F = x^{-1/2} a^{1/2} V`.
    fn distance_from(&self, x_inv_sqrt: &CMatrix, t: f64, p: SchattenP) -> Result<f64> {
        let f = x_inv_sqrt.matmul(&self.frame);
        let d: Vec<f64> = self.eig.values.iter().map(|l| (t * l).exp()).collect();
        let e = jacobi_eigh(&f.sandwich_diag(&d))?;
        if e.min() <= 0.0 {
            return Err(Error::NotPositiveDefinite {
                min: e.min(),
                max: e.max(),
            });
        }
        Ok(p.norm_of(e.values.iter().map(|l| l.ln())))
    }
}

/// Which exponential submanifold `exp(𝔰)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SubmanifoldKind {
    BlockDiagonal(BlockPartition),
    LinearSubspace(Vec<HermitianMatrix>),
}

/// `C = exp(𝔰)` for a Lie triple system `𝔰` of Hermitian matrices: a
/// geodesically convex, totally geodesic submanifold of the cone.
#[derive(Debug, Clone)]
pub struct ConvexSubmanifold {
    kind: SubmanifoldKind,
    sub: HermitianSubspace,
}

impl ConvexSubmanifold {
    pub fn block_diagonal(part: BlockPartition) -> Self {
        let sub = HermitianSubspace::from_orthonormal(part.n(), block_diagonal_basis(&part));
        Self {
            kind: SubmanifoldKind::BlockDiagonal(part),
            sub,
        }
    }

    /// `exp(span(basis))`; the span must be closed under double brackets.
    pub fn linear_subspace(n: usize, basis: Vec<HermitianMatrix>) -> Result<Self> {
        let sub = HermitianSubspace::new(n, &basis)?;
        let (_, defect) = is_lie_triple(sub.basis())?;
        if defect > LIE_TRIPLE_TOL {
            return Err(Error::NotLieTriple { defect });
        }
        Ok(Self {
            kind: SubmanifoldKind::LinearSubspace(basis),
            sub,
        })
    }

    pub fn kind(&self) -> &SubmanifoldKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.sub.n()
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    /// Orthonormal basis of `𝔰`.
    pub fn basis(&self) -> &[HermitianMatrix] {
        self.sub.basis()
    }

    /// `exp(Σ c_i s_i)`.
    pub fn point(&self, coords: &[f64]) -> Result<PosDefMatrix> {
        self.sub.combine(coords).exp()
    }

    /// `‖ln x - P_𝔰 ln x‖_2`, zero exactly on `C`.
    pub fn membership_defect(&self, x: &PosDefMatrix) -> f64 {
        self.sub.residual(&x.ln())
    }

    /// Nearest point of `C` in the Hilbert–Schmidt sense on logarithms.
    fn log_projection(&self, x: &PosDefMatrix) -> Result<PosDefMatrix> {
        self.sub.project(&x.ln()).exp()
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

/// `{a^{1/2} s_i a^{1/2}}`, a basis of `T_a C`.
pub fn tangent_basis(c: &ConvexSubmanifold, at: &PosDefMatrix) -> Result<Vec<HermitianMatrix>> {
    c.check_dim(at.n())?;
    let defect = c.membership_defect(at);
    if defect > MEMBERSHIP_TOL {
        return Err(Error::NotInSubmanifold { distance: defect });
    }
    Ok(c.basis().iter().map(|s| at.unwhiten(s)).collect())
}

/// Output of [`best_approximation`].
#[derive(Debug, Clone)]
pub struct MinimizerResult {
    pub point: PosDefMatrix,
    /// Coordinates of `ln(point)` in the orthonormal basis of `𝔰`.
    pub z: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Birkhoff gap of `ln(point^{-1/2} x point^{-1/2})` against `𝔰`.
    pub first_order_gap: f64,
    pub trace: Vec<TraceRow>,
}

/// Sweep cap for [`best_approximation`].
pub const BEST_APPROX_MAX_SWEEPS: usize = 500;

fn require_real(p: SchattenP, op: &'static str) -> Result<f64> {
    match p {
        SchattenP::Real(e) => Ok(e),
        _ => Err(Error::UnsupportedNorm {
            p: p.to_string(),
            op,
        }),
    }
}

/// Unique nearest point of `C` to `x` in `d_p`, started from `exp(P_𝔰 ln x)`.
pub fn best_approximation(
    x: &PosDefMatrix,
    c: &ConvexSubmanifold,
    p: SchattenP,
    tol: f64,
) -> Result<MinimizerResult> {
    c.check_dim(x.n())?;
    let start = c.log_projection(x)?;
    best_approximation_from(x, c, p, tol, &start)
}

/// As [`best_approximation`] from a given starting point of `C`.
///
/// Cyclic coordinate descent over geodesics `t ↦ a^{1/2} e^{t s_i} a^{1/2}`
/// through the current point `a`, plus a pattern move along the net
/// displacement of each sweep. Stops when a whole sweep moves every
/// coordinate by less than `tol`.
pub fn best_approximation_from(
    x: &PosDefMatrix,
    c: &ConvexSubmanifold,
    p: SchattenP,
    tol: f64,
    start: &PosDefMatrix,
) -> Result<MinimizerResult> {
    require_real(p, "best approximation (needs a strictly convex norm)")?;
    if !(tol > 0.0) {
        return Err(Error::Range(format!("tol must be positive, got {tol}")));
    }
    c.check_dim(x.n())?;
    c.check_dim(start.n())?;
    let defect = c.membership_defect(start);
    if defect > MEMBERSHIP_TOL {
        return Err(Error::NotInSubmanifold { distance: defect });
    }
    let x_inv_sqrt = x.inv_sqrt_matrix().clone();
    let line_tol = 0.1 * tol;

    let mut a = start.clone();
    let mut value = distance(x, &a, p)?;
    let mut trace = vec![TraceRow {
        iteration: 0,
        objective: value,
        step: 0.0,
    }];
    let mut steps = vec![value.max(1e-3); c.dim()];
    let mut converged = c.dim() == 0 || value == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == BEST_APPROX_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                what: "best approximation",
                iterations: sweeps,
                residual: trace.last().map_or(f64::NAN, |r| r.step),
            });
        }
        sweeps += 1;
        let sweep_start = a.clone();
        let mut max_step: f64 = 0.0;
        for (i, s) in c.basis().iter().enumerate() {
            let ray = Ray::new(&a, s)?;
            let (t, v) =
                line_minimize(|t| ray.distance_from(&x_inv_sqrt, t, p), value, steps[i], line_tol)?;
            if t != 0.0 && improves(v, value) {
                a = ray.eval(t)?;
                value = v;
                max_step = max_step.max(t.abs());
            }
            steps[i] = (2.0 * t.abs()).max(10.0 * tol);
        }
        // extrapolate along the sweep's net displacement
        if max_step > tol {
            let dir = crate::cone::whitened_log(&sweep_start, &a)?;
            let ray = Ray::new(&sweep_start, &dir)?;
            let (t, v) = line_minimize(|t| ray.distance_from(&x_inv_sqrt, t, p), distance(x, &sweep_start, p)?, 1.0, line_tol)?;
            if improves(v, value) {
                a = ray.eval(t)?;
            }
        }
        // keep the iterate on C despite round-off
        a = c.log_projection(&a)?;
        value = distance(x, &a, p)?;
        trace.push(TraceRow {
            iteration: sweeps,
            objective: value,
            step: max_step,
        });
        converged = max_step < tol;
    }

    let z = c.sub.coordinates(&a.ln());
    let w = crate::cone::whitened_log(&a, x)?;
    let first_order_gap = birkhoff_gap(&w, c.basis(), p)?.gap;
    Ok(MinimizerResult {
        point: a,
        z,
        value,
        iterations: sweeps,
        first_order_gap,
        trace,
    })
}

/// Sweep cap for [`moreau_yoshida_resolvent`] and the circumcenter polish.
pub const SOLVER_MAX_ITERATIONS: usize = 500;

/// Minimizer `y_λ` of `y ↦ λF(y) + d(x₀, y)^p` and its value.
///
/// Coordinate descent over geodesics through the current point in every
/// direction of an orthonormal Hermitian basis, plus the geodesic back
/// toward `x₀` and a pattern move per sweep; stops when a sweep moves by
/// less than `tol`. `F` must be geodesically convex and bounded below.
pub fn moreau_yoshida_resolvent(
    f: impl Fn(&PosDefMatrix) -> f64,
    x0: &PosDefMatrix,
    lambda: f64,
    p: SchattenP,
    tol: f64,
) -> Result<(PosDefMatrix, f64)> {
    moreau_yoshida_traced(f, x0, lambda, p, tol).map(|(y, v, _)| (y, v))
}

/// [`moreau_yoshida_resolvent`] with its per-sweep trace.
pub fn moreau_yoshida_traced(
    f: impl Fn(&PosDefMatrix) -> f64,
    x0: &PosDefMatrix,
    lambda: f64,
    p: SchattenP,
    tol: f64,
) -> Result<(PosDefMatrix, f64, Vec<TraceRow>)> {
    let e = require_real(p, "Moreau-Yoshida resolvent (needs real p >= 2)")?;
    if e < 2.0 {
        return Err(Error::UnsupportedNorm {
            p: p.to_string(),
            op: "Moreau-Yoshida resolvent (needs real p >= 2)",
        });
    }
    if !(lambda > 0.0) || !(tol > 0.0) {
        return Err(Error::Range(format!(
            "lambda and tol must be positive, got {lambda} and {tol}"
        )));
    }
    let n = x0.n();
    let objective = |y: &PosDefMatrix| -> Result<f64> {
        finite(lambda * f(y) + distance(x0, y, p)?.powf(e))
    };
    let basis = hermitian_basis(n);
    let line_tol = 0.1 * tol;

    let mut y = x0.clone();
    let mut value = objective(&y)?;
    let mut trace = vec![TraceRow {
        iteration: 0,
        objective: value,
        step: 0.0,
    }];
    let mut steps = vec![1.0; basis.len()];
    let mut sweeps = 0;
    loop {
        if sweeps == SOLVER_MAX_ITERATIONS {
            return Err(Error::NoConvergence {
                what: "Moreau-Yoshida resolvent",
                iterations: sweeps,
                residual: trace.last().map_or(f64::NAN, |r| r.step),
            });
        }
        sweeps += 1;
        let sweep_start = y.clone();
        let mut max_step: f64 = 0.0;
        for (i, s) in basis.iter().enumerate() {
            let ray = Ray::new(&y, s)?;
            let (t, v) = line_minimize(|t| objective(&ray.eval(t)?), value, steps[i], line_tol)?;
            if t != 0.0 && improves(v, value) {
                y = ray.eval(t)?;
                value = v;
                max_step = max_step.max(t.abs());
            }
            steps[i] = (2.0 * t.abs()).max(10.0 * tol);
        }
        // toward x0, then along the sweep's displacement
        for anchor in [x0, &sweep_start] {
            let dir = crate::cone::whitened_log(&y, anchor)?;
            if dir.frobenius() <= tol {
                continue;
            }
            let ray = Ray::new(&y, &dir)?;
            let (t, v) = line_minimize(|t| objective(&ray.eval(t)?), value, 0.5, line_tol)?;
            if improves(v, value) {
                y = ray.eval(t)?;
                value = v;
            }
        }
        trace.push(TraceRow {
            iteration: sweeps,
            objective: value,
            step: max_step,
        });
        if max_step < tol {
            break;
        }
    }
    Ok((y, value, trace))
}

/// Output of [`circumcenter`].
#[derive(Debug, Clone)]
pub struct Circumcenter {
    pub center: PosDefMatrix,
    pub radius: f64,
    pub iterations: usize,
    pub trace: Vec<TraceRow>,
}

fn max_distance(x: &PosDefMatrix, s: &[PosDefMatrix], p: SchattenP) -> Result<(usize, f64)> {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, si) in s.iter().enumerate() {
        let d = distance(x, si, p)?;
        if d > best.1 {
            best = (i, d);
        }
    }
    Ok(best)
}

/// Stall window of the diminishing-step phase.
pub const CIRCUMCENTER_PATIENCE: usize = 20;

/// Center and radius of the smallest closed ball containing `s`.
///
/// Phase one moves toward the farthest point with steps `1/(k+2)` until the
/// best radius fails to drop by `tol` for [`CIRCUMCENTER_PATIENCE`]
/// iterations. Phase two refines by prox-linear steps on
/// `max_i d(·, s_i)²` in exponential coordinates at the current center.
pub fn circumcenter(s: &[PosDefMatrix], p: SchattenP, tol: f64) -> Result<Circumcenter> {
    let e = require_real(p, "circumcenter (needs real p >= 2)")?;
    if e < 2.0 {
        return Err(Error::UnsupportedNorm {
            p: p.to_string(),
            op: "circumcenter (needs real p >= 2)",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Range(format!("tol must be positive, got {tol}")));
    }
    let first = s.first().ok_or(Error::EmptySet)?;
    for si in s {
        first.check_same_dim(si)?;
    }

    let mut x = first.clone();
    let (mut far, mut radius) = max_distance(&x, s, p)?;
    let mut best = (x.clone(), radius);
    let mut trace = vec![TraceRow {
        iteration: 0,
        objective: radius,
        step: 0.0,
    }];
    let mut stall = 0;
    let mut k = 0;
    while radius > 0.0 && stall < CIRCUMCENTER_PATIENCE && k < 100 * SOLVER_MAX_ITERATIONS {
        let step = 1.0 / (k as f64 + 2.0);
        x = Geodesic::new(&x, &s[far])?.eval(step)?;
        (far, radius) = max_distance(&x, s, p)?;
        k += 1;
        if radius < best.1 - tol {
            stall = 0;
        } else {
            stall += 1;
        }
        if radius < best.1 {
            best = (x.clone(), radius);
        }
        trace.push(TraceRow {
            iteration: k,
            objective: radius,
            step,
        });
    }

    let (mut x, mut radius) = best;
    if radius > 0.0 && s.len() > 1 {
        let polished = polish(&x, s, p, tol, k, &mut trace)?;
        x = polished.0;
        radius = polished.1;
        k = polished.2;
    }
    Ok(Circumcenter {
        center: x,
        radius,
        iterations: k,
        trace,
    })
}

/// Squared distances from `ray`-style chart point `x^{1/2} e^h x^{1/2}`.
fn chart_sq_distances(
    sqrt_x: &CMatrix,
    h: &HermitianMatrix,
    s_inv_sqrt: &[CMatrix],
    p: SchattenP,
) -> Result<Vec<f64>> {
    let eig = h.eigh()?;
    let frame = sqrt_x.matmul(&eig.vectors);
    let d: Vec<f64> = eig.values.iter().map(|l| l.exp()).collect();
    s_inv_sqrt
        .iter()
        .map(|w| {
            let e = jacobi_eigh(&w.matmul(&frame).sandwich_diag(&d))?;
            let r = p.norm_of(e.values.iter().map(|l| l.max(f64::MIN_POSITIVE).ln()));
            finite(r * r)
        })
        .collect()
}

/// Maximizes `Σ λ_i f_i - |Σ λ_i g_i|² / (2ρ)` over the simplex by
/// projected gradient; returns the weights.
fn simplex_dual(f: &[f64], g: &[Vec<f64>], rho: f64) -> Vec<f64> {
    let m = f.len();
    let dim = g[0].len();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| g[i].iter().zip(&g[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let lip = gram.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max) / rho;
    let eta = if lip > 0.0 { 1.0 / lip } else { 1.0 };
    let mut lam = vec![1.0 / m as f64; m];
    for _ in 0..2000 {
        let grad: Vec<f64> = (0..m)
            .map(|i| f[i] - (0..m).map(|j| gram[i][j] * lam[j]).sum::<f64>() / rho)
            .collect();
        let y: Vec<f64> = lam.iter().zip(&grad).map(|(l, gr)| l + eta * gr).collect();
        let next = project_simplex(&y);
        let change: f64 = next.iter().zip(&lam).map(|(a, b)| (a - b).abs()).sum();
        lam = next;
        if change < 1e-15 {
            break;
        }
    }
    let _ = dim;
    lam
}

fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        css += uk;
        let t = (css - 1.0) / (k as f64 + 1.0);
        if uk - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

fn polish(
    x0: &PosDefMatrix,
    s: &[PosDefMatrix],
    p: SchattenP,
    tol: f64,
    k0: usize,
    trace: &mut Vec<TraceRow>,
) -> Result<(PosDefMatrix, f64, usize)> {
    let n = x0.n();
    let basis = hermitian_basis(n);
    let s_inv_sqrt: Vec<CMatrix> = s.iter().map(|si| si.inv_sqrt_matrix().clone()).collect();
    let mut x = x0.clone();
    let (_, mut radius) = max_distance(&x, s, p)?;
    let mut rho = 1.0;
    let mut k = k0;
    let mut stall = 0;
    for _ in 0..SOLVER_MAX_ITERATIONS {
        let before = radius;
        let sqrt_x = x.sqrt_matrix().clone();
        let zero = HermitianMatrix::zeros(n);
        let f = chart_sq_distances(&sqrt_x, &zero, &s_inv_sqrt, p)?;
        let fd = 1e-6;
        let mut grads = vec![vec![0.0; basis.len()]; s.len()];
        for (c, b) in basis.iter().enumerate() {
            let fp = chart_sq_distances(&sqrt_x, &b.scale(fd), &s_inv_sqrt, p)?;
            let fm = chart_sq_distances(&sqrt_x, &b.scale(-fd), &s_inv_sqrt, p)?;
            for i in 0..s.len() {
                grads[i][c] = (fp[i] - fm[i]) / (2.0 * fd);
            }
        }
        let current = radius * radius;
        let mut accepted = false;
        let mut step_norm = 0.0;
        for _ in 0..60 {
            let lam = simplex_dual(&f, &grads, rho);
            let coords: Vec<f64> = (0..basis.len())
                .map(|c| -(0..s.len()).map(|i| lam[i] * grads[i][c]).sum::<f64>() / rho)
                .collect();
            let h = basis
                .iter()
                .zip(&coords)
                .fold(HermitianMatrix::zeros(n), |acc, (b, &c)| acc.axpy(c, b));
            step_norm = h.frobenius();
            if step_norm < 1e-15 {
                break;
            }
            let trial = chart_sq_distances(&sqrt_x, &h, &s_inv_sqrt, p)?;
            let tmax = trial.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if improves(tmax, current) {
                let eig = h.eigh()?;
                let frame = sqrt_x.matmul(&eig.vectors);
                let d: Vec<f64> = eig.values.iter().map(|l| l.exp()).collect();
                x = PosDefMatrix::new(HermitianMatrix::new(frame.sandwich_diag(&d)))?;
                radius = max_distance(&x, s, p)?.1;
                rho = (rho * 0.5).max(1e-8);
                accepted = true;
                break;
            }
            rho *= 2.0;
        }
        k += 1;
        trace.push(TraceRow {
            iteration: k,
            objective: radius,
            step: step_norm,
        });
        if !accepted || step_norm < 0.01 * tol {
            break;
        }
        // decreases at round-off level: the minimax value has converged
        stall = if before - radius < 1e-12 * before { stall + 1 } else { 0 };
        if stall == 5 {
            break;
        }
    }
    Ok((x, radius, k))
}
