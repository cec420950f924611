//! Randomized verification suites.
//!
//! Every (suite, p, trial) triple draws its instance from its own generator,
//! so the report depends only on the configuration, never on scheduling.

use std::io::Write;

use pcone::cone::{distance, exp_point, Geodesic, TangentAt};
use pcone::convexopt::{
    best_approximation, circumcenter, moreau_yoshida_traced, ConvexSubmanifold, TraceRow,
};
use pcone::linalg::io::fmt_f64;
use pcone::linalg::{CMatrix, HermitianMatrix, PosDefMatrix, SchattenP};
use pcone::metricprops::{
    bch_distance_remainder, birkhoff_gap, curvature_estimate, curvature_limit, emi_gap,
    geodesic_convexity_gap, inputs_digest, loewner_heinz_gap, pparallelogram_gap, GapReport,
};
use pcone::random::InstanceGen;
use pcone::splitting::{
    block_diagonal_basis, conditional_expectation, cpr_factorize, expectation_norm_estimate,
    is_lie_triple, is_reductive, off_block_basis, BlockPartition, ExpectationNorms,
};
use rayon::prelude::*;

use crate::error::CliError;

pub const SUITES: [&str; 13] = [
    "emi",
    "parallelogram",
    "convexity",
    "loewner-heinz",
    "curvature",
    "bch",
    "birkhoff",
    "bestapprox",
    "circumcenter",
    "moreau-yoshida",
    "cpr",
    "expectation-norms",
    "lie-triple",
];

/// Largest dimension the runner accepts.
pub const MAX_N: usize = 64;

/// Step tolerance of the solvers inside the optimization suites. The checks
/// below are at 1e-6 or looser on the point; tighter solves only cost time.
const SOLVER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n: usize,
    pub trials: usize,
    pub p_values: Vec<SchattenP>,
    pub tol: f64,
    pub suites: Vec<String>,
    /// Worker count; 0 means the available parallelism.
    pub threads: usize,
}

impl SuiteConfig {
    pub fn default_p_values() -> Vec<SchattenP> {
        vec![
            SchattenP::One,
            SchattenP::Real(2.0),
            SchattenP::Real(3.0),
            SchattenP::Inf,
        ]
    }

    /// Expands `all` and comma lists; rejects unknown names.
    pub fn parse_suites(list: &str) -> Result<Vec<String>, CliError> {
        let mut out: Vec<String> = Vec::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == "all" {
                for s in SUITES {
                    if !out.iter().any(|o| o == s) {
                        out.push(s.to_string());
                    }
                }
            } else if SUITES.contains(&name) {
                if !out.iter().any(|o| o == name) {
                    out.push(name.to_string());
                }
            } else {
                return Err(CliError::Usage(format!(
                    "unknown suite {name:?} (expected one of: all, {})",
                    SUITES.join(", ")
                )));
            }
        }
        if out.is_empty() {
            return Err(CliError::Usage("no suite selected".into()));
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.n < 2 || self.n > MAX_N {
            return Err(CliError::Usage(format!("--n must be in 2..={MAX_N}, got {}", self.n)));
        }
        if self.p_values.is_empty() {
            return Err(CliError::Usage("no p values".into()));
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(CliError::Usage(format!("unknown suite {s:?}")));
            }
        }
        Ok(())
    }
}

/// Pass/fail counts of a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteReport {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

/// One unit of work.
#[derive(Debug, Clone, Copy)]
struct Task {
    suite: usize,
    p: Option<SchattenP>,
    trial: usize,
}

#[derive(Default)]
struct TaskOutput {
    reports: Vec<GapReport>,
    trace: Vec<(String, TraceRow)>,
}

/// Exponents each suite is defined for; `None` marks p-independent suites.
fn p_list(suite: &str, ps: &[SchattenP]) -> Vec<Option<SchattenP>> {
    let real_at_least = |lo: f64| -> Vec<Option<SchattenP>> {
        ps.iter()
            .filter(|p| matches!(p, SchattenP::Real(e) if *e >= lo))
            .map(|&p| Some(p))
            .collect()
    };
    match suite {
        "emi" | "convexity" | "loewner-heinz" | "expectation-norms" => {
            ps.iter().map(|&p| Some(p)).collect()
        }
        "parallelogram" | "bch" | "bestapprox" | "circumcenter" | "moreau-yoshida" => {
            real_at_least(2.0)
        }
        "curvature" => ps
            .iter()
            .filter(|p| matches!(p, SchattenP::Real(e) if *e > 1.0))
            .map(|&p| Some(p))
            .collect(),
        "cpr" => real_at_least(1.0),
        // orthogonality of the off-diagonal part is only known for p = 2
        "birkhoff" => vec![Some(SchattenP::Real(2.0))],
        _ => vec![None],
    }
}

fn p_code(p: Option<SchattenP>) -> u64 {
    match p {
        None => 0,
        Some(SchattenP::One) => 1_000,
        Some(SchattenP::Inf) => 999_999,
        Some(SchattenP::Real(e)) => (e * 1000.0).round() as u64,
    }
}

fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for name in &cfg.suites {
        let suite = SUITES.iter().position(|s| s == name).expect("validated");
        for p in p_list(name, &cfg.p_values) {
            for trial in 0..cfg.trials {
                out.push(Task { suite, p, trial });
            }
        }
    }
    out
}

/// Runs the configured suites, writing one record per check to `out`, solver
/// traces to `trace` when given, and a final summary record.
pub fn run_suite(
    cfg: &SuiteConfig,
    format: Format,
    out: &mut dyn Write,
    mut trace: Option<&mut dyn Write>,
) -> Result<SuiteReport, CliError> {
    cfg.validate()?;
    let io = |e: std::io::Error| CliError::Io {
        path: "<output>".into(),
        msg: e.to_string(),
    };
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if cfg.threads > 0 {
            b = b.num_threads(cfg.threads);
        }
        b.build().map_err(|e| CliError::Usage(e.to_string()))?
    };
    let all = tasks(cfg);
    let chunk = 8 * pool.current_num_threads().max(1);

    if format == Format::Csv {
        writeln!(out, "name,gap,inputs_digest,tolerance_used,pass").map_err(io)?;
    }
    if let Some(t) = trace.as_deref_mut() {
        writeln!(t, "name,trial,iteration,objective,step").map_err(io)?;
    }
    let mut report = SuiteReport::default();
    for batch in all.chunks(chunk) {
        let results: Vec<TaskOutput> =
            pool.install(|| batch.par_iter().map(|t| run_task(cfg, *t)).collect());
        for (task, res) in batch.iter().zip(results) {
            for r in &res.reports {
                report.checks += 1;
                if r.pass() {
                    report.passed += 1;
                } else {
                    report.failed += 1;
                }
                let line = match format {
                    Format::Json => r.to_json_line(),
                    Format::Csv => r.to_csv_line(),
                };
                writeln!(out, "{line}").map_err(io)?;
            }
            if let Some(t) = trace.as_deref_mut() {
                for (name, row) in &res.trace {
                    writeln!(
                        t,
                        "{name},{},{},{},{}",
                        task.trial,
                        row.iteration,
                        fmt_f64(row.objective),
                        fmt_f64(row.step)
                    )
                    .map_err(io)?;
                }
            }
        }
        out.flush().map_err(io)?;
    }
    writeln!(out, "{}", summary_line(cfg, format, &report)).map_err(io)?;
    out.flush().map_err(io)?;
    Ok(report)
}

fn summary_line(cfg: &SuiteConfig, format: Format, r: &SuiteReport) -> String {
    match format {
        Format::Json => {
            let suites: Vec<String> = cfg
                .suites
                .iter()
                .map(|s| serde_json::Value::String(s.clone()).to_string())
                .collect();
            let ps: Vec<String> = cfg.p_values.iter().map(|p| format!("\"{p}\"")).collect();
            format!(
                "{{\"summary\": true, \"suites\": [{}], \"p_values\": [{}], \"n\": {}, \"trials\": {}, \
                 \"seed\": {}, \"tol\": {}, \"checks\": {}, \"passed\": {}, \"failed\": {}, \"pass\": {}}}",
                suites.join(", "),
                ps.join(", "),
                cfg.n,
                cfg.trials,
                cfg.seed,
                fmt_f64(cfg.tol),
                r.checks,
                r.passed,
                r.failed,
                r.pass()
            )
        }
        Format::Csv => format!(
            "# summary checks={} passed={} failed={} pass={}",
            r.checks,
            r.passed,
            r.failed,
            r.pass()
        ),
    }
}

/// Collects the checks of one trial.
struct Checks<'a> {
    prefix: String,
    digest: String,
    base_tol: f64,
    out: &'a mut TaskOutput,
}

impl Checks<'_> {
    fn add(&mut self, check: &str, gap: f64, tol: f64) {
        self.out.reports.push(GapReport::new(
            format!("{}/{check}", self.prefix),
            gap,
            self.digest.clone(),
            tol.max(self.base_tol),
        ));
    }

    fn trace(&mut self, check: &str, rows: &[TraceRow]) {
        let name = format!("{}/{check}", self.prefix);
        self.out
            .trace
            .extend(rows.iter().map(|r| (name.clone(), *r)));
    }
}

fn run_task(cfg: &SuiteConfig, task: Task) -> TaskOutput {
    let name = SUITES[task.suite];
    let stream = (task.suite as u64 + 1) * 10_000_000 + p_code(task.p);
    let mut gen = InstanceGen::for_trial(cfg.seed, stream, task.trial as u64);
    let prefix = match task.p {
        Some(p) => format!("{name}[p={p}]"),
        None => name.to_string(),
    };
    let mut out = TaskOutput::default();
    let mut checks = Checks {
        prefix,
        digest: String::new(),
        base_tol: cfg.tol,
        out: &mut out,
    };
    let p = task.p.unwrap_or(SchattenP::Real(2.0));
    let res = match name {
        "emi" => emi(&mut checks, &mut gen, cfg.n, p),
        "parallelogram" => parallelogram(&mut checks, &mut gen, cfg.n, p),
        "convexity" => convexity(&mut checks, &mut gen, cfg.n, p),
        "loewner-heinz" => loewner_heinz(&mut checks, &mut gen, cfg.n, p),
        "curvature" => curvature(&mut checks, &mut gen, cfg.n, p),
        "bch" => bch(&mut checks, &mut gen, cfg.n, p),
        "birkhoff" => birkhoff(&mut checks, &mut gen, cfg.n, p),
        "bestapprox" => bestapprox(&mut checks, &mut gen, cfg.n, p),
        "circumcenter" => circumcenter_suite(&mut checks, &mut gen, cfg.n, p),
        "moreau-yoshida" => moreau(&mut checks, &mut gen, cfg.n, p),
        "cpr" => cpr(&mut checks, &mut gen, cfg.n, p),
        "expectation-norms" => expectation(&mut checks, &mut gen, cfg.n, p),
        "lie-triple" => lie_triple(&mut checks, &mut gen, cfg.n),
        _ => unreachable!("validated suite name"),
    };
    if let Err(e) = res {
        // a numerical failure inside a trial is a failed check, not an abort
        checks.add(&format!("error: {e}"), f64::NAN, 0.0);
    }
    out
}

type Outcome = pcone::Result<()>;

fn digest(matrices: &[&CMatrix], p: SchattenP, extra: &[f64]) -> String {
    let mut scalars = vec![p.exponent()];
    scalars.extend_from_slice(extra);
    inputs_digest(matrices, &scalars)
}

fn tangent(gen: &mut InstanceGen, x: &PosDefMatrix, scale: f64) -> pcone::Result<TangentAt> {
    let h = gen.hermitian(x.n()).scale(scale);
    TangentAt::new(x.clone(), x.unwhiten(&h))
}

/// Random partition of `0..n`: shuffled indices cut at random places.
fn random_partition(gen: &mut InstanceGen, n: usize) -> pcone::Result<BlockPartition> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = gen.index(i + 1);
        idx.swap(i, j);
    }
    let mut blocks = vec![vec![idx[0]]];
    for &i in &idx[1..] {
        if gen.uniform(0.0, 1.0) < 0.5 {
            blocks.push(vec![i]);
        } else {
            blocks.last_mut().expect("non-empty").push(i);
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    BlockPartition::new(n, blocks)
}

fn emi(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let x = gen.pd(n);
    let s = gen.uniform(0.1, 2.0);
    let v = tangent(gen, &x, s)?;
    let w = tangent(gen, &x, s)?;
    c.digest = digest(&[x.as_matrix(), v.vector().as_matrix(), w.vector().as_matrix()], p, &[]);
    c.add("gap", emi_gap(&x, &v, &w, p)?, 0.0);
    Ok(())
}

fn parallelogram(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (x, y, z) = (gen.pd(n), gen.pd(n), gen.pd(n));
    c.digest = digest(&[x.as_matrix(), y.as_matrix(), z.as_matrix()], p, &[]);
    c.add("gap", pparallelogram_gap(&x, &y, &z, p, 1.0)?, 0.0);
    Ok(())
}

fn convexity(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (a0, a1, b0, b1) = (gen.pd(n), gen.pd(n), gen.pd(n), gen.pd(n));
    c.digest = digest(
        &[a0.as_matrix(), a1.as_matrix(), b0.as_matrix(), b1.as_matrix()],
        p,
        &[],
    );
    let alpha = Geodesic::new(&a0, &a1)?;
    let beta = Geodesic::new(&b0, &b1)?;
    c.add("gap", geodesic_convexity_gap(&alpha, &beta, p)?, 0.0);
    Ok(())
}

fn loewner_heinz(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (a, b) = (gen.pd(n), gen.pd(n));
    let t = gen.uniform(0.0, 1.0);
    c.digest = digest(&[a.as_matrix(), b.as_matrix()], p, &[t]);
    c.add("gap", loewner_heinz_gap(&a, &b, t, p)?, 0.0);
    Ok(())
}

fn curvature(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let x = gen.pd(n);
    let v = tangent(gen, &x, 1.0)?;
    let w = tangent(gen, &x, 1.0)?;
    c.digest = digest(&[x.as_matrix(), v.vector().as_matrix(), w.vector().as_matrix()], p, &[]);
    let mut worst = f64::NEG_INFINITY;
    for r in [1.0, 0.5, 0.1, 0.01] {
        worst = worst.max(curvature_estimate(&x, &v, &w, r, p)?);
    }
    c.add("estimate", -worst, 0.0);
    let lim = curvature_limit(&x, &v, &w, p)?;
    c.add("limit-upper", -lim.s, 1e-6);
    c.add("limit-lower", lim.s - lim.lower_bound, 1e-4);
    Ok(())
}

fn bch(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (v, w) = (gen.hermitian(n), gen.hermitian(n));
    c.digest = digest(&[v.as_matrix(), w.as_matrix()], p, &[]);
    let r1 = bch_distance_remainder(&v, &w, 1e-2, p)?;
    let r2 = bch_distance_remainder(&v, &w, 5e-3, p)?;
    // an O(r⁵) remainder shrinks 32-fold per halving; demand 80% of order 3
    c.add("halving-ratio", r1 / r2 - 0.8 * 8.0, 0.0);
    Ok(())
}

fn birkhoff(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let part = BlockPartition::diagonal(n);
    let basis = block_diagonal_basis(&part);
    let h = gen.hermitian(n);
    c.digest = digest(&[h.as_matrix()], p, &[]);
    let e = HermitianMatrix::new(conditional_expectation(h.as_matrix(), &part)?);
    let off = &h - &e;
    c.add("off-diagonal-orthogonal", birkhoff_gap(&off, &basis, p)?.gap, 0.0);
    // for the full matrix the minimizer removes the diagonal
    let cert = birkhoff_gap(&h, &basis, p)?;
    c.add("witness", -(&cert.witness + &e).max_abs(), 1e-6);
    Ok(())
}

fn bestapprox(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let cset = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(n));
    let (x, y) = (gen.pd(n), gen.pd(n));
    c.digest = digest(&[x.as_matrix(), y.as_matrix()], p, &[]);
    let r = best_approximation(&x, &cset, p, SOLVER_TOL)?;
    c.trace("solve", &r.trace);
    c.add("first-order", r.first_order_gap, 1e-6);
    c.add("membership", -cset.membership_defect(&r.point), 1e-8);
    let mut probe = f64::INFINITY;
    for _ in 0..8 {
        let z: Vec<f64> = r.z.iter().map(|zi| zi + gen.uniform(-0.1, 0.1)).collect();
        probe = probe.min(distance(&x, &cset.point(&z)?, p)? - r.value);
    }
    c.add("probes", probe, 1e-9 * (1.0 + r.value));
    if p == SchattenP::Real(2.0) {
        let ry = best_approximation(&y, &cset, p, SOLVER_TOL)?;
        let shrink = distance(&x, &y, p)? - distance(&r.point, &ry.point, p)?;
        c.add("nonexpansive", shrink, 1e-6);
    }
    Ok(())
}

fn circumcenter_suite(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (a, b) = (gen.pd(n), gen.pd(n));
    let k = 3 + gen.index(2);
    let pts: Vec<PosDefMatrix> = (0..k).map(|_| gen.pd(n)).collect();
    let mut mats: Vec<&CMatrix> = vec![a.as_matrix(), b.as_matrix()];
    mats.extend(pts.iter().map(|x| x.as_matrix()));
    c.digest = digest(&mats, p, &[]);

    let two = circumcenter(&[a.clone(), b.clone()], p, SOLVER_TOL)?;
    c.trace("two-point", &two.trace);
    let mid = Geodesic::new(&a, &b)?.midpoint()?;
    c.add("two-point-midpoint", -distance(&two.center, &mid, p)?, 1e-6);

    let r = circumcenter(&pts, p, SOLVER_TOL)?;
    c.trace("set", &r.trace);
    let far = |z: &PosDefMatrix| -> pcone::Result<f64> {
        let mut m: f64 = 0.0;
        for s in &pts {
            m = m.max(distance(z, s, p)?);
        }
        Ok(m)
    };
    let mut diam: f64 = 0.0;
    for i in 0..pts.len() {
        for j in 0..i {
            diam = diam.max(distance(&pts[i], &pts[j], p)?);
        }
    }
    c.add("radius-vs-diameter", r.radius - 0.5 * diam, 1e-6);
    c.add("covers-set", r.radius - far(&r.center)?, 1e-9);
    let mut probe = f64::INFINITY;
    for _ in 0..8 {
        let h = tangent(gen, &r.center, 1e-3)?;
        probe = probe.min(far(&exp_point(&r.center, &h)?)? - r.radius);
    }
    c.add("probes", probe, 1e-6);
    Ok(())
}

fn moreau(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let (x0, target) = (gen.pd(n), gen.pd(n));
    let lambda = gen.uniform(0.25, 4.0);
    c.digest = digest(&[x0.as_matrix(), target.as_matrix()], p, &[lambda]);
    let e = p.exponent();
    let f = |y: &PosDefMatrix| distance(y, &target, p).map_or(f64::NAN, |d| d.powf(e));
    let (y, value, trace) = moreau_yoshida_traced(f, &x0, lambda, p, SOLVER_TOL)?;
    c.trace("solve", &trace);
    // the minimizer lies on [x0, target] at the closed-form fraction
    let d = distance(&x0, &target, p)?;
    let sigma = lambda.powf(1.0 / (e - 1.0));
    let s = sigma / (1.0 + sigma);
    let exact = Geodesic::new(&x0, &target)?.eval(s)?;
    let best = lambda * ((1.0 - s) * d).powf(e) + (s * d).powf(e);
    // the objective grows like δ^p off the geodesic, so a value accurate to
    // ε pins the point only to about ε^{1/p}
    let value_tol = 1e-9 * (1.0 + best);
    c.add("value", -(value - best).abs(), value_tol);
    c.add("minimizer", -distance(&y, &exact, p)?, (1e-3 * value_tol).powf(1.0 / e));
    Ok(())
}

fn cpr(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let part = random_partition(gen, n)?;
    let g = gen.invertible(n, 50.0);
    c.digest = digest(&[&g], p, &[]);
    let f = cpr_factorize(&g, &part, p)?;
    c.add("residual", -f.residual, 1e-8);
    let ev = conditional_expectation(f.v.as_matrix(), &part)?.max_abs();
    c.add("v-off-block", -ev, 1e-8);
    c.add("u-unitary", -f.u.unitarity_defect(), 1e-10);
    Ok(())
}

fn expectation(c: &mut Checks, gen: &mut InstanceGen, n: usize, p: SchattenP) -> Outcome {
    let part = random_partition(gen, n)?;
    c.digest = digest(&[], p, &[n as f64, part.blocks().len() as f64]);
    let r = expectation_norm_estimate(&part, p, 50, gen)?;
    c.add("norm-e-at-most-one", 1.0 - r.norm_e, 1e-9);
    c.add("norm-e-attained", r.norm_e - 1.0, 1e-3);
    let bound = ExpectationNorms::one_minus_e_bound(p);
    c.add("norm-one-minus-e-bound", bound - r.norm_one_minus_e, 1e-6);
    Ok(())
}

fn lie_triple(c: &mut Checks, gen: &mut InstanceGen, n: usize) -> Outcome {
    let part = random_partition(gen, n)?;
    let u = gen.unitary(n);
    c.digest = digest(&[&u], SchattenP::Real(2.0), &[part.blocks().len() as f64]);
    let s = block_diagonal_basis(&part);
    let sprime = off_block_basis(&part);
    let (_, d1) = is_lie_triple(&s)?;
    c.add("block-diagonal", -d1, 1e-10);
    let (_, d2) = is_reductive(&s, &sprime)?;
    c.add("reductive-pair", -d2, 1e-10);
    // rotating the complement of the diagonal destroys invariance
    let diag = BlockPartition::diagonal(n);
    let rotated: Vec<HermitianMatrix> = off_block_basis(&diag)
        .iter()
        .map(|b| b.congruence(&u))
        .collect();
    let (_, d3) = is_reductive(&block_diagonal_basis(&diag), &rotated)?;
    c.add("rotated-not-reductive", d3 - 1e-3, 0.0);
    Ok(())
}
