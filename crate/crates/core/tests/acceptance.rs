//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::time::Instant;

use common::*;
use pcone::cone::{congruence, distance, Geodesic};
use pcone::convexopt::{best_approximation, best_approximation_from, circumcenter, ConvexSubmanifold};
use pcone::linalg::{HermitianMatrix, PosDefMatrix, SchattenP};
use pcone::metricprops::*;
use pcone::random::InstanceGen;
use pcone::splitting::*;

const SEED: u64 = 20_240_611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn sp(e: f64) -> SchattenP {
    SchattenP::from_exponent(e).unwrap()
}

fn gen(stream: u64, trial: usize) -> InstanceGen {
    InstanceGen::for_trial(SEED, stream, trial as u64)
}

fn emi() -> Outcome {
    let mut worst = f64::INFINITY;
    for (k, e) in [1.0, 1.5, 2.0, 3.0, f64::INFINITY].into_iter().enumerate() {
        let p = sp(e);
        for t in 0..1000 {
            let mut g = gen(100 + k as u64, t);
            let n = dim_for(t);
            let x = g.pd(n);
            let s = g.uniform(0.1, 2.0);
            let v = tangent(&mut g, &x, s);
            let w = tangent(&mut g, &x, s);
            worst = worst.min(emi_gap(&x, &v, &w, p).unwrap());
        }
    }
    let mut eq: f64 = 0.0;
    for t in 0..100 {
        let mut g = gen(110, t);
        let n = dim_for(t);
        let x = g.pd(n);
        let (a, b) = g.commuting_pair(n);
        let v = tangent_from_whitened(&x, &a);
        let w = tangent_from_whitened(&x, &b);
        let p = sp([1.0, 2.0, 3.0, f64::INFINITY][t % 4]);
        eq = eq.max(emi_gap(&x, &v, &w, p).unwrap().abs());
    }
    Outcome {
        pass: worst >= -1e-9 && eq <= 1e-8,
        detail: format!("min gap {worst:.3e} (>= -1e-9), commuting max |gap| {eq:.3e} (<= 1e-8)"),
    }
}

fn parallelogram() -> Outcome {
    let mut worst = f64::INFINITY;
    for (k, e) in [2.0, 3.0, 4.0].into_iter().enumerate() {
        for t in 0..1000 {
            let mut g = gen(200 + k as u64, t);
            let n = dim_for(t);
            let (x, y, z) = (g.pd(n), g.pd(n), g.pd(n));
            worst = worst.min(pparallelogram_gap(&x, &y, &z, sp(e), 1.0).unwrap());
        }
    }
    Outcome {
        pass: worst >= -1e-9,
        detail: format!("min gap {worst:.3e} (>= -1e-9)"),
    }
}

fn convexity() -> Outcome {
    let mut worst = f64::INFINITY;
    for (k, e) in [1.0, 2.0, f64::INFINITY].into_iter().enumerate() {
        for t in 0..1000 {
            let mut g = gen(300 + k as u64, t);
            let n = dim_for(t);
            let a = Geodesic::new(&g.pd(n), &g.pd(n)).unwrap();
            let b = Geodesic::new(&g.pd(n), &g.pd(n)).unwrap();
            worst = worst.min(geodesic_convexity_gap(&a, &b, sp(e)).unwrap());
        }
    }
    Outcome {
        pass: worst >= -1e-9,
        detail: format!("min gap {worst:.3e} (>= -1e-9)"),
    }
}

fn loewner_heinz() -> Outcome {
    let mut worst = f64::INFINITY;
    for (k, e) in [1.0, 2.0, 3.0, f64::INFINITY].into_iter().enumerate() {
        for t in 0..1000 {
            let mut g = gen(400 + k as u64, t);
            let n = dim_for(t);
            let (a, b) = (g.pd(n), g.pd(n));
            for s in [0.25, 0.5, 0.75] {
                worst = worst.min(loewner_heinz_gap(&a, &b, s, sp(e)).unwrap());
            }
        }
    }
    Outcome {
        pass: worst >= -1e-9,
        detail: format!("min gap {worst:.3e} (>= -1e-9)"),
    }
}

fn curvature() -> Outcome {
    let mut max_est = f64::NEG_INFINITY;
    let mut worst_low = f64::INFINITY; // s - (lower - 1e-4)
    let mut max_s = f64::NEG_INFINITY;
    let mut comm: f64 = 0.0;
    for (k, e) in [1.5, 2.0, 3.0].into_iter().enumerate() {
        let p = sp(e);
        for t in 0..100 {
            let mut g = gen(500 + k as u64, t);
            let n = [2, 3, 4][t % 3];
            let x = g.pd(n);
            let v = tangent(&mut g, &x, 1.0);
            let w = tangent(&mut g, &x, 1.0);
            for r in [1.0, 0.5, 0.1, 0.01] {
                max_est = max_est.max(curvature_estimate(&x, &v, &w, r, p).unwrap());
            }
            let lim = curvature_limit(&x, &v, &w, p).unwrap();
            worst_low = worst_low.min(lim.s - (lim.lower_bound - 1e-4));
            max_s = max_s.max(lim.s);

            let (a, b) = g.commuting_pair(n);
            let lim = curvature_limit(
                &x,
                &tangent_from_whitened(&x, &a),
                &tangent_from_whitened(&x, &b),
                p,
            )
            .unwrap();
            comm = comm.max(lim.s.abs());
        }
    }
    Outcome {
        pass: max_est <= 1e-9 && worst_low >= 0.0 && max_s <= 1e-6 && comm <= 1e-6,
        detail: format!(
            "max estimate {max_est:.3e} (<= 1e-9), min s - (lower - 1e-4) {worst_low:.3e} (>= 0), \
             max s {max_s:.3e} (<= 1e-6), commuting max |s| {comm:.3e} (<= 1e-6)"
        ),
    }
}

fn bch() -> Outcome {
    let mut min_ratio = f64::INFINITY;
    for (k, e) in [2.0, 3.0].into_iter().enumerate() {
        for t in 0..100 {
            let mut g = gen(600 + k as u64, t);
            let n = [2, 3, 4][t % 3];
            let v = g.hermitian(n);
            let w = g.hermitian(n);
            let r1 = bch_distance_remainder(&v, &w, 1e-2, sp(e)).unwrap();
            let r2 = bch_distance_remainder(&v, &w, 5e-3, sp(e)).unwrap();
            min_ratio = min_ratio.min(r1 / r2);
        }
    }
    Outcome {
        pass: min_ratio >= 8.0 * 0.8,
        detail: format!("min halving ratio {min_ratio:.2} (>= 6.4)"),
    }
}

fn best_approx() -> Outcome {
    let p = SchattenP::Real(2.0);
    let mut oracle_err: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut min_gap = f64::INFINITY;
    for t in 0..50 {
        let mut g = gen(700, t);
        let n = [2, 3][t % 2];
        let c = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(n));
        let x = g.pd(n);
        let r = best_approximation(&x, &c, p, 1e-10).unwrap();
        min_gap = min_gap.min(r.first_order_gap);
        let phi = |z: &[f64]| distance(&x, &exp_diag(z), p).unwrap();
        let z0 = vec![0.0; n];
        let (_, oracle) = nelder_mead_restarted(phi, &z0, 0.5);
        oracle_err = oracle_err.max((r.value - oracle).abs());
        for _ in 0..5 {
            let z: Vec<f64> = (0..n).map(|_| g.uniform(-2.0, 2.0)).collect();
            let r2 = best_approximation_from(&x, &c, p, 1e-10, &exp_diag(&z)).unwrap();
            spread = spread.max(distance(&r.point, &r2.point, p).unwrap());
        }
    }
    let mut contr = f64::NEG_INFINITY;
    for t in 0..200 {
        let mut g = gen(701, t);
        let n = [2, 3][t % 2];
        let c = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(n));
        let (x, y) = (g.pd(n), g.pd(n));
        let px = best_approximation(&x, &c, p, 1e-10).unwrap().point;
        let py = best_approximation(&y, &c, p, 1e-10).unwrap().point;
        contr = contr.max(distance(&px, &py, p).unwrap() - distance(&x, &y, p).unwrap());
    }
    Outcome {
        pass: oracle_err <= 1e-4 && spread <= 1e-5 && min_gap >= -1e-6 && contr <= 1e-6,
        detail: format!(
            "oracle err {oracle_err:.3e} (<= 1e-4), restart spread {spread:.3e} (<= 1e-5), \
             min first-order gap {min_gap:.3e} (>= -1e-6), max d(πx,πy) - d(x,y) {contr:.3e} (<= 1e-6)"
        ),
    }
}

fn circumcenters() -> Outcome {
    let mut mid_err: f64 = 0.0;
    let mut inv_err: f64 = 0.0;
    let mut ball = f64::INFINITY;
    for (k, e) in [2.0, 3.0].into_iter().enumerate() {
        let p = sp(e);
        for t in 0..10 {
            let mut g = gen(800 + k as u64, t);
            let n = [2, 3, 4][t % 3];
            let (a, b) = (g.pd(n), g.pd(n));
            let r = circumcenter(&[a.clone(), b.clone()], p, 1e-10).unwrap();
            let m = Geodesic::new(&a, &b).unwrap().midpoint().unwrap();
            mid_err = mid_err.max(distance(&r.center, &m, p).unwrap());
            mid_err = mid_err.max((r.radius - 0.5 * distance(&a, &b, p).unwrap()).abs());
        }
        for t in 0..10 {
            let mut g = gen(810 + k as u64, t);
            let n = [2, 3][t % 2];
            // orbit of a finite cyclic group: the generator permutes the set
            let m = 3 + t % 3;
            let u = finite_order_unitary(&mut g, n, m);
            let mut pts = Vec::new();
            for _ in 0..2 {
                let mut cur = g.pd(n);
                for _ in 0..m {
                    let next = congruence(&u, &cur).unwrap();
                    pts.push(cur);
                    cur = next;
                }
            }
            let r = circumcenter(&pts, p, 1e-10).unwrap();
            let moved = congruence(&u, &r.center).unwrap();
            inv_err = inv_err.max(distance(&moved, &r.center, p).unwrap());

            // equivariance under a random congruence
            let h = g.invertible(n, 20.0);
            let image: Vec<PosDefMatrix> = pts
                .iter()
                .map(|s| congruence(&h, s).unwrap())
                .collect();
            let r2 = circumcenter(&image, p, 1e-10).unwrap();
            let hc = congruence(&h, &r.center).unwrap();
            inv_err = inv_err.max(distance(&hc, &r2.center, p).unwrap());

            let mut diam: f64 = 0.0;
            for i in 0..pts.len() {
                for j in 0..i {
                    diam = diam.max(distance(&pts[i], &pts[j], p).unwrap());
                }
            }
            ball = ball.min(r.radius - 0.5 * diam);
        }
    }
    Outcome {
        pass: mid_err <= 1e-6 && inv_err <= 1e-6 && ball >= -1e-6,
        detail: format!(
            "two-point err {mid_err:.3e} (<= 1e-6), invariance err {inv_err:.3e} (<= 1e-6), \
             min radius - diam/2 {ball:.3e} (>= -1e-6)"
        ),
    }
}

fn cpr() -> Outcome {
    let mut res: f64 = 0.0;
    let mut ev: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut init: f64 = 0.0;
    let mut cross: f64 = 0.0;
    let partitions = ["0|1", "0|1|2", "0,1|2", "0|1|2|3", "0,1|2,3", "0,2|1|3"];
    for (k, e) in [2.0, 3.0].into_iter().enumerate() {
        let p = sp(e);
        for t in 0..500 {
            let mut g = gen(900 + k as u64, t);
            let part: BlockPartition = partitions[t % partitions.len()].parse().unwrap();
            let n = part.n();
            let gm = g.invertible(n, 50.0);
            let f = cpr_factorize(&gm, &part, p).unwrap();
            res = res.max(f.residual);
            ev = ev.max(conditional_expectation(f.v.as_matrix(), &part).unwrap().max_abs());
            unit = unit.max(f.u.unitarity_defect());
            if t % 5 == 0 {
                let basis = block_diagonal_basis(&part);
                let s0 = basis
                    .iter()
                    .fold(HermitianMatrix::zeros(n), |acc, b| acc.axpy(g.uniform(-2.0, 2.0), b));
                let f2 = cpr_factorize_from(&gm, &part, p, Some(&s0)).unwrap();
                init = init
                    .max(f2.g_a.max_abs_diff(&f.g_a))
                    .max(f2.v.as_matrix().max_abs_diff(f.v.as_matrix()))
                    .max(f2.u.max_abs_diff(&f.u));
            }
            if e == 2.0 && t % 5 == 0 {
                // ‖v‖₂ is half the distance from gg* to the block-diagonal cone
                let pp = PosDefMatrix::from_matrix(gm.matmul(&gm.adjoint())).unwrap();
                let c = ConvexSubmanifold::block_diagonal(part.clone());
                let ba = best_approximation(&pp, &c, p, 1e-10).unwrap();
                cross = cross.max((f.v.frobenius() - 0.5 * ba.value).abs());
            }
        }
    }
    Outcome {
        pass: res <= 1e-8 && ev <= 1e-8 && unit <= 1e-10 && init <= 1e-6 && cross <= 1e-4,
        detail: format!(
            "residual {res:.3e} (<= 1e-8), |E(v)| {ev:.3e} (<= 1e-8), |u*u - I| {unit:.3e} (<= 1e-10), \
             init spread {init:.3e} (<= 1e-6), | ‖v‖₂ - d/2 | {cross:.3e} (<= 1e-4)"
        ),
    }
}

fn expectation_norms() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for (k, e) in [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY].into_iter().enumerate() {
        let p = sp(e);
        let bound = ExpectationNorms::one_minus_e_bound(p);
        let mut lo_e = f64::INFINITY;
        let mut hi_e = f64::NEG_INFINITY;
        let mut hi_1e = f64::NEG_INFINITY;
        let mut lo_1e = f64::INFINITY;
        for (j, part) in ["0|1", "0|1|2", "0,1|2,3", "0|1|2|3", "0,1|2|3,4,5"].iter().enumerate() {
            let part: BlockPartition = part.parse().unwrap();
            let mut g = gen(1000 + k as u64, j);
            let r = expectation_norm_estimate(&part, p, 200, &mut g).unwrap();
            lo_e = lo_e.min(r.norm_e);
            hi_e = hi_e.max(r.norm_e);
            hi_1e = hi_1e.max(r.norm_one_minus_e);
            lo_1e = lo_1e.min(r.norm_one_minus_e);
        }
        let mut pass = lo_e >= 1.0 - 1e-3 && hi_e <= 1.0 + 1e-9 && hi_1e <= bound + 1e-6;
        if e == 2.0 {
            pass &= lo_1e >= 1.0 - 1e-3 && hi_1e <= 1.0 + 1e-9;
        }
        ok &= pass;
        lines.push(format!("p={p}: ‖E‖∈[{lo_e:.6},{hi_e:.6}] ‖1-E‖≤{hi_1e:.6} (bound {bound:.6})"));
    }
    Outcome {
        pass: ok,
        detail: lines.join("; "),
    }
}

fn convexity_constant() -> Outcome {
    let mut worst: f64 = 0.0;
    for (k, e) in [2.0, 3.0, 4.0].into_iter().enumerate() {
        let mut g = gen(1100 + k as u64, 0);
        worst = worst.max(convexity_constant_estimate(sp(e), 4, 10_000, &mut g).unwrap());
    }
    Outcome {
        pass: worst <= 1.0 + 1e-6,
        detail: format!("max K {worst:.9} (<= 1 + 1e-6)"),
    }
}

fn structure() -> Outcome {
    let mut good: f64 = 0.0;
    let mut bad = f64::INFINITY;
    for n in DIMS {
        let part = BlockPartition::diagonal(n);
        let s = block_diagonal_basis(&part);
        let sprime = off_block_basis(&part);
        let (p1, d1) = is_lie_triple(&s).unwrap();
        let (p2, d2) = is_reductive(&s, &sprime).unwrap();
        good = good.max(d1).max(d2);
        if !(p1 && p2) {
            good = f64::INFINITY;
        }
        // rotate the complement away from the diagonal's ad-invariant one
        let mut g = gen(1200, n);
        let u = g.unitary(n);
        let rotated: Vec<HermitianMatrix> = sprime.iter().map(|b| b.congruence(&u)).collect();
        let (p3, d3) = is_reductive(&s, &rotated).unwrap();
        bad = bad.min(if p3 { 0.0 } else { d3 });
    }
    Outcome {
        pass: good <= 1e-10 && bad > 1e-3,
        detail: format!("diagonal pair defect {good:.3e} (<= 1e-10), rotated defect {bad:.3e} (> 1e-3)"),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 exponential metric increasing", emi),
        ("2 semi-parallelogram law", parallelogram),
        ("3 convexity of geodesic distance", convexity),
        ("4 Loewner-Heinz / Araki", loewner_heinz),
        ("5 curvature", curvature),
        ("6 BCH remainder order", bch),
        ("7 best approximation", best_approx),
        ("8 circumcenter", circumcenters),
        ("9 block factorization", cpr),
        ("10 expectation norms", expectation_norms),
        ("11 uniform convexity constant", convexity_constant),
        ("12 structure checkers", structure),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|q| name.contains(q.as_str())) {
            continue;
        }
        let t0 = Instant::now();
        let out = f();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {name}: {} ({:.1}s)",
            out.detail,
            t0.elapsed().as_secs_f64()
        );
        if !out.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
