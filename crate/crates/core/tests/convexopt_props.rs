mod common;

use common::*;
use pcone::cone::{congruence, distance, Geodesic};
use pcone::convexopt::*;
use pcone::linalg::{HermitianMatrix, PosDefMatrix, SchattenP};
use pcone::random::InstanceGen;
use pcone::splitting::BlockPartition;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn best_approximation_beats_probes(seed in any::<u64>(), n in 2usize..4, e in 1.5f64..4.0) {
        let p = SchattenP::Real(e);
        let mut g = InstanceGen::new(seed);
        let c = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(n));
        let x = g.pd(n);
        let r = best_approximation(&x, &c, p, 1e-10).unwrap();
        prop_assert!(r.first_order_gap >= -1e-6);
        for _ in 0..100 {
            let z: Vec<f64> = r.z.iter().map(|zi| zi + 0.3 * g.normal()).collect();
            prop_assert!(r.value <= distance(&x, &c.point(&z).unwrap(), p).unwrap() + 1e-10);
        }
    }

    #[test]
    fn block_projection_is_contractive(seed in any::<u64>()) {
        let p = SchattenP::Real(2.0);
        let mut g = InstanceGen::new(seed);
        let c = ConvexSubmanifold::block_diagonal("0,1|2".parse().unwrap());
        let (x, y) = (g.pd(3), g.pd(3));
        let px = best_approximation(&x, &c, p, 1e-10).unwrap().point;
        let py = best_approximation(&y, &c, p, 1e-10).unwrap().point;
        prop_assert!(distance(&px, &py, p).unwrap() <= distance(&x, &y, p).unwrap() + 1e-6);
    }

    #[test]
    fn circumcenter_ignores_order(seed in any::<u64>(), n in 2usize..4) {
        let p = SchattenP::Real(2.0);
        let mut g = InstanceGen::new(seed);
        let pts: Vec<PosDefMatrix> = (0..4).map(|_| g.pd(n)).collect();
        let r1 = circumcenter(&pts, p, 1e-10).unwrap();
        let rev: Vec<PosDefMatrix> = pts.iter().rev().cloned().collect();
        let r2 = circumcenter(&rev, p, 1e-10).unwrap();
        prop_assert!(distance(&r1.center, &r2.center, p).unwrap() < 1e-6);
        let mut diam: f64 = 0.0;
        for a in &pts {
            for b in &pts {
                diam = diam.max(distance(a, b, p).unwrap());
            }
            prop_assert!(distance(a, &r1.center, p).unwrap() <= r1.radius + 1e-12);
        }
        prop_assert!(r1.radius >= 0.5 * diam - 1e-9);
    }
}

#[test]
fn symmetric_instance_projects_to_identity() {
    let sx = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let x = sx.exp().unwrap();
    let c = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(2));
    let r = best_approximation(&x, &c, SchattenP::Real(2.0), 1e-10).unwrap();
    assert!(distance(&r.point, &PosDefMatrix::identity(2), SchattenP::Real(2.0)).unwrap() < 1e-8);
    assert!((r.value - 2f64.sqrt()).abs() < 1e-10);
}

#[test]
fn best_approximation_matches_simplex_oracle() {
    let p = SchattenP::Real(2.0);
    let c = ConvexSubmanifold::block_diagonal(BlockPartition::diagonal(3));
    let mut g = InstanceGen::new(12);
    for _ in 0..5 {
        // diagonal plus a small off-diagonal perturbation
        let d = HermitianMatrix::from_diag(&[g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0)]);
        let v = d.axpy(0.2, &g.hermitian(3));
        let x = v.exp().unwrap();
        let r = best_approximation(&x, &c, p, 1e-10).unwrap();
        let (_, oracle) = nelder_mead_restarted(|z| distance(&x, &exp_diag(z), p).unwrap(), &[0.0; 3], 0.5);
        assert!(r.value > 0.0);
        assert!((r.value - oracle).abs() < 1e-4);
    }
}

#[test]
fn tangent_basis_has_full_rank() {
    let part: BlockPartition = "0,1|2".parse().unwrap();
    let c = ConvexSubmanifold::block_diagonal(part);
    let mut g = InstanceGen::new(4);
    let z: Vec<f64> = (0..c.dim()).map(|_| g.normal()).collect();
    let at = c.point(&z).unwrap();
    let tb = tangent_basis(&c, &at).unwrap();
    assert_eq!(pcone::linalg::gram_rank(&tb), c.dim());
}

#[test]
fn moreau_yoshida_moves_toward_target_as_lambda_grows() {
    let p = SchattenP::Real(2.0);
    let mut g = InstanceGen::new(21);
    let x0 = g.pd(2);
    let c = g.pd(2);
    let f = |y: &PosDefMatrix| distance(y, &c, p).unwrap().powi(2);
    let mut last = f64::INFINITY;
    let mut last_value = 0.0;
    for lambda in [1.0, 10.0, 100.0] {
        let (y, value) = moreau_yoshida_resolvent(f, &x0, lambda, p, 1e-10).unwrap();
        let d = distance(&y, &c, p).unwrap();
        assert!(d < last);
        assert!(value >= last_value - 1e-12);
        last = d;
        last_value = value;
        // one-dimensional reduction: y lies on the geodesic at λ/(1+λ)
        let want = Geodesic::new(&x0, &c).unwrap().eval(lambda / (1.0 + lambda)).unwrap();
        assert!(distance(&y, &want, p).unwrap() < 1e-6);
    }
}

#[test]
fn circumcenter_is_equivariant() {
    let p = SchattenP::Real(3.0);
    let mut g = InstanceGen::new(31);
    let pts: Vec<PosDefMatrix> = (0..5).map(|_| g.pd(2)).collect();
    let h = g.invertible(2, 10.0);
    let r = circumcenter(&pts, p, 1e-10).unwrap();
    let moved: Vec<PosDefMatrix> = pts.iter().map(|s| congruence(&h, s).unwrap()).collect();
    let r2 = circumcenter(&moved, p, 1e-10).unwrap();
    let want = congruence(&h, &r.center).unwrap();
    assert!(distance(&want, &r2.center, p).unwrap() < 1e-6);
    assert!((r.radius - r2.radius).abs() < 1e-9);
}
