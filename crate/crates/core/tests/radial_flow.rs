use std::f64::consts::PI;

use holomotion::circle::unit_grid;
use holomotion::flow::*;
use holomotion::radial::*;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn moving_traces() -> MotionTraces {
    MotionTraces::new(vec![vec![c(0.0, 2.0), c(0.2, 0.0)]]).unwrap()
}

fn moving_motion() -> ExtendedMotion {
    ExtendedMotion::build(moving_traces(), 64, 16, FlowConfig::default()).unwrap()
}

#[test]
fn arc_map_is_a_bijection() {
    let rs = RadialStructure::build(moving_traces(), 64, 16).unwrap();
    let radii = rs.radii();
    for k in (0..64).step_by(7) {
        let s = rs.slice(k);
        for i in 0..50 {
            let th = 2.0 * PI * i as f64 / 50.0;
            for j in 1..=20 {
                let rho = radii.outer * j as f64 / 20.0;
                let z = s.point(th, rho);
                let back = s.point(s.label(z), rho);
                assert!((back - z).norm() < 1e-8);
                assert!((z.norm() - rho).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn tangent_is_unit_and_angle_continuous() {
    let rs = RadialStructure::build(moving_traces(), 64, 16).unwrap();
    let radii = rs.radii();
    let mut count = 0;
    for k in 0..10 {
        for i in 0..100 {
            for j in 0..10 {
                let rho = radii.r + (radii.outer - radii.r) * (j as f64 + 0.5) / 10.0;
                let z = Complex64::from_polar(rho, 2.0 * PI * i as f64 / 100.0);
                let tau = rs.tangent_field(k * 6, z).unwrap();
                assert!((tau.norm() - 1.0).abs() < 1e-14);
                count += 1;
            }
        }
    }
    assert_eq!(count, 10_000);
    // across each ray-grid seam alpha varies continuously
    for k in [0usize, 20] {
        for th in rs.ray_labels() {
            for rho in [1.2, 2.0, 2.7] {
                let a = rs.angle_field(k, Complex64::from_polar(rho, th - 1e-9)).unwrap();
                let b = rs.angle_field(k, Complex64::from_polar(rho, th + 1e-9)).unwrap();
                assert!((a - b).abs() < 1e-6);
            }
        }
    }
    // at |z| = R the angle is inside (-pi/2, pi/2)
    for k in 0..64 {
        for i in 0..64 {
            let z = Complex64::from_polar(radii.outer, 2.0 * PI * i as f64 / 64.0);
            assert!(rs.angle_field(k, z).unwrap().abs() < PI / 2.0);
        }
    }
}

#[test]
fn time_to_point_monotone_along_rays() {
    let rs = RadialStructure::build(moving_traces(), 64, 8).unwrap();
    let flow = Flow::new(&rs, FlowConfig::default());
    let radii = rs.radii();
    for th in [0.0, PI / 2.0, 2.5] {
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let rho = radii.outer - (radii.outer - radii.r) * (i as f64 + 0.5) / 101.0;
            let z = rs.slice(0).point(th, rho);
            let sol = flow.integrate_to_point(z).unwrap();
            assert!(sol.t < prev, "t not decreasing at rho = {rho}");
            assert!((sol.theta - th).abs() < 1e-9 || (sol.theta - th).abs() > 6.0);
            assert!(sol.max_drift < 1e-6);
            prev = sol.t;
        }
    }
}

#[test]
fn trajectories_respect_flow_region_and_limit() {
    let em = moving_motion();
    let radii = em.structure().radii();
    for ray in em.rays() {
        let first = ray.points.first().unwrap();
        assert_eq!(first.t, 0.0);
        for p in &ray.points[1..] {
            // any state reaching the outer circle must be constant
            if p.at_one.norm() >= radii.outer - 1e-8 {
                assert!(p.spread < 1e-6);
            }
            assert!(p.at_one.norm() > radii.r);
        }
        let last = ray.points.last().unwrap();
        let limit = Complex64::from_polar(radii.r, ray.theta);
        assert!((last.at_zero - limit).norm() < 1e-3, "{} vs {}", last.at_zero, limit);
        assert!(last.spread < 1e-3);
    }
}

#[test]
fn basepoint_map_round_trip() {
    let em = moving_motion();
    let flow = em.flow();
    for z in [c(1.5, 0.3), c(-0.8, -1.7), c(0.2, 2.6), c(-2.9, 0.4)] {
        let sol = flow.integrate_to_point(z).unwrap();
        let image = sol.g.eval(c(0.0, 0.0));
        let pre = em.preimage(image).unwrap().unwrap();
        assert!((pre.point() - z).norm() < 1e-6, "{} vs {z}", pre.point());
    }
}

#[test]
fn extended_motion_normalization_and_agreement() {
    let em = moving_motion();
    for z in [c(1.5, 0.3), c(-0.8, -1.7), c(0.1, 0.05), c(4.0, 0.0)] {
        assert!((em.eval(c(0.0, 0.0), z).unwrap() - z).norm() < 1e-8);
    }
    assert!(em.agreement_residual(32).unwrap() < 1e-4);
    // marked slice equals the polynomial trace, so its holomorphy residual vanishes
    assert!(em.holomorphy_residual(c(0.0, 2.0), 64).unwrap() < 1e-6);
    // Psi_1 is anchored at z
    let z = c(-1.1, 0.9);
    assert!((em.psi(c(1.0, 0.0), z).unwrap() - z).norm() < 1e-9);
}

#[test]
fn trivial_motion_is_identity() {
    let em = ExtendedMotion::build(MotionTraces::constant(&[]).unwrap(), 64, 8, FlowConfig::default()).unwrap();
    for z in [c(0.5, 0.5), c(-1.2, 0.3), c(0.1, 0.0), c(3.0, 1.0)] {
        for l in [c(0.0, 0.0), c(0.5, -0.3), c(-0.9, 0.1)] {
            assert!((em.eval(l, z).unwrap() - z).norm() < 1e-8);
            assert!((em.psi(l, z).unwrap() - z).norm() < 1e-8);
        }
        assert!(em.holomorphy_residual(z, 64).unwrap() < 1e-12);
    }
    let pairs = [(c(0.5, 0.5), c(1.0, -0.2)), (c(-1.5, 0.0), c(0.4, 0.0))];
    let rep = em.injectivity_certificate(&pairs).unwrap();
    assert!(rep.passed());
    let expected = pairs.iter().map(|(a, b)| (a - b).norm()).fold(f64::INFINITY, f64::min);
    assert!((rep.min_abs - expected).abs() < 1e-8);
    assert!(matches!(em.injectivity_certificate(&[(c(1.0, 1.0), c(1.0, 1.0))]), Err(FlowError::DuplicatePair(0))));
}

#[test]
fn same_ray_pairs_are_separated() {
    let em = moving_motion();
    let s = em.structure().slice(0);
    let pts: Vec<Complex64> = [0.6, 1.0, 1.7, 2.4, 3.0].iter().map(|&rho| s.point(1.0, rho)).collect();
    let pairs: Vec<_> = pts.iter().enumerate().flat_map(|(i, a)| pts[i + 1..].iter().map(move |b| (*a, *b))).collect();
    let rep = em.injectivity_certificate(&pairs).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.max_abs_winding, 0);
}

#[test]
fn flow_step_drift_and_order() {
    let rs = RadialStructure::build(moving_traces(), 64, 8).unwrap();
    let flow = Flow::new(&rs, FlowConfig::default());
    let mut st = flow.initial_state(PI / 2.0).unwrap();
    for _ in 0..50 {
        let (next, info) = flow.flow_step(&st, -1e-2).unwrap();
        assert!(info.drift < 1e-6);
        st = next;
    }
    // every sample sits on its own arc
    for (k, g) in st.g.inner().samples().iter().enumerate() {
        let on = rs.slice(k).point(PI / 2.0, g.norm());
        assert!((on - g).norm() < 1e-6, "{}", (on - g).norm());
    }
    assert!(unit_grid(64).len() == st.g.inner().len());
}
