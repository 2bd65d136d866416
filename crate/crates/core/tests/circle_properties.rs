use std::f64::consts::PI;

use holomotion::circle::*;
use num_complex::Complex64;
use proptest::prelude::*;

/// Random real trigonometric polynomial with modes below N/4.
fn real_poly(n: usize) -> impl Strategy<Value = BoundaryFunction> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..(n / 4)).prop_map(move |cs| {
        let vals: Vec<f64> = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                cs.iter().enumerate().map(|(m, (a, b))| a * (m as f64 * t).cos() + b * (m as f64 * t).sin()).sum()
            })
            .collect();
        BoundaryFunction::from_real(&vals).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_twice_is_minus_identity_minus_mean(f in real_poly(128)) {
        let tt = hilbert_transform(&hilbert_transform(&f).unwrap()).unwrap();
        let mean = f.mean();
        for (a, b) in tt.samples().iter().zip(f.samples()) {
            prop_assert!((a + (b - mean)).norm() < 1e-10);
        }
    }

    #[test]
    fn f_plus_i_tf_is_analytic(f in real_poly(128)) {
        let g = f.add(&hilbert_transform(&f).unwrap().scale(Complex64::new(0.0, 1.0))).unwrap();
        prop_assert!(analyticity_residual(&g) < 1e-10);
    }

    #[test]
    fn operations_are_linear(f in real_poly(64), g in real_poly(64), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let combo = f.scale(Complex64::new(a, 0.0)).add(&g.scale(Complex64::new(b, 0.0))).unwrap();
        let lhs = hilbert_transform(&combo).unwrap();
        let rhs = hilbert_transform(&f).unwrap().scale(Complex64::new(a, 0.0))
            .add(&hilbert_transform(&g).unwrap().scale(Complex64::new(b, 0.0))).unwrap();
        for (x, y) in lhs.samples().iter().zip(rhs.samples()) {
            prop_assert!((x - y).norm() < 1e-11);
        }
        let lam = Complex64::new(0.3, -0.5);
        let p = poisson_eval(&combo, lam).unwrap();
        let q = poisson_eval(&f, lam).unwrap() * a + poisson_eval(&g, lam).unwrap() * b;
        prop_assert!((p - q).norm() < 1e-11);
    }

    #[test]
    fn poisson_tends_to_boundary(f in real_poly(64), k in 0usize..64) {
        let xi = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0);
        // Lipschitz constant of f: sum over modes of m |c_m|
        let lip: f64 = (0..32).map(|m| m as f64 * f.coefficient(m).norm() * 2.0).sum();
        for eps in [1e-2, 1e-3, 1e-4] {
            let v = poisson_eval(&f, xi * (1.0 - eps)).unwrap();
            prop_assert!((v - f.samples()[k]).norm() <= eps * lip + 1e-12);
        }
    }
}

#[test]
fn round_trip_relative_error() {
    let f = BoundaryFunction::from_fn(256, |z| (z * 0.7).exp() + z.conj() * 0.2).unwrap();
    let g = BoundaryFunction::from_coefficients(f.coefficients().to_vec()).unwrap();
    let err: f64 = f.samples().iter().zip(g.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12 * f.sup_norm());
}
