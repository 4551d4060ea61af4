use kzb_core::freelie::grouplike_residual;
use kzb_core::numeric::{
    elliptic_modularity_check, fiber_segment, fzag_numeric, kz_transport, theta, DenseNC, KzEndpoint, KzPath,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Complex64> {
    // stays clear of 0 and 1
    (0.0..std::f64::consts::TAU, 0.2f64..0.45).prop_map(|(a, r)| Complex64::new(0.5 + r * a.cos(), r * a.sin() + 0.6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kz_transport_grouplike_and_reversible(p in point(), q in point(), n in 1usize..=4) {
        let path = KzPath(vec![KzEndpoint::Point(p), KzEndpoint::Point(q)]);
        let s = kz_transport(n, &path, 64).unwrap();
        prop_assert!(grouplike_residual(&s.to_ncseries()) < 1e-8);
        let back = kz_transport(n, &path.reversed(), 64).unwrap();
        prop_assert!(back.mul(&s).sub(&DenseNC::one(n)).max_norm() < 1e-8);
    }

    #[test]
    fn fiber_segments_grouplike(x_re in 0.05f64..0.95, x_im in 0.1f64..0.9, n in 1usize..=4) {
        let tau = Complex64::new(0.1, 1.6);
        let x = Complex64::new(x_re, x_im);
        let s = fiber_segment(tau, x, x + 0.4, n, 64).unwrap();
        prop_assert!(grouplike_residual(&s.to_ncseries()) < 1e-8);
        let back = fiber_segment(tau, x + 0.4, x, n, 64).unwrap();
        prop_assert!(back.mul(&s).sub(&DenseNC::one(n)).max_norm() < 1e-8);
    }

    #[test]
    fn transformation_laws_at_random_points(
        xr in -0.4f64..0.4, xi in 0.05f64..0.3, er in -0.4f64..0.4, ei in -0.3f64..-0.05,
        tr in -0.5f64..0.5, ti in 0.9f64..2.0,
    ) {
        let s = (Complex64::new(xr, xi), Complex64::new(er, ei), Complex64::new(tr, ti));
        let (r, _) = elliptic_modularity_check(&[s], 1.0);
        prop_assert!(r.elliptic < 1e-9 && r.periodic < 1e-11 && r.modular < 1e-8, "{r:?}");
    }

    #[test]
    fn theta_odd_and_fzag_symmetric(ur in -1.0f64..1.0, ui in -1.0f64..1.0, vr in -1.0f64..1.0, vi in -1.0f64..1.0) {
        let tau = Complex64::new(0.25, 1.1);
        let u = Complex64::new(ur, ui);
        let v = Complex64::new(vr, vi);
        prop_assert!((theta(u, tau).unwrap() + theta(-u, tau).unwrap()).norm() < 1e-12);
        if u.norm() > 0.05 && v.norm() > 0.05 {
            let f = fzag_numeric(u, v, tau).unwrap();
            prop_assert!((f - fzag_numeric(v, u, tau).unwrap()).norm() < 1e-10 * f.norm().max(1.0));
        }
    }
}
