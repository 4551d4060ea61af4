use kzb_core::kzbform::{assemble_kzb, jacobi_f};
use kzb_core::numeric::fzag_v_coeffs;
use num_complex::Complex64;

const TWO_PI_I: Complex64 = Complex64 { re: 0.0, im: 2.0 * std::f64::consts::PI };

#[test]
fn v_coefficients_match_series_slices() {
    let f = jacobi_f(14, 8, 30).full();
    let tau = Complex64::new(0.2, 1.8);
    let q = (TWO_PI_I * tau).exp();
    for u in [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.35)] {
        let num = fzag_v_coeffs(u, tau, 5).unwrap();
        for s in -1..=5 {
            let exact = f.slice(1, s).eval(&[u, q]);
            assert!((exact - num[(s + 1) as usize]).norm() < 1e-10, "s={s}: {exact} vs {}", num[(s + 1) as usize]);
        }
    }
}

#[test]
fn connection_du_part_matches_numeric_coefficients() {
    // the coefficient of ad(T^k.A) in the du part is f_{k-1}
    let form = assemble_kzb(5, 12, 30).unwrap();
    let tau = Complex64::new(0.0, 1.5);
    let q = (TWO_PI_I * tau).exp();
    let u = Complex64::new(0.25, -0.15);
    let num = fzag_v_coeffs(u, tau, 4).unwrap();
    for (k, term) in form.du.iter().enumerate() {
        assert_eq!(term.label, format!("ad(T^{k}.A)"));
        let z = term.coeff.eval(&[u, q]);
        assert!((z - num[k]).norm() < 1e-9, "k={k}");
    }
}
