//! The Weierstrass function in the normalized variable `w = 2πiz`.

use super::eisenstein::eisenstein_any;
use crate::exactcore::{factorial, MSeries, MWindow, Rational};

/// `𝔭(w, q) = 1/w^2 + Σ_{m ≥ 1} 2 G_{2m+2}(q)/(2m)! w^{2m}` in variables `(w, q)`,
/// known through `w^{w_order-1}` and `q^{q_order-1}`.
pub fn wp_series(w_order: i32, q_order: i32) -> MSeries {
    assert!(w_order >= 2);
    let mut s = MSeries::zero(MWindow::new(vec![-2, 0], vec![w_order, q_order]));
    s.set(&[-2, 0], Rational::ONE);
    let mut m = 1;
    while 2 * m < w_order {
        let g = eisenstein_any(2 * m as u32 + 2, q_order);
        let c = Rational::from_int(2) / factorial(2 * m as u32);
        for (n, gn) in g.terms() {
            s.set(&[2 * m, n], gn * &c);
        }
        m += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein;

    #[test]
    fn leading_coefficients() {
        let s = wp_series(6, 5);
        assert_eq!(s.coeff(&[-2, 0]), Rational::ONE);
        let g4 = eisenstein(4, 5).unwrap();
        for n in 0..5 {
            assert_eq!(s.coeff(&[2, n]), g4.series().coeff(n));
            assert!(s.coeff(&[0, n]).is_zero());
            assert!(s.coeff(&[1, n]).is_zero());
        }
    }
}
