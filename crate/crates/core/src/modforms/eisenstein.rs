//! Eisenstein series, the discriminant and quasi-modular identities for `G_2`.

use num_bigint::BigInt;

use super::ModformsError;
use crate::exactcore::{bernoulli, QSeries, Rational};
use crate::report::Verdict;

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut s = BigInt::from(0);
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// A q-expansion of even weight whose constant term is `-B_w/(2w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularQExpansion {
    weight: u32,
    series: QSeries,
}

impl ModularQExpansion {
    pub fn new(weight: u32, series: QSeries) -> Result<ModularQExpansion, ModformsError> {
        if weight < 2 || weight % 2 == 1 {
            return Err(ModformsError::OddWeight(weight));
        }
        let expected = -bernoulli(weight as usize) / Rational::from_int(2 * weight as i64);
        if series.order() >= 1 && series.coeff(0) != expected {
            return Err(ModformsError::ConstantTerm { weight, found: series.coeff(0) });
        }
        Ok(ModularQExpansion { weight, series })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn series(&self) -> &QSeries {
        &self.series
    }

    pub fn into_series(self) -> QSeries {
        self.series
    }
}

/// `G_w = -B_w/(2w) + Σ_{1 ≤ n < order} σ_{w-1}(n) q^n`.
pub fn eisenstein(weight: u32, order: i32) -> Result<ModularQExpansion, ModformsError> {
    if weight < 2 || weight % 2 == 1 {
        return Err(ModformsError::OddWeight(weight));
    }
    let mut c = Vec::with_capacity(order.max(0) as usize);
    for n in 0..order {
        if n == 0 {
            c.push(-bernoulli(weight as usize) / Rational::from_int(2 * weight as i64));
        } else {
            c.push(Rational::from_bigint(sigma(weight - 1, n as u64)));
        }
    }
    ModularQExpansion::new(weight, QSeries::from_coeffs(0, c))
}

/// `G_k` for any `k ≥ 1`, with `G_k = 0` for odd `k`.
pub fn eisenstein_any(k: u32, order: i32) -> QSeries {
    if k % 2 == 1 {
        QSeries::zero(0, order)
    } else {
        eisenstein(k, order).expect("even weight").into_series()
    }
}

/// `Δ_0 = q Π_{n ≥ 1} (1 - q^n)^24`, known through `q^{order-1}`.
pub fn delta0(order: i32) -> QSeries {
    assert!(order >= 1);
    let inner = order - 1;
    let mut p = QSeries::one(inner);
    for n in 1..inner {
        let mut f = QSeries::one(inner);
        f.set(n, Rational::from_int(-1));
        p = p.mul(&f);
    }
    p.pow(24).shift(1)
}

/// `D = q d/dq`.
pub fn theta(s: &QSeries) -> QSeries {
    s.theta()
}

/// `u = 20 G_4` and `v = 7 G_6 / 3` (normalization `2πiξ = 1`).
pub fn uv_series(order: i32) -> (QSeries, QSeries) {
    let g4 = eisenstein(4, order).unwrap().into_series();
    let g6 = eisenstein(6, order).unwrap().into_series();
    (g4.scale(&Rational::from_int(20)), g6.scale(&Rational::new(7, 3)))
}

/// First exponent `< upto` where two series differ, as a witness.
pub fn series_mismatch(lhs: &QSeries, rhs: &QSeries, upto: i32) -> Option<String> {
    let lo = lhs.lo().min(rhs.lo());
    for e in lo..upto {
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        if a != b {
            return Some(format!("q^{e}: lhs {a} != rhs {b}"));
        }
    }
    None
}

/// Variants of the `G_4` relation; `OmitDerivative` is a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G4Variant {
    Exact,
    OmitDerivative,
}

/// `G_4 = (6/5)(2 G_2^2 + D G_2)` through `q^{order-1}`.
pub fn g4_g2_relation_check(order: i32, variant: G4Variant) -> Verdict {
    let g2 = eisenstein(2, order).unwrap().into_series();
    let g4 = eisenstein(4, order).unwrap().into_series();
    let mut inner = g2.mul(&g2).scale(&Rational::from_int(2));
    if variant == G4Variant::Exact {
        inner = inner.add(&theta(&g2));
    }
    let rhs = inner.scale(&Rational::new(6, 5));
    Verdict::from_witness(series_mismatch(&g4, &rhs, order))
}

/// `u^3 - 27 v^2 = Δ_0` through `q^{order-1}`.
pub fn discriminant_check(order: i32) -> Verdict {
    let (u, v) = uv_series(order);
    let lhs = u.pow(3).sub(&v.pow(2).scale(&Rational::from_int(27)));
    Verdict::from_witness(series_mismatch(&lhs, &delta0(order), order))
}

/// `q Δ_0'/Δ_0 = -24 G_2` through `q^{order-1}`; `flip_sign` is a negative control.
pub fn e2_log_delta_check(order: i32, flip_sign: bool) -> Verdict {
    // Δ_0 known to q^{order}, so the logarithmic derivative is known to q^{order-1}
    let d = delta0(order + 1);
    let lhs = theta(&d).div(&d).expect("Δ_0 is nonzero");
    let s = if flip_sign { 24 } else { -24 };
    let rhs = eisenstein(2, order).unwrap().into_series().scale(&Rational::from_int(s));
    Verdict::from_witness(series_mismatch(&lhs, &rhs, order))
}

/// `3(2u Dv - 3v Du) = 2Δ_0` through `q^{order-1}`, `D = q d/dq`.
pub fn uv_wronskian_check(order: i32) -> Verdict {
    let (u, v) = uv_series(order);
    let lhs = u.mul(&theta(&v)).scale(&Rational::from_int(6)).sub(&v.mul(&theta(&u)).scale(&Rational::from_int(9)));
    Verdict::from_witness(series_mismatch(&lhs, &delta0(order).scale(&Rational::from_int(2)), order))
}

#[cfg(test)]
mod tests {
    use super::*;

    // oracle: Euler's pentagonal number theorem for Π(1 - q^n), then 24th power by squaring
    fn delta0_pentagonal(order: i32) -> QSeries {
        let inner = order - 1;
        let mut e = QSeries::zero(0, inner);
        for k in -inner..=inner {
            let g = k * (3 * k - 1) / 2;
            if g >= 0 && g < inner {
                e.set(g, Rational::from_int(if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        let e2 = e.mul(&e);
        let e4 = e2.mul(&e2);
        let e8 = e4.mul(&e4);
        let e16 = e8.mul(&e8);
        e16.mul(&e8).shift(1)
    }

    #[test]
    fn wronskian_is_twice_discriminant() {
        assert!(uv_wronskian_check(30).passed());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 1), BigInt::from(1));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(1, 6), BigInt::from(12));
        assert_eq!(sigma(0, 12), BigInt::from(6));
    }

    #[test]
    fn eisenstein_values() {
        assert_eq!(eisenstein(2, 1).unwrap().series().coeff(0), Rational::new(-1, 24));
        let g4 = eisenstein(4, 3).unwrap();
        assert_eq!(g4.series().coeffs(), &[Rational::new(1, 240), Rational::ONE, Rational::from_int(9)]);
        assert!(eisenstein(3, 4).is_err());
        assert!(eisenstein_any(3, 5).is_zero());
        let bad = QSeries::from_ints(0, &[1, 1]);
        assert!(ModularQExpansion::new(4, bad).is_err());
    }

    #[test]
    fn eisenstein_sign_and_integrality() {
        for w in (2..=30).step_by(2) {
            let g = eisenstein(w, 12).unwrap();
            let b = bernoulli(w as usize);
            assert_eq!(g.series().coeff(0).signum() < 0, b.signum() > 0);
            for n in 1..12 {
                let c = g.series().coeff(n);
                assert!(c.is_integer() && c.signum() > 0);
            }
        }
    }

    #[test]
    fn delta0_values() {
        assert_eq!(delta0(3), QSeries::from_ints(0, &[0, 1, -24]));
        assert_eq!(delta0(4), QSeries::from_ints(0, &[0, 1, -24, 252]));
        assert_eq!(delta0(60), delta0_pentagonal(60));
        assert_eq!(delta0(12).coeff(11), Rational::from_int(534612));
    }

    #[test]
    fn quasimodular_identities() {
        assert!(g4_g2_relation_check(20, G4Variant::Exact).passed());
        assert!(g4_g2_relation_check(1, G4Variant::Exact).passed());
        let v = g4_g2_relation_check(20, G4Variant::OmitDerivative);
        assert!(v.witness.unwrap().starts_with("q^1:"));
        assert!(discriminant_check(30).passed());
        assert!(e2_log_delta_check(30, false).passed());
        assert!(!e2_log_delta_check(30, true).passed());
    }

    #[test]
    fn identities_to_order_200() {
        assert!(discriminant_check(200).passed());
        assert!(e2_log_delta_check(200, false).passed());
    }
}
