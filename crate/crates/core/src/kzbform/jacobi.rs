//! The normalized Jacobi form `𝔽(u, v, q)` and its exact functional equations.
//!
//! Under `u = 2πiξ`, `v = 2πiη` the factor `(2πi)^{1+max(r,s)}` on the
//! `ξ^r η^s` coefficient of `F` meets `(2πi)^{-r-s}` from the substitution and
//! `(2πi)^{min(r,s)}` from `D = q d/dq = (2πi)^{-1} d/dτ`; since
//! `max + min = r + s` everything cancels except the overall `2πi`, which is
//! absorbed into `𝔽 = F / 2πi`. So every coefficient is a rational q-series.

use super::mseries_witness;
use crate::exactcore::{binomial, coth_half_series, factorial, MSeries, MWindow, QSeries, Rational, Series};
use crate::modforms::{eisenstein_any, theta, wp_series};
use crate::report::Verdict;

/// Variants of the coefficient rule; everything except `Exact` is a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiVariant {
    Exact,
    /// `G_2` replaced by `G_4` in the two first-order coefficients only. Replacing it
    /// along the whole diagonal would still solve the heat equation.
    G2ToG4,
}

/// Coefficients `c_{r,s}(q)` of the regular part, cached by `(|r-s|, min(r,s))`.
pub struct JacobiCoeffs {
    m: i32,
    variant: JacobiVariant,
    // dg[k][j] = D^j G_{k+1}
    dg: Vec<Vec<QSeries>>,
}

impl JacobiCoeffs {
    pub fn new(m: i32, variant: JacobiVariant) -> JacobiCoeffs {
        JacobiCoeffs { m, variant, dg: Vec::new() }
    }

    fn dg(&mut self, k: usize, j: usize) -> QSeries {
        while self.dg.len() <= k {
            let w = self.dg.len() as u32 + 1;
            self.dg.push(vec![eisenstein_any(w, self.m)]);
        }
        while self.dg[k].len() <= j {
            let next = theta(self.dg[k].last().unwrap());
            self.dg[k].push(next);
        }
        self.dg[k][j].clone()
    }

    /// `-2 D^{min(r,s)} G_{|r-s|+1} / (r! s!)`.
    pub fn coeff(&mut self, r: u32, s: u32) -> QSeries {
        let k = r.abs_diff(s) as usize;
        let j = r.min(s) as usize;
        let g = if self.variant == JacobiVariant::G2ToG4 && k == 1 && j == 0 {
            eisenstein_any(4, self.m)
        } else {
            self.dg(k, j)
        };
        g.scale(&(Rational::from_int(-2) / (factorial(r) * factorial(s))))
    }
}

/// `𝔽` truncated to `u^r v^s q^n` with `r < ku`, `s < kv`, `n < m`.
#[derive(Clone, Debug)]
pub struct JacobiFormSeries {
    pub ku: i32,
    pub kv: i32,
    pub m: i32,
    /// Everything except `1/u + 1/v`, in variables `(u, v, q)`.
    pub regular: MSeries,
}

impl JacobiFormSeries {
    /// The pole part `1/u + 1/v` in the window of [`JacobiFormSeries::full`].
    pub fn pole_part(&self) -> MSeries {
        let mut s = MSeries::zero(self.window());
        s.set(&[-1, 0, 0], Rational::ONE);
        s.set(&[0, -1, 0], Rational::ONE);
        s
    }

    pub fn window(&self) -> MWindow {
        MWindow::new(vec![-1, -1, 0], vec![self.ku, self.kv, self.m])
    }

    /// Pole part plus regular part as one Laurent series.
    pub fn full(&self) -> MSeries {
        self.pole_part().add(&self.regular.reshape(&self.window()))
    }

    /// The coefficient of `u^r v^s` as a q-series.
    pub fn coeff(&self, r: i32, s: i32) -> QSeries {
        let f = self.full();
        let mut out = QSeries::zero(0, self.m);
        for n in 0..self.m {
            out.set(n, f.coeff(&[r, s, n]));
        }
        out
    }
}

pub fn jacobi_f(ku: i32, kv: i32, m: i32) -> JacobiFormSeries {
    jacobi_f_variant(ku, kv, m, JacobiVariant::Exact)
}

pub fn jacobi_f_variant(ku: i32, kv: i32, m: i32, variant: JacobiVariant) -> JacobiFormSeries {
    assert!(ku >= 1 && kv >= 1 && m >= 1);
    let mut c = JacobiCoeffs::new(m, variant);
    let mut reg = MSeries::zero(MWindow::new(vec![0, 0, 0], vec![ku, kv, m]));
    for r in 0..ku {
        for s in 0..kv {
            for (n, x) in c.coeff(r as u32, s as u32).terms() {
                reg.set(&[r, s, n], x.clone());
            }
        }
    }
    JacobiFormSeries { ku, kv, m, regular: reg }
}

const UVQ: [&str; 3] = ["u", "v", "q"];

/// `D𝔽 = ∂²𝔽/∂u∂v` on `u^r v^s q^n`, `r < ku-1`, `s < kv-1`, `n < m`.
pub fn heat_check(ku: i32, kv: i32, m: i32) -> Verdict {
    heat_check_variant(ku, kv, m, JacobiVariant::Exact)
}

pub fn heat_check_variant(ku: i32, kv: i32, m: i32, variant: JacobiVariant) -> Verdict {
    let f = jacobi_f_variant(ku, kv, m, variant).full();
    let lhs = f.theta(2);
    let rhs = f.partial(0).partial(1);
    // both sides are pole free; restrict to the common nonnegative window
    let w = MWindow::new(vec![0, 0, 0], vec![ku - 1, kv - 1, m]);
    if let Some(w) = mseries_witness(&lhs.reshape(&w).sub(&rhs).reshape(&w), &UVQ) {
        return Verdict::fail(w);
    }
    let poles = rhs.terms_below(&[0, 0, 0]);
    if let Some((e, c)) = poles.first() {
        return Verdict::fail(format!("pole term {e:?} with coefficient {c} in ∂u∂v𝔽"));
    }
    Verdict::pass().with_detail(format!("region u<{}, v<{}, q<{m}", ku - 1, kv - 1))
}

/// `1/v + v ∂𝔽/∂v` in variables `(u, v, q)`.
pub fn v_derivative_combination(ku: i32, kv: i32, m: i32) -> MSeries {
    let f = jacobi_f(ku, kv, m);
    let mut s = f.full().theta(1);
    s.add_at(&[0, -1, 0], &Rational::ONE);
    s
}

/// No `v` pole, no `v^0` term, and the q^0 slice is `1/v - (v/4)/sinh²(v/2)`.
pub fn v_derivative_check(ku: i32, kv: i32, m: i32) -> Verdict {
    let s = v_derivative_combination(ku, kv, m);
    for (e, c) in s.terms() {
        if e[1] <= 0 {
            return Verdict::fail(format!("term u^{} v^{} q^{} has coefficient {c}", e[0], e[1], e[2]));
        }
    }
    // (v/4)/sinh²(v/2) = v/(e^{v/2} - e^{-v/2})² = v e^v/(e^v - 1)²
    let order = kv + 2;
    let ev = Series::from_coeffs(0, (0..order).map(|k| factorial(k as u32).recip()).collect());
    let em1_over_v = Series::from_coeffs(0, (0..order).map(|k| factorial(k as u32 + 1).recip()).collect());
    let sq = em1_over_v.mul(&em1_over_v);
    // v e^v/(e^v - 1)^2 = (1/v) e^v / ((e^v - 1)/v)^2
    let g = ev.div(&sq).unwrap().shift(-1);
    for sv in -1..kv {
        let want0 = one_over_v(sv) - g.coeff(sv);
        for r in -1..ku {
            let got = s.coeff(&[r, sv, 0]);
            let want = if r == 0 { want0.clone() } else { Rational::ZERO };
            if got != want {
                return Verdict::fail(format!("q^0 u^{r} v^{sv}: got {got}, expected {want}"));
            }
        }
    }
    Verdict::pass()
}

fn one_over_v(sv: i32) -> Rational {
    if sv == -1 {
        Rational::ONE
    } else {
        Rational::ZERO
    }
}

/// The q^0 slice equals `½coth(u/2) + ½coth(v/2)`.
pub fn q0_coth_check(ku: i32, kv: i32, m: i32) -> Verdict {
    let f = jacobi_f(ku, kv, m).full();
    let cu = coth_half_series(ku + 1);
    let cv = coth_half_series(kv + 1);
    for r in -1..ku {
        for s in -1..kv {
            let mut want = Rational::ZERO;
            if s == 0 {
                want += cu.coeff(r);
            }
            if r == 0 {
                want += cv.coeff(s);
            }
            let got = f.coeff(&[r, s, 0]);
            if got != want {
                return Verdict::fail(format!("q^0 u^{r} v^{s}: got {got}, expected {want}"));
            }
        }
    }
    Verdict::pass()
}

/// `𝔽(u,v) = 𝔽(v,u)` and `𝔽(-u,-v) = -𝔽(u,v)`.
pub fn symmetry_check(k: i32, m: i32) -> Verdict {
    let f = jacobi_f(k, k, m).full();
    for (e, c) in f.terms() {
        if f.coeff(&[e[1], e[0], e[2]]) != *c {
            return Verdict::fail(format!("u^{} v^{} q^{} is not symmetric", e[0], e[1], e[2]));
        }
        if (e[0] + e[1]).rem_euclid(2) == 0 {
            return Verdict::fail(format!("even term u^{} v^{} q^{} with coefficient {c}", e[0], e[1], e[2]));
        }
    }
    Verdict::pass()
}

/// Variants of the addition-formula check; `PerturbWp` is a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditionVariant {
    Exact,
    /// Adds 1 to the `v² q⁰` coefficient of `𝔭`. A constant shift of `𝔭` cancels
    /// in `𝔭(v₁) - 𝔭(v₂)` and could not be detected.
    PerturbWp,
}

/// `𝔽(u,v₁)𝔽_v(u,v₂) - 𝔽(u,v₂)𝔽_v(u,v₁) = 𝔽(u,v₁+v₂)(𝔭(v₁) - 𝔭(v₂))`, both sides
/// multiplied by `u² v₁² v₂² (v₁+v₂)`, in variables `(u, v₁, v₂, q)`.
pub fn addition_formula_check(ku: i32, kv: i32, m: i32) -> Verdict {
    addition_formula_check_variant(ku, kv, m, AdditionVariant::Exact)
}

pub fn addition_formula_check_variant(ku: i32, kv: i32, m: i32, variant: AdditionVariant) -> Verdict {
    let w4 = MWindow::new(vec![-1, -2, -2, 0], vec![ku, kv, kv, m]);
    let f = jacobi_f(ku, kv, m).full();
    let fv = f.partial(1);
    let f1 = f.embed(&[0, 1, 3], w4.clone());
    let f2 = f.embed(&[0, 2, 3], w4.clone());
    let fv1 = fv.embed(&[0, 1, 3], w4.clone());
    let fv2 = fv.embed(&[0, 2, 3], w4.clone());
    let lhs = f1.mul(&fv2).sub(&f2.mul(&fv1));

    let mut wp = wp_series(kv, m);
    if variant == AdditionVariant::PerturbWp && kv > 2 {
        wp.add_at(&[2, 0], &Rational::ONE);
    }
    let wp1 = wp.embed(&[1, 3], w4.clone());
    let wp2 = wp.embed(&[2, 3], w4.clone());

    // G = (v₁+v₂) 𝔽(u, v₁+v₂), exact for v₁, v₂ < kv
    let gw = MWindow::new(vec![-1, 0, 0, 0], vec![ku, kv, kv, m]);
    let mut g = MSeries::zero(gw);
    g.set(&[-1, 1, 0, 0], Rational::ONE);
    g.set(&[-1, 0, 1, 0], Rational::ONE);
    g.add_at(&[0, 0, 0, 0], &Rational::ONE);
    let mut c = JacobiCoeffs::new(m, JacobiVariant::Exact);
    for r in 0..ku {
        for s in 0..(2 * kv - 2).max(0) {
            let cq = c.coeff(r as u32, s as u32);
            let p = s as u32 + 1;
            for a in 0..=p {
                let (e1, e2) = (a as i32, (p - a) as i32);
                if e1 >= kv || e2 >= kv {
                    continue;
                }
                let b = binomial(p, a);
                for (n, x) in cq.terms() {
                    g.add_at(&[r, e1, e2, n], &(x * &b));
                }
            }
        }
    }

    let sum = [(vec![0, 1, 0, 0], Rational::ONE), (vec![0, 0, 1, 0], Rational::ONE)];
    let clear = [2, 2, 2, 0];
    let lhs = lhs.mul_poly(&sum).shift(&clear);
    let rhs = g.mul(&wp1.sub(&wp2)).shift(&clear);
    for (side, s) in [("lhs", &lhs), ("rhs", &rhs)] {
        if let Some((e, c)) = s.terms_below(&[0; 4]).first() {
            return Verdict::fail(format!("{side} keeps a negative exponent {e:?} (coefficient {c})"));
        }
    }
    let w = MWindow::new(vec![0; 4], lhs.window().meet(rhs.window()).order);
    let diff = lhs.reshape(&w).sub(&rhs.reshape(&w));
    match mseries_witness(&diff, &["u", "v1", "v2", "q"]) {
        Some(wit) => Verdict::fail(wit),
        None => Verdict::pass().with_detail(format!("cleared region {:?}", w.order)),
    }
}

/// `½ xy ((𝔭(x) - 1/x²) - (𝔭(y) - 1/y²)) = (x+y) Σ_m G_{2m+2}/(2m)! Σ_{j+k=2m+1} (-1)^j x^j y^k`.
pub fn wp_difference_identity_check(k: i32, m: i32) -> Verdict {
    let w3 = MWindow::new(vec![0, 0, 0], vec![k, k, m]);
    let mut wp = wp_series(k, m);
    wp.set(&[-2, 0], Rational::ZERO);
    let px = wp.embed(&[0, 2], w3.clone());
    let py = wp.embed(&[1, 2], w3.clone());
    let lhs = px.sub(&py).shift(&[1, 1, 0]).scale(&Rational::new(1, 2));

    let sw = MWindow::new(vec![0, 0, 0], vec![k + 1, k + 1, m]);
    let mut s = MSeries::zero(sw);
    let mut mm = 1;
    while 2 * mm + 1 <= 2 * k {
        let g = eisenstein_any(2 * mm as u32 + 2, m);
        let c = factorial(2 * mm as u32).recip();
        for j in 1..=2 * mm {
            let kk = 2 * mm + 1 - j;
            if j > k || kk > k {
                continue;
            }
            let sign = if j % 2 == 0 { c.clone() } else { -&c };
            for (n, x) in g.terms() {
                s.add_at(&[j, kk, n], &(x * &sign));
            }
        }
        mm += 1;
    }
    let rhs = s.mul_poly(&[(vec![1, 0, 0], Rational::ONE), (vec![0, 1, 0], Rational::ONE)]);
    let w = MWindow::new(vec![0; 3], lhs.window().meet(rhs.window()).order);
    match mseries_witness(&lhs.reshape(&w).sub(&rhs.reshape(&w)), &["x", "y", "q"]) {
        Some(wit) => Verdict::fail(wit),
        None => Verdict::pass().with_detail(format!("region {:?}", w.order)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein;

    // ½coth(x/2) = ½ (e^x + 1)/(e^x - 1), by direct series division
    fn coth_half_oracle(k: i32) -> Series {
        let num = Series::from_coeffs(
            0,
            (0..k).map(|j| if j == 0 { Rational::ONE } else { factorial(j as u32).recip() * Rational::new(1, 2) }).collect(),
        );
        let den = Series::from_coeffs(0, (0..k).map(|j| factorial(j as u32 + 1).recip()).collect());
        num.div(&den).unwrap().shift(-1)
    }

    #[test]
    fn low_coefficients() {
        let f = jacobi_f(4, 4, 6);
        let g2 = eisenstein(2, 6).unwrap().into_series();
        assert_eq!(f.coeff(1, 0), g2.scale(&Rational::from_int(-2)));
        assert!(f.coeff(0, 0).is_zero());
        assert_eq!(f.coeff(-1, 0).coeff(0), Rational::ONE);
        // u v coefficient is -2 D G_1 = 0, u^2 v is -D G_2
        assert!(f.coeff(1, 1).is_zero());
        assert_eq!(f.coeff(2, 1), theta(&g2).scale(&Rational::from_int(-1)));
    }

    #[test]
    fn q0_slice_matches_coth() {
        let f = jacobi_f(8, 8, 2);
        let c = coth_half_oracle(12);
        for r in 0..8 {
            assert_eq!(f.coeff(r, 0).coeff(0), c.coeff(r));
        }
        assert_eq!(f.coeff(-1, 0).coeff(0), Rational::ONE);
        assert!(q0_coth_check(8, 8, 4).passed());
    }

    #[test]
    fn heat_equation() {
        assert!(heat_check(6, 6, 8).passed());
        let v = heat_check_variant(6, 6, 8, JacobiVariant::G2ToG4);
        assert!(!v.passed());
        assert!(v.witness.unwrap().contains("q^"));
    }

    #[test]
    fn v_derivative() {
        let s = v_derivative_combination(5, 6, 5);
        assert_eq!(s.coeff(&[0, 1, 0]), Rational::new(1, 12));
        assert!(v_derivative_check(5, 6, 5).passed());
    }

    #[test]
    fn symmetric_and_odd() {
        assert!(symmetry_check(7, 6).passed());
    }

    #[test]
    fn addition_formula() {
        let v = addition_formula_check(5, 5, 6);
        assert!(v.passed(), "{v:?}");
        assert!(!addition_formula_check_variant(5, 5, 6, AdditionVariant::PerturbWp).passed());
    }

    #[test]
    fn addition_formula_antisymmetric_on_diagonal() {
        // both sides vanish at v₁ = v₂; the left side as a check of the construction
        let f = jacobi_f(4, 4, 4).full();
        let fv = f.partial(1);
        let w = MWindow::new(vec![-1, -2, -2, 0], vec![4, 4, 4, 4]);
        let l = f.embed(&[0, 1, 3], w.clone()).mul(&fv.embed(&[0, 2, 3], w.clone()));
        let r = f.embed(&[0, 2, 3], w.clone()).mul(&fv.embed(&[0, 1, 3], w));
        let d = l.sub(&r);
        for (e, c) in d.terms() {
            assert_eq!(d.coeff(&[e[0], e[2], e[1], e[3]]), -c.clone());
        }
    }

    #[test]
    fn wp_difference() {
        assert!(wp_difference_identity_check(8, 6).passed());
        assert!(wp_difference_identity_check(4, 3).passed());
    }
}
