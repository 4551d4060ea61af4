//! The connection on the `(u, v)` chart with polynomial coefficients over `Δ = u³ - 27v²`,
//! its pullback to the q-line, homogeneity and the frame change.

use crate::exactcore::{factorial, CommPoly, QSeries, Rational};
use crate::freelie::{delta2m, nc_witness, QDerivation, QNC};
use crate::modforms::{delta0, eisenstein, p2m, p2m_min_order, series_mismatch, theta, uv_series, ModformsError, UV};
use crate::report::Verdict;

/// `(a du + b dv)/Δ ⊗ δ̂₂ₘ`.
#[derive(Clone, Debug)]
pub struct AlgebraicTerm {
    pub m: usize,
    pub a: CommPoly,
    pub b: CommPoly,
    pub der: QDerivation,
}

#[derive(Clone, Debug)]
pub struct AlgebraicForm {
    pub n: usize,
    pub delta: CommPoly,
    pub terms: Vec<AlgebraicTerm>,
}

fn uv(i: usize) -> CommPoly {
    CommPoly::var(&UV, i)
}

/// `(1/12) dΔ/Δ ⊗ δ̂₂ + Σ_{2 ≤ m, 2m ≤ max_weight} 3/(2m-2)! p₂ₘ (3v du - 2u dv)/Δ ⊗ δ̂₂ₘ`,
/// derivations truncated at word length `n`.
pub fn m1vec_connection(n: usize, max_weight: u32) -> Result<AlgebraicForm, ModformsError> {
    let (u, v) = (uv(0), uv(1));
    let delta = u.pow(3).sub(&v.pow(2).scale(&Rational::from_int(27)));
    // dΔ = 3u² du - 54 v dv
    let mut terms = vec![AlgebraicTerm {
        m: 1,
        a: u.pow(2).scale(&Rational::new(1, 4)),
        b: v.scale(&Rational::new(-9, 2)),
        der: delta2m(1, n),
    }];
    let mut m = 2;
    while 2 * m <= max_weight as usize {
        let w = 2 * m as u32;
        let p = p2m(w, p2m_min_order(w) + 4)?;
        let k = Rational::from_int(3) / factorial(w - 2);
        let p = p.scale(&k);
        terms.push(AlgebraicTerm {
            m,
            a: p.mul(&v).scale(&Rational::from_int(3)),
            b: p.mul(&u).scale(&Rational::from_int(-2)),
            der: delta2m(m, n),
        });
        m += 1;
    }
    Ok(AlgebraicForm { n, delta, terms })
}

/// Each term has weight zero: the coefficient form `(a du + b dv)/Δ` has weight
/// `2m - 2` for `(u, v, du, dv)` weights `(4, 6, 4, 6)`, and `δ̂₂ₘ` has weight `2 - 2m`
/// when `T̂` has weight `-1` and `Ŝ` weight `1`.
pub fn qdr_homogeneity_check(form: &AlgebraicForm) -> Verdict {
    let w = [4, 6];
    let dw = form.delta.weighted_degree(&w).unwrap_or(0);
    for t in &form.terms {
        let wa = t.a.weighted_degree(&w).map(|x| x + 4 - dw);
        let wb = t.b.weighted_degree(&w).map(|x| x + 6 - dw);
        if wa.is_none() || wa != wb {
            return Verdict::fail(format!("m = {}: du weight {wa:?}, dv weight {wb:?}", t.m));
        }
        // δ₂ₘ lives in word lengths 2m and 2m+1, so read its weight there
        let wd = match derivation_weight(&delta2m(t.m, 2 * t.m + 2)) {
            Ok(x) => x,
            Err(e) => return Verdict::fail(format!("m = {}: {e}", t.m)),
        };
        if wa.unwrap() + wd != 0 {
            return Verdict::fail(format!("m = {}: coefficient weight {} against derivation weight {wd}", t.m, wa.unwrap()));
        }
    }
    Verdict::pass()
}

// weight of a word: #A - #T; a derivation is homogeneous if all values shift by one amount
fn derivation_weight(d: &QDerivation) -> Result<i64, String> {
    let mut shift = None;
    for (g, v) in [(-1i64, d.on_t()), (1, d.on_a())] {
        for (w, _) in v.terms() {
            let s = 2 * w.count_a() as i64 - w.len() as i64 - g;
            match shift {
                None => shift = Some(s),
                Some(x) if x != s => return Err(format!("mixed weights {x} and {s} at {w}")),
                _ => {}
            }
        }
    }
    Ok(shift.unwrap_or(0))
}

/// Pullback to `(u, v) = (20G₄, 7G₆/3)` through `q^{order-1}`:
/// (a) `3(2u Dv - 3v Du) = 2Δ`; (b) the `δ₂ₘ` coefficient is `-2G₂` for `m = 1` and
/// `-2G₂ₘ/(2m-2)!` for `m ≥ 2`, both against `dq/q`.
pub fn qdr_pullback_check(form: &AlgebraicForm, order: i32) -> Verdict {
    let (us, vs) = uv_series(order);
    let (du, dv) = (theta(&us), theta(&vs));
    let d0 = delta0(order);
    let three = Rational::from_int(3);
    let lhs = us.mul(&dv).scale(&Rational::from_int(2)).sub(&vs.mul(&du).scale(&three)).scale(&three);
    let mut checks = vec![(
        "3(2uDv - 3vDu) = 2Δ".to_string(),
        Verdict::from_witness(series_mismatch(&lhs, &d0.scale(&Rational::from_int(2)), order)),
    )];
    let sec = [us.clone(), vs.clone()];
    let delta_on_section = form.delta.eval_series(&sec);
    checks.push(("Δ(u, v) = Δ₀".to_string(), Verdict::from_witness(series_mismatch(&delta_on_section, &d0, order))));
    for t in &form.terms {
        let num = t.a.eval_series(&sec).mul(&du).add(&t.b.eval_series(&sec).mul(&dv));
        let g = eisenstein(2 * t.m as u32, order).unwrap().into_series();
        let target: QSeries = if t.m == 1 {
            g.scale(&Rational::from_int(-2))
        } else {
            g.scale(&(Rational::from_int(-2) / factorial(2 * t.m as u32 - 2)))
        };
        // compare numerators: the coefficient is num/Δ₀ and Δ₀ starts at q
        checks.push((
            format!("delta_{}", 2 * t.m),
            Verdict::from_witness(series_mismatch(&num, &target.mul(&d0), order)),
        ));
    }
    Verdict::all(checks)
}

/// `s^{2m-2} δ̂₂ₘ = δ₂ₘ` after `T̂ = T/s`, `Ŝ = s(A - cT)`.
pub fn frame_change_check(m: usize, n: usize, s: &Rational, cc: &Rational) -> Verdict {
    let d = delta2m(m, n);
    let (t, a) = (QNC::qt(n), QNC::qa(n));
    let t_hat = t.scale(&s.recip());
    let s_hat = a.sub(&t.scale(cc)).scale(s);
    // δ̂ on the hatted generators, written in T and A
    let on_th = d.on_t().substitute(&t_hat, &s_hat);
    let on_sh = d.on_a().substitute(&t_hat, &s_hat);
    // T = s T̂ and A = Ŝ/s + c s T̂
    let on_t = on_th.scale(s);
    let on_a = on_sh.scale(&s.recip()).add(&on_th.scale(&(cc * s)));
    let k = s.pow(2 * m as i32 - 2);
    let on_t = on_t.scale(&k).sub(d.on_t());
    let on_a = on_a.scale(&k).sub(d.on_a());
    for (name, v) in [("T", &on_t), ("A", &on_a)] {
        if let Some(w) = nc_witness(v) {
            return Verdict::fail(format!("m = {m}, s = {s}, c = {cc}, value on {name}: {w}"));
        }
    }
    Verdict::pass()
}

/// The Gauss–Manin piece along the section: with `T̂ = T`, `Ŝ = A - 2G₂T` and
/// `α = 2u dv - 3v du`, `∇T̂ = -(1/12)(dΔ/Δ)T̂ + (3/2)(α/Δ)Ŝ` and
/// `∇Ŝ = -(u/8)(α/Δ)T̂ + (1/12)(dΔ/Δ)Ŝ` give `∇T = A dq/q` and `∇A = 0`.
pub fn nabla0_check(order: i32) -> Verdict {
    nabla0_with(order, 2)
}

// `k` replaces the 2 in `Ŝ = A - 2G₂T`
fn nabla0_with(order: i32, k: i64) -> Verdict {
    let o = order + 2;
    let (us, vs) = uv_series(o);
    let d0 = delta0(o + 1);
    // Δ₀ has valuation 1; divide after shifting
    let inv = d0.shift(-1).inverse().unwrap().shift(-1);
    let alpha = us.mul(&theta(&vs)).scale(&Rational::from_int(2)).sub(&vs.mul(&theta(&us)).scale(&Rational::from_int(3)));
    let a_over = alpha.mul(&inv);
    let dlog = theta(&d0).mul(&inv);
    let g2 = eisenstein(2, o).unwrap().into_series();
    let twelfth = Rational::new(1, 12);
    // matrices on the basis (T̂, Ŝ), rows = image coefficients
    let tt = dlog.scale(&twelfth).neg();
    let ts = a_over.scale(&Rational::new(3, 2));
    let st = us.mul(&a_over).scale(&Rational::new(-1, 8));
    let ss = dlog.scale(&twelfth);
    // T = T̂, A = Ŝ + 2G₂ T̂
    let two_g2 = g2.scale(&Rational::from_int(k));
    // ∇T in (T̂, Ŝ), then in (T, A): xT̂ + yŜ = (x - 2G₂ y) T + y A
    let (x, y) = (tt.clone(), ts.clone());
    let nt_t = x.sub(&two_g2.mul(&y));
    let nt_a = y;
    // ∇A = ∇Ŝ + 2DG₂ T̂ + 2G₂ ∇T̂
    let x = st.add(&theta(&two_g2)).add(&two_g2.mul(&tt));
    let y = ss.add(&two_g2.mul(&ts));
    let na_t = x.sub(&two_g2.mul(&y));
    let na_a = y;
    let zero = QSeries::zero(0, order);
    let one = QSeries::one(order);
    Verdict::all([
        ("∇T, T-part".to_string(), Verdict::from_witness(series_mismatch(&nt_t, &zero, order))),
        ("∇T, A-part".to_string(), Verdict::from_witness(series_mismatch(&nt_a, &one, order))),
        ("∇A, T-part".to_string(), Verdict::from_witness(series_mismatch(&na_t, &zero, order))),
        ("∇A, A-part".to_string(), Verdict::from_witness(series_mismatch(&na_a, &zero, order))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_terms() {
        let f = m1vec_connection(6, 6).unwrap();
        assert_eq!(f.terms.len(), 3);
        // (1/12)(3u² du - 54 v dv)
        assert_eq!(f.terms[0].a, CommPoly::parse("1/4 u^2", &UV).unwrap());
        assert_eq!(f.terms[0].b, CommPoly::parse("-9/2 v", &UV).unwrap());
        // 3/2! · (u/20) · 3v du
        assert_eq!(f.terms[1].a, CommPoly::parse("9/40 u v", &UV).unwrap());
        assert_eq!(f.terms[1].b, CommPoly::parse("-3/20 u^2", &UV).unwrap());
    }

    #[test]
    fn pullback_and_weights() {
        let f = m1vec_connection(8, 14).unwrap();
        assert!(qdr_homogeneity_check(&f).passed());
        let v = qdr_pullback_check(&f, 20);
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn corrupted_coefficient_fails() {
        let mut f = m1vec_connection(6, 8).unwrap();
        f.terms[2].a = f.terms[2].a.scale(&Rational::from_int(2));
        let v = qdr_pullback_check(&f, 12);
        assert!(v.witness.unwrap().starts_with("delta_6"));
        // a scalar multiple stays homogeneous
        assert!(qdr_homogeneity_check(&f).passed());
    }

    #[test]
    fn frame_change() {
        for m in 1..5 {
            for (s, c) in [(Rational::from_int(2), Rational::ZERO), (Rational::new(3, 2), Rational::new(1, 3)), (Rational::from_int(-1), Rational::from_int(5))] {
                let v = frame_change_check(m, 8, &s, &c);
                assert!(v.passed(), "{v:?}");
            }
        }
        assert!(frame_change_check(0, 6, &Rational::from_int(2), &Rational::ZERO).passed());
        assert!(!frame_change_check(0, 6, &Rational::from_int(2), &Rational::ONE).passed());
    }

    #[test]
    fn gauss_manin() {
        assert!(nabla0_check(25).passed());
        assert!(!nabla0_with(10, 3).passed());
    }
}
