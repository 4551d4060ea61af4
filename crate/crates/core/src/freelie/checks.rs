//! Identity checks on the Lie side: residues, `N_q`, the cylinder relation,
//! the exponential lemma, BCH, group-like ODE solutions and the Bernoulli link.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::derivation::{
    ad_power, delta2m, epsilon, nq, nq_with, nw, operator_apply, residues, Derivation, QDerivation,
};
use super::hopf::{grouplike_defect, is_grouplike};
use super::lr::{lr_apply, nc_witness, random_derivation, random_lie};
use super::lyndon::{LieElement, LyndonBasis, NotLie};
use super::ncseries::{NCSeries, QNC};
use crate::exactcore::hpoly::h_poly;
use crate::exactcore::linalg::rank;
use crate::exactcore::{bernoulli_table, factorial, Rational, Series, Window};
use crate::report::Verdict;

fn zero_or(label: &str, diff: &QNC) -> Verdict {
    match nc_witness(diff) {
        None => Verdict::pass(),
        Some(w) => Verdict::fail(format!("{label}: {w}")),
    }
}

/// `log(e^U e^V)`, certified to be a Lie element.
pub fn bch(u: &QNC, v: &QNC, basis: &LyndonBasis) -> Result<LieElement, NotLie<Rational>> {
    LieElement::from_series(&u.exp().mul(&v.exp()).log(), basis)
}

pub fn bch_check(n: usize) -> Verdict {
    let basis = LyndonBasis::new(n);
    let t = QNC::qt(n);
    let a = QNC::qa(n);
    let z = match bch(&t, &a, &basis) {
        Ok(z) => z.to_series(&basis),
        Err(e) => return Verdict::fail(format!("log(e^T e^A) not Lie at {}", e.word)),
    };
    let ta = t.bracket(&a);
    let deg3 = t.bracket(&ta).add(&a.bracket(&a.bracket(&t))).scale(&Rational::new(1, 12));
    let tz = bch(&t, &QNC::zero(n, ()), &basis).map(|l| l.to_series(&basis));
    Verdict::all([
        ("bch(T,0)".to_string(), zero_or("bch(T,0) - T", &tz.unwrap().sub(&t))),
        ("degree 1".to_string(), zero_or("degree 1", &z.degree_part(1).sub(&t.add(&a)))),
        ("degree 2".to_string(), zero_or("degree 2", &z.degree_part(2).sub(&ta.scale(&Rational::new(1, 2))))),
        ("degree 3".to_string(), zero_or("degree 3", &z.degree_part(3).sub(&deg3.truncate(n)))),
    ])
}

/// `R₀ + R₁ + R_∞ = 0` and the low-degree shape of `R₀`.
pub fn residues_check(n: usize) -> Verdict {
    let (r0, r1, rinf) = residues(n);
    let a = QNC::qa(n);
    Verdict::all([
        ("sum".to_string(), zero_or("R0 + R1 + Rinf", &r0.add(&r1).add(&rinf))),
        ("R0 degree 1".to_string(), zero_or("R0 degree 1", &r0.degree_part(1).sub(&a))),
        ("R0 degree 2".to_string(), zero_or("R0 degree 2", &r0.degree_part(2).add(&r1.scale(&Rational::new(1, 2)).truncate(2)))),
    ])
}

/// `N_q(R₀) = N_q(R₁) = N_q(R_∞) = 0`, with `B₄` optionally corrupted.
pub fn nq_annihilation_check(n: usize, corrupt_b4: bool) -> Verdict {
    let table = bernoulli_table(n + 1);
    let q = nq_with(n, |k| {
        if corrupt_b4 && k == 4 {
            Rational::new(1, 7)
        } else {
            table[k as usize].clone()
        }
    });
    let (r0, r1, rinf) = residues(n);
    Verdict::all([
        ("N_q(R0)".to_string(), zero_or("N_q(R0)", &q.apply(&r0))),
        ("N_q(R1)".to_string(), zero_or("N_q(R1)", &q.apply(&r1))),
        ("N_q(Rinf)".to_string(), zero_or("N_q(Rinf)", &q.apply(&rinf))),
    ])
}

/// Coefficients of `¼ T²/sinh²(T/2)` from a direct series inversion.
pub fn quarter_t2_over_sinh2(n: usize) -> Vec<Rational> {
    let order = n as i32 + 1;
    // sinh(x/2)/(x/2) = Σ (x/2)^{2k} / (2k+1)!
    let mut s = Series::zero(0, order);
    for k in (0..order).step_by(2) {
        s.set(k, Rational::ONE / (factorial(k as u32 + 1) * Rational::from_int(1i64 << k)));
    }
    let inv = s.mul(&s).inverse().expect("unit constant term");
    (0..order).map(|k| inv.coeff(k)).collect()
}

pub fn nq_t_check(n: usize) -> Verdict {
    let q = nq(n);
    let expect = operator_apply(&quarter_t2_over_sinh2(n), &QNC::qa(n));
    zero_or("N_q(T) - (T^2/4sinh^2(T/2))·A", &q.on_t().sub(&expect))
}

/// `[N_w, N_q] = 0` through degree `n`, plus `δ₂ₘ([T,A]) = 0` for `2m ≤ n`.
pub fn commuting_residues_check(n: usize) -> Verdict {
    let c = nw(n).bracket(&nq(n));
    let mut vs = vec![
        ("[N_w,N_q](T)".to_string(), zero_or("[N_w,N_q](T)", c.on_t())),
        ("[N_w,N_q](A)".to_string(), zero_or("[N_w,N_q](A)", c.on_a())),
    ];
    for m in 0..=n / 2 {
        vs.push((format!("delta_{}([T,A])", 2 * m), zero_or("der0", &delta2m(m, n).der0_defect())));
    }
    Verdict::all(vs)
}

/// `T ∂/∂A`, the raising operator of the `sl₂` action.
pub fn raising(n: usize) -> QDerivation {
    QDerivation::new(QNC::zero(n, ()), QNC::qt(n))
}

/// `[A∂/∂T, δ₂ₘ]`, which vanishes only for `m ≤ 1`.
pub fn lowering_commutator(m: usize, n: usize) -> QDerivation {
    epsilon(n).bracket(&delta2m(m, n))
}

/// `δ₂ₘ ∈ Der⁰` for `m ≤ max_m` and `[T∂/∂A, δ₂ₘ] = 0` for `1 ≤ m ≤ max_m`.
/// `flip_sign` negates one summand of the `∂/∂A` part (negative control).
pub fn highest_weight_and_der0_check(max_m: usize, n: usize, flip_sign: bool) -> Verdict {
    let e = raising(n);
    let mut vs = Vec::new();
    for m in 0..=max_m {
        let mut d = delta2m(m, n);
        if flip_sign && m >= 1 {
            let x = ad_power(2 * m - 1, &QNC::qa(n));
            let inner = QDerivation::inner(&x);
            let a = QNC::qa(n);
            // replace the k = 0 summand [T^{2m-1}·A, A] by its negative
            let k0 = x.bracket(&a);
            d = QDerivation::new(inner.on_t().clone(), d.on_a().sub(&k0.scale(&Rational::from_int(2))));
        }
        vs.push((format!("der0 m={m}"), zero_or(&format!("delta_{}([T,A])", 2 * m), &d.der0_defect())));
        if m >= 1 {
            let c = e.bracket(&d);
            vs.push((format!("highest weight m={m}"), zero_or("[T d/dA, delta](T)", c.on_t())));
            vs.push((format!("highest weight m={m} (A)"), zero_or("[T d/dA, delta](A)", c.on_a())));
        }
    }
    Verdict::all(vs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderVariant {
    Exact,
    /// Replace `R_∞` by `-R₀` (negative control).
    WrongInfinity,
}

/// Cylinder relation, the conjugation identity and the solution `e^U = e^{λR₀} e^{-T}`.
pub fn cylinder_check(n: usize, lambda: &Rational, variant: CylinderVariant) -> Verdict {
    let (r0, _, mut rinf) = residues(n);
    if variant == CylinderVariant::WrongInfinity {
        rinf = r0.neg();
    }
    let t = QNC::qt(n);
    let one = QNC::one(n, ());
    let e_t = t.exp();
    let e_mt = t.neg().exp();
    let e0 = r0.scale(lambda).exp();
    let einf = rinf.scale(lambda).exp();
    let lhs = e_t.mul(&e0).mul(&e_mt).mul(&einf);
    let conj = e_t.mul(&r0).mul(&e_mt).add(&rinf);
    let eu = e0.mul(&e_mt);
    let cyl = eu.inverse().mul(&e0).mul(&eu).mul(&einf);
    Verdict::all([
        ("relation".to_string(), zero_or("e^T e^{λR0} e^{-T} e^{λRinf} - 1", &lhs.sub(&one))),
        ("conjugation".to_string(), zero_or("e^T R0 e^{-T} + Rinf", &conj)),
        ("solution".to_string(), zero_or("e^{-U} e^{λR0} e^U e^{λRinf} - 1", &cyl.sub(&one))),
    ])
}

/// Both identities of the exponential lemma for one pair `(u, δ)`.
pub fn exp_ad_pair(u: &QNC, d: &QDerivation) -> Verdict {
    let n = u.max_degree().min(d.max_degree());
    let du = d.apply(u);
    let eu = u.exp();
    let emu = u.neg().exp();
    let de = d.apply(&eu);
    // (1 - e^{-ad u})/ad u = Σ (-1)^k ad_u^k/(k+1)!,  (e^{ad u} - 1)/ad u = Σ ad_u^k/(k+1)!
    let mut left = QNC::zero(n, ());
    let mut right = QNC::zero(n, ());
    let mut p = du.clone();
    for k in 0..=n {
        let c = Rational::ONE / factorial(k as u32 + 1);
        right = right.add(&p.scale(&c));
        left = left.add(&p.scale(&if k % 2 == 0 { c } else { -c }));
        p = u.bracket(&p);
        if p.is_zero() {
            break;
        }
    }
    Verdict::all([
        ("left".to_string(), zero_or("e^{-u} δ(e^u)", &emu.mul(&de).sub(&left))),
        ("right".to_string(), zero_or("δ(e^u) e^{-u}", &de.mul(&emu).sub(&right))),
        ("lazy".to_string(), zero_or("apply_exp", &d.apply_exp(u).sub(&de))),
    ])
}

/// The exponential lemma on fixed and seeded random inputs.
pub fn exp_ad_lemma_check(n: usize, trials: usize, seed: u64) -> Verdict {
    let basis = LyndonBasis::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vs = vec![
        ("u=T, N_q".to_string(), exp_ad_pair(&QNC::qt(n), &nq(n))),
        ("u=0".to_string(), exp_ad_pair(&QNC::zero(n, ()), &nq(n))),
        ("u=A, delta_0".to_string(), exp_ad_pair(&QNC::qa(n), &delta2m(0, n))),
    ];
    for i in 0..trials {
        let u = random_lie(&mut rng, &basis, n, 3, 3);
        let d = random_derivation(&mut rng, &basis, n, 3);
        vs.push((format!("trial {i}"), exp_ad_pair(&u, &d)));
    }
    Verdict::all(vs)
}

/// `N_q(e^{-T}) = e^{-T} R_∞`.
pub fn nq_exp_minus_t_check(n: usize) -> Verdict {
    let (_, _, rinf) = residues(n);
    let e = QNC::qt(n).neg().exp();
    zero_or("N_q(e^{-T}) - e^{-T} Rinf", &nq(n).apply(&e).sub(&e.mul(&rinf)))
}

/// `2 δ_{2a}(T^{2b}·A) = h_{a,b}(x,y) ∘ (A, A)` for `1 ≤ a+b ≤ max_n`.
pub fn delta_h_link_check(max_n: usize, n: usize) -> Verdict {
    let a = QNC::qa(n);
    let mut vs = Vec::new();
    for s in 1..=max_n {
        for ai in 0..=s {
            let b = s - ai;
            let lhs = delta2m(ai, n).apply(&ad_power(2 * b, &a)).scale(&Rational::from_int(2));
            let rhs = lr_apply(&h_poly(ai as u32, b as u32), &a, &a);
            vs.push((format!("(a,b)=({ai},{b})"), zero_or("difference", &lhs.sub(&rhs))));
        }
    }
    Verdict::all(vs)
}

/// Rank of `{[T^i·A, T^j·A] : i > j ≥ 0, i + j = k}` in Lyndon coordinates.
pub fn bracket_basis_rank(k: usize, n: usize) -> usize {
    assert!(k + 2 <= n);
    let basis = LyndonBasis::new(k + 2);
    let a = QNC::qa(k + 2);
    let lyndon = basis.words_of_degree(k + 2);
    let rows: Vec<Vec<Rational>> = (0..=k)
        .filter(|&j| k - j > j)
        .map(|j| {
            let x = ad_power(k - j, &a).bracket(&ad_power(j, &a));
            let l = LieElement::from_series(&x, &basis).expect("bracket is Lie");
            lyndon.iter().map(|w| l.coord(w)).collect()
        })
        .collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

pub fn bracket_rank_check(max_k: usize) -> Verdict {
    Verdict::all((1..=max_k).map(|k| {
        let r = bracket_basis_rank(k, k + 2);
        let v = if r == (k + 1) / 2 {
            Verdict::pass()
        } else {
            Verdict::fail(format!("rank {r}, expected {}", (k + 1) / 2))
        };
        (format!("n={k}"), v)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdePath {
    /// `A(t) = T`.
    Constant,
    /// `A(t) = T + t A`.
    Linear,
    /// `A(t) = TA`, not primitive (negative control).
    NonPrimitive,
}

/// Picard solution of `X' = A(t) X`, `X(0) = 1`, with exact polynomial coefficients in `t`.
pub fn grouplike_ode_solution(n: usize, path: OdePath) -> NCSeries<Series> {
    let window = Window { lo: 0, order: 2 * n as i32 + 2 };
    let tpow = |k: i32| Series::monomial(k, Rational::ONE, window.order);
    let one_c = tpow(0);
    let lift = |x: &QNC, c: &Series| -> NCSeries<Series> { x.convert(window, |r| c.scale(r)) };
    let t = QNC::qt(n);
    let a = QNC::qa(n);
    let coef = match path {
        OdePath::Constant => lift(&t, &one_c),
        OdePath::Linear => lift(&t, &one_c).add(&lift(&a, &tpow(1))),
        OdePath::NonPrimitive => lift(&t.mul(&a), &one_c),
    };
    let one = NCSeries::one(n, window);
    let integrate = |s: &Series| {
        let mut out = Series::zero(0, window.order);
        for (k, c) in s.terms() {
            if k + 1 < window.order {
                out.set(k + 1, c / Rational::from_int(k as i64 + 1));
            }
        }
        out
    };
    let mut x = one.clone();
    for _ in 0..n {
        x = one.add(&coef.mul(&x).map_coeffs(integrate));
    }
    x
}

pub fn grouplike_ode_check(n: usize, path: OdePath) -> Verdict {
    let x = grouplike_ode_solution(n, path);
    if is_grouplike(&x) {
        return Verdict::pass();
    }
    let d = grouplike_defect(&x);
    let w = d.first_term().map(|((l, r), c)| format!("{l} ⊗ {r}: {c}")).unwrap_or_default();
    Verdict::fail(format!("not group-like: {w}"))
}

/// Image of a series in `X₀, X₁` (letters `T`, `A` read as `X₀`, `X₁`) under
/// `X₀ ↦ R₀`, `X₁ ↦ R₁`; `X_∞ = -X₀ - X₁` maps to `R_∞` because the residues sum to zero.
pub fn substitute_kz(s: &QNC) -> QNC {
    let (r0, r1, _) = residues(s.max_degree());
    s.substitute(&r0, &r1)
}

pub fn substitute_kz_check(n: usize) -> Verdict {
    let (r0, r1, rinf) = residues(n);
    let x0 = QNC::qt(n);
    let x1 = QNC::qa(n);
    let xinf = x0.add(&x1).neg();
    Verdict::all([
        ("X1".to_string(), zero_or("image of X1 - [T,A]", &substitute_kz(&x1).sub(&r1))),
        ("Xinf".to_string(), zero_or("image of Xinf - Rinf", &substitute_kz(&xinf).sub(&rinf))),
        ("sum".to_string(), zero_or("R0 + R1 + Rinf", &r0.add(&r1).add(&rinf))),
        (
            "bracket".to_string(),
            zero_or("image of [X0,X1] - [R0,R1]", &substitute_kz(&x0.bracket(&x1)).sub(&r0.bracket(&r1))),
        ),
    ])
}

/// Conjugating `δ₂ₘ` by `T ↦ λT, A ↦ λ⁻¹A` multiplies it by `λ^{2m-2}`.
pub fn rescaling_check(max_m: usize, n: usize, lambdas: &[Rational]) -> Verdict {
    let mut vs = Vec::new();
    for l in lambdas {
        let li = l.recip();
        let sigma = |x: &QNC| x.substitute(&QNC::qt(n).scale(l), &QNC::qa(n).scale(&li));
        for m in 0..=max_m {
            let d = delta2m(m, n);
            let conj_t = sigma(d.on_t()).scale(&li);
            let conj_a = sigma(d.on_a()).scale(l);
            let k = l.pow(2 * m as i32 - 2);
            let label = format!("λ={l}, m={m}");
            vs.push((label.clone(), zero_or("T", &conj_t.sub(&d.on_t().scale(&k)))));
            vs.push((label + " A", zero_or("A", &conj_a.sub(&d.on_a().scale(&k)))));
        }
    }
    Verdict::all(vs)
}

/// Generic helper: a derivation's values vanish.
pub fn derivation_zero(label: &str, d: &Derivation<Rational>) -> Verdict {
    Verdict::all([
        (format!("{label}(T)"), zero_or(label, d.on_t())),
        (format!("{label}(A)"), zero_or(label, d.on_a())),
    ])
}
