//! Derivations of the free Lie algebra, stored by their values on `T` and `A`.

use super::ncseries::{NCSeries, QNC};
use super::word::{Word, A, T};
use crate::exactcore::{Coeff, Rational};

/// A derivation `D` with `D(T) = on_t`, `D(A) = on_a`.
///
/// Inner derivations remember their generator so brackets with them reduce to
/// a single application: `[ad_x, D] = -ad_{D(x)}`.
#[derive(Clone, Debug)]
pub struct Derivation<C: Coeff> {
    n: usize,
    on_t: NCSeries<C>,
    on_a: NCSeries<C>,
    inner: Option<NCSeries<C>>,
}

pub type QDerivation = Derivation<Rational>;

impl<C: Coeff> Derivation<C> {
    pub fn new(on_t: NCSeries<C>, on_a: NCSeries<C>) -> Self {
        let n = on_t.max_degree().min(on_a.max_degree());
        Derivation { n, on_t: on_t.truncate(n), on_a: on_a.truncate(n), inner: None }
    }

    pub fn zero(n: usize, ctx: C::Ctx) -> Self {
        let z = NCSeries::zero(n, ctx);
        Derivation { n, on_t: z.clone(), on_a: z.clone(), inner: Some(z) }
    }

    /// `ad_x`.
    pub fn inner(x: &NCSeries<C>) -> Self {
        let n = x.max_degree();
        let t = NCSeries::t(n, x.ctx().clone());
        let a = NCSeries::a(n, x.ctx().clone());
        Derivation { n, on_t: x.bracket(&t), on_a: x.bracket(&a), inner: Some(x.clone()) }
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn on_t(&self) -> &NCSeries<C> {
        &self.on_t
    }

    pub fn on_a(&self) -> &NCSeries<C> {
        &self.on_a
    }

    pub fn value(&self, letter: u8) -> &NCSeries<C> {
        if letter == T {
            &self.on_t
        } else {
            &self.on_a
        }
    }

    /// The generator `x` if this derivation was built as `ad_x`.
    pub fn inner_element(&self) -> Option<&NCSeries<C>> {
        self.inner.as_ref()
    }

    pub fn truncate(&self, n: usize) -> Self {
        Derivation {
            n: n.min(self.n),
            on_t: self.on_t.truncate(n),
            on_a: self.on_a.truncate(n),
            inner: self.inner.as_ref().map(|x| x.truncate(n)),
        }
    }

    /// Leibniz extension to the free associative algebra.
    pub fn apply(&self, x: &NCSeries<C>) -> NCSeries<C> {
        if let Some(g) = &self.inner {
            return g.bracket(x).truncate(self.n.min(x.max_degree()));
        }
        let n = self.n.min(x.max_degree());
        let vctx = C::meet(self.on_t.ctx(), self.on_a.ctx());
        let mut out = NCSeries::zero(n, C::mul_ctx(x.ctx(), &vctx));
        let vt: Vec<(Word, C)> = self.on_t.terms().map(|(w, c)| (*w, c.clone())).collect();
        let va: Vec<(Word, C)> = self.on_a.terms().map(|(w, c)| (*w, c.clone())).collect();
        for (w, c) in x.terms() {
            let len = w.len();
            for i in 0..len {
                let img = if w.at(i) == T { &vt } else { &va };
                let pre = w.prefix(i);
                let suf = w.suffix(i + 1);
                for (v, d) in img {
                    if len - 1 + v.len() > n {
                        continue;
                    }
                    out.add_term(pre.concat(*v).concat(suf), c.mul_c(d));
                }
            }
        }
        out
    }

    /// `D(e^u)` computed through `e^u · ((1 - exp(-ad_u))/ad_u)(D(u))`.
    pub fn apply_exp(&self, u: &NCSeries<C>) -> NCSeries<C> {
        let du = self.apply(u);
        let n = du.max_degree();
        let mut term = du.clone();
        let mut acc = du;
        let mut k: i64 = 1;
        // Σ_{k≥0} (-1)^k ad_u^k / (k+1)!
        while !term.is_zero() && (k as usize) <= n {
            term = u.bracket(&term).scale(&Rational::new(-1, k + 1));
            acc = acc.add(&term);
            k += 1;
        }
        u.exp().mul(&acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let inner = match (&self.inner, &other.inner) {
            (Some(x), Some(y)) => Some(x.add(y)),
            _ => None,
        };
        let on_t = self.on_t.add(&other.on_t);
        let on_a = self.on_a.add(&other.on_a);
        Derivation { n: on_t.max_degree().min(on_a.max_degree()), on_t, on_a, inner }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::ONE)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Derivation {
            n: self.n,
            on_t: self.on_t.scale(r),
            on_a: self.on_a.scale(r),
            inner: self.inner.as_ref().map(|x| x.scale(r)),
        }
    }

    pub fn scale_c(&self, k: &C) -> Self {
        Derivation {
            n: self.n,
            on_t: self.on_t.scale_c(k),
            on_a: self.on_a.scale_c(k),
            inner: self.inner.as_ref().map(|x| x.scale_c(k)),
        }
    }

    /// Commutator `D1 ∘ D2 - D2 ∘ D1`.
    pub fn bracket(&self, other: &Self) -> Self {
        match (&self.inner, &other.inner) {
            (Some(x), Some(y)) => Derivation::inner(&x.bracket(y)),
            (Some(x), None) => Derivation::inner(&other.apply(x)).neg(),
            (None, Some(y)) => Derivation::inner(&self.apply(y)),
            (None, None) => self.bracket_general(other),
        }
    }

    /// Commutator evaluated on the generators, without inner shortcuts.
    pub fn bracket_general(&self, other: &Self) -> Self {
        let on_t = self.apply(&other.on_t).sub(&other.apply(&self.on_t));
        let on_a = self.apply(&other.on_a).sub(&other.apply(&self.on_a));
        Derivation::new(on_t, on_a)
    }

    /// `D([T, A])`; zero exactly for members of `Der⁰`.
    pub fn der0_defect(&self) -> NCSeries<C> {
        let ctx = self.on_t.ctx().clone();
        let t = NCSeries::t(self.n, ctx.clone());
        let a = NCSeries::a(self.n, ctx);
        self.on_t.bracket(&a).add(&t.bracket(&self.on_a))
    }

    pub fn is_zero(&self) -> bool {
        self.on_t.is_zero() && self.on_a.is_zero()
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Derivation {
            n: self.n,
            on_t: self.on_t.map_coeffs(&f),
            on_a: self.on_a.map_coeffs(&f),
            inner: self.inner.as_ref().map(|x| x.map_coeffs(&f)),
        }
    }
}

impl<C: Coeff> PartialEq for Derivation<C> {
    fn eq(&self, other: &Self) -> bool {
        self.on_t == other.on_t && self.on_a == other.on_a
    }
}

impl QDerivation {
    pub fn convert<D: Coeff>(&self, ctx: D::Ctx) -> Derivation<D> {
        let f = |r: &Rational| D::from_rational_in(r, &ctx);
        Derivation {
            n: self.n,
            on_t: self.on_t.convert(ctx.clone(), f),
            on_a: self.on_a.convert(ctx.clone(), f),
            inner: self.inner.as_ref().map(|x| x.convert(ctx.clone(), f)),
        }
    }
}

/// `ad_T^k(x)`, written `T^k · x`.
pub fn ad_power<C: Coeff>(k: usize, x: &NCSeries<C>) -> NCSeries<C> {
    let t = NCSeries::t(x.max_degree(), x.ctx().clone());
    t.ad_pow(k, x)
}

/// `f(ad_T)(x)` for `f = Σ c_k T^k`.
pub fn operator_apply(coeffs: &[Rational], x: &QNC) -> QNC {
    let t = QNC::qt(x.max_degree());
    let mut acc = QNC::zero(x.max_degree(), ());
    let mut cur = x.clone();
    for c in coeffs {
        if cur.is_zero() {
            break;
        }
        acc = acc.add(&cur.scale(c));
        cur = t.bracket(&cur);
    }
    acc
}

/// `A ∂/∂T`.
pub fn epsilon(n: usize) -> QDerivation {
    QDerivation::new(QNC::qa(n), QNC::zero(n, ()))
}

/// `Σ_{j+k=p, j>k>0} (-1)^j [T^j·A, T^k·A]`, or over all `j,k > 0` when `full`.
pub fn alternating_brackets(p: usize, n: usize, full: bool) -> QNC {
    let a = QNC::qa(n);
    let powers: Vec<QNC> = (0..=p).map(|k| ad_power(k, &a)).collect();
    let mut acc = QNC::zero(n, ());
    for j in 1..p {
        let k = p - j;
        if !full && j <= k {
            continue;
        }
        let b = powers[j].bracket(&powers[k]);
        acc = if j % 2 == 0 { acc.add(&b) } else { acc.sub(&b) };
    }
    acc
}

/// The outer piece `X ∂/∂A` with `X = Σ_{j>k>0, j+k=2m+1} (-1)^j [T^j·A, T^k·A]`.
pub fn psi_derivation(m: usize, n: usize) -> QDerivation {
    QDerivation::new(QNC::zero(n, ()), alternating_brackets(2 * m + 1, n, false))
}

/// `δ₂ₘ`: `-A ∂/∂T` for `m = 0`, otherwise `ad_x - Σ_{j>k>0} (-1)^j [T^j·A, T^k·A] ∂/∂A`
/// with `x = T^{2m-1}·A`.
pub fn delta2m(m: usize, n: usize) -> QDerivation {
    if m == 0 {
        return epsilon(n).neg();
    }
    let x = ad_power(2 * m - 1, &QNC::qa(n));
    let inner = QDerivation::inner(&x);
    let corr = alternating_brackets(2 * m - 1, n, false);
    QDerivation::new(inner.on_t.clone(), inner.on_a.sub(&corr))
}

/// `N_q = Σ_{2m+1 ≤ n} (2m-1) B_{2m}/(2m)! δ₂ₘ` with Bernoulli numbers from `bern`.
pub fn nq_with(n: usize, bern: impl Fn(u32) -> Rational) -> QDerivation {
    let mut acc = QDerivation::new(QNC::zero(n, ()), QNC::zero(n, ()));
    let mut m = 0;
    while 2 * m + 1 <= n.max(1) {
        let c = Rational::from_int(2 * m as i64 - 1) * bern(2 * m as u32)
            / crate::exactcore::factorial(2 * m as u32);
        acc = acc.add(&delta2m(m, n).scale(&c));
        m += 1;
    }
    acc
}

pub fn nq(n: usize) -> QDerivation {
    let table = crate::exactcore::bernoulli_table(n + 1);
    nq_with(n, |k| table[k as usize].clone())
}

/// `N_w = ad_{[T, A]}`.
pub fn nw(n: usize) -> QDerivation {
    QDerivation::inner(&QNC::qt(n).bracket(&QNC::qa(n)))
}

/// Residues `(R₀, R₁, R_∞)` of the nodal-cubic restriction.
pub fn residues(n: usize) -> (QNC, QNC, QNC) {
    let b = crate::exactcore::bernoulli_table(n + 1);
    let r0: Vec<Rational> =
        (0..=n).map(|k| &b[k] / crate::exactcore::factorial(k as u32)).collect();
    // T/(e^{-T}-1) = -Σ B_k (-T)^k / k!
    let rinf: Vec<Rational> = r0
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { -c } else { c.clone() })
        .collect();
    let a = QNC::qa(n);
    let r1 = QNC::qt(n).bracket(&a);
    (operator_apply(&r0, &a), r1, operator_apply(&rinf, &a))
}

/// Word-level letter of a generator, for callers building values by hand.
pub fn generator<C: Coeff>(letter: u8, n: usize, ctx: C::Ctx) -> NCSeries<C> {
    debug_assert!(letter == T || letter == A);
    NCSeries::letter(letter, n, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::ncseries::tests::arb_qnc;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn ad_power_examples() {
        let a = QNC::qa(5);
        let t = QNC::qt(5);
        assert_eq!(ad_power(0, &a), a);
        assert_eq!(ad_power(1, &a), t.bracket(&a));
        assert_eq!(ad_power(2, &a), t.bracket(&t.bracket(&a)));
    }

    #[test]
    fn delta_values() {
        let n = 6;
        let t = QNC::qt(n);
        let a = QNC::qa(n);
        let ta = t.bracket(&a);
        let d0 = delta2m(0, n);
        assert_eq!(d0.on_t(), &a.neg());
        assert!(d0.on_a().is_zero());
        assert!(d0.apply(&ta).is_zero());
        let d2 = delta2m(1, n);
        assert_eq!(d2.on_t(), &t.bracket(&ta).neg());
        assert_eq!(d2.on_a(), &ta.bracket(&a));
        assert_eq!(d2, QDerivation::inner(&ta));
        let w = t.mul(&a);
        assert_eq!(d2.apply(&w), d2.on_t().mul(&a).add(&t.mul(d2.on_a())));
    }

    #[test]
    fn brackets_of_derivations() {
        let n = 6;
        let d0 = delta2m(0, n);
        assert!(d0.bracket(&d0).is_zero());
        let nw = nw(n);
        assert!(nw.bracket(&nw).is_zero());
        let d2 = delta2m(1, n).truncate(4);
        assert!(d0.truncate(4).bracket(&d2).on_t().is_zero());
    }

    #[test]
    fn nq_low_coefficients() {
        let n = 5;
        let q = nq(n);
        let expect = delta2m(0, n)
            .neg()
            .add(&delta2m(1, n).scale(&r(1, 12)))
            .add(&delta2m(2, n).scale(&r(3 * -1, 30 * 24)));
        assert_eq!(q, expect);
        assert!(q.der0_defect().is_zero());
    }

    #[test]
    fn residue_low_degrees() {
        let (r0, r1, rinf) = residues(6);
        assert_eq!(r0.degree_part(1), QNC::qa(6));
        assert_eq!(r0.degree_part(2), r1.scale(&r(-1, 2)));
        assert!(r0.add(&r1).add(&rinf).is_zero());
    }

    #[test]
    fn psi_two_forms_agree() {
        for m in 1..6 {
            let p = 2 * m + 1;
            let full = alternating_brackets(p, 12, true);
            let half = alternating_brackets(p, 12, false);
            assert_eq!(full, half.scale(&Rational::from_int(2)), "m = {m}");
        }
    }

    #[test]
    fn inner_fast_path_matches_general() {
        let n = 7;
        let x = ad_power(2, &QNC::qa(n)).add(&QNC::qt(n));
        let inner = QDerivation::inner(&x);
        for d in [delta2m(0, n), delta2m(2, n), psi_derivation(1, n), nq(n)] {
            assert_eq!(inner.bracket(&d), inner.bracket_general(&d));
            assert_eq!(d.bracket(&inner), d.bracket_general(&inner));
        }
    }

    fn arb_derivation(n: usize) -> impl Strategy<Value = QDerivation> {
        (arb_qnc(n, 1), arb_qnc(n, 1)).prop_map(|(t, a)| QDerivation::new(t, a))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn leibniz(d in arb_derivation(6), x in arb_qnc(6, 0), y in arb_qnc(6, 0)) {
            let lhs = d.apply(&x.mul(&y));
            let rhs = d.apply(&x).mul(&y).add(&x.mul(&d.apply(&y)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_acts_as_commutator(d1 in arb_derivation(6), d2 in arb_derivation(6), x in arb_qnc(6, 0)) {
            let lhs = d1.bracket(&d2).apply(&x);
            let rhs = d1.apply(&d2.apply(&x)).sub(&d2.apply(&d1.apply(&x)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exp_paths_agree(d in arb_derivation(6), u in arb_qnc(6, 1)) {
            prop_assert_eq!(d.apply_exp(&u), d.apply(&u.exp()));
        }
    }
}
