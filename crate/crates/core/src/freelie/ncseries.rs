//! Truncated noncommutative power series in two letters over a coefficient ring.

use std::fmt;

use rustc_hash::FxHashMap;

use super::word::{Word, A, T};
use crate::exactcore::{Coeff, Rational};

/// `Σ c_w w` over words of length at most `n`.
///
/// The coefficient window `ctx` is shared by every stored coefficient, so
/// truncation in the coefficient ring is tracked alongside word length.
#[derive(Clone)]
pub struct NCSeries<C: Coeff> {
    n: usize,
    ctx: C::Ctx,
    terms: FxHashMap<Word, C>,
}

/// Rational noncommutative series.
pub type QNC = NCSeries<Rational>;

impl<C: Coeff> NCSeries<C> {
    pub fn zero(n: usize, ctx: C::Ctx) -> Self {
        NCSeries { n, ctx, terms: FxHashMap::default() }
    }

    pub fn one(n: usize, ctx: C::Ctx) -> Self {
        let mut s = Self::zero(n, ctx);
        let c = C::one_in(&s.ctx);
        s.add_term(Word::EMPTY, c);
        s
    }

    pub fn word(w: Word, c: C, n: usize, ctx: C::Ctx) -> Self {
        let mut s = Self::zero(n, ctx);
        s.add_term(w, c);
        s
    }

    pub fn letter(l: u8, n: usize, ctx: C::Ctx) -> Self {
        let c = C::one_in(&ctx);
        Self::word(Word::letter(l), c, n, ctx)
    }

    pub fn t(n: usize, ctx: C::Ctx) -> Self {
        Self::letter(T, n, ctx)
    }

    pub fn a(n: usize, ctx: C::Ctx) -> Self {
        Self::letter(A, n, ctx)
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn coeff(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn coeff_or_zero(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    /// Terms sorted by length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (*w, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    fn fit(&self, c: C) -> C {
        if c.ctx() == self.ctx {
            c
        } else {
            c.restrict(&self.ctx)
        }
    }

    /// Add `c w`; words longer than the truncation degree are dropped.
    pub fn add_term(&mut self, w: Word, c: C) {
        if w.len() > self.n || c.is_zero() {
            return;
        }
        let c = self.fit(c);
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign_c(&c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Reshape to a common coefficient window (used before adding).
    fn with_ctx(&self, ctx: &C::Ctx, n: usize) -> Self {
        let mut out = Self::zero(n, ctx.clone());
        for (w, c) in &self.terms {
            if w.len() <= n {
                let c = if c.ctx() == *ctx { c.clone() } else { c.restrict(ctx) };
                if !c.is_zero() {
                    out.terms.insert(*w, c);
                }
            }
        }
        out
    }

    pub fn truncate(&self, n: usize) -> Self {
        self.with_ctx(&self.ctx, n.min(self.n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let ctx = C::meet(&self.ctx, &other.ctx);
        let n = self.n.min(other.n);
        let mut out = self.with_ctx(&ctx, n);
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_c())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.n, self.ctx.clone());
        }
        self.map_coeffs(|c| c.scale_c(r))
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale_c(&self, k: &C) -> Self {
        let ctx = C::mul_ctx(&self.ctx, &k.ctx());
        let mut out = Self::zero(self.n, ctx);
        for (w, c) in &self.terms {
            let p = c.mul_c(k);
            if !p.is_zero() {
                out.terms.insert(*w, p);
            }
        }
        out
    }

    /// Apply a coefficient map that keeps every coefficient in a common window.
    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let probe = f(&C::zero_in(&self.ctx));
        let mut out = Self::zero(self.n, probe.ctx());
        for (w, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(*w, out.fit(d));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n.min(other.n);
        let ctx = C::mul_ctx(&self.ctx, &other.ctx);
        let mut out = Self::zero(n, ctx);
        let mut by_len: Vec<Vec<(Word, &C)>> = vec![Vec::new(); n + 1];
        for (w, c) in &other.terms {
            if w.len() <= n {
                by_len[w.len()].push((*w, c));
            }
        }
        for (w1, c1) in &self.terms {
            if w1.len() > n {
                continue;
            }
            for bucket in &by_len[..=n - w1.len()] {
                for (w2, c2) in bucket {
                    let key = w1.concat(*w2);
                    match out.terms.get_mut(&key) {
                        Some(e) => e.add_mul_c(c1, c2),
                        None => {
                            out.terms.insert(key, c1.mul_c(c2));
                        }
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.ctx.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn constant_term(&self) -> C {
        self.coeff_or_zero(&Word::EMPTY)
    }

    /// Homogeneous component of word length `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.n, self.ctx.clone());
        for (w, c) in &self.terms {
            if w.len() == d {
                out.terms.insert(*w, c.clone());
            }
        }
        out
    }

    /// Smallest word length with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(w, _)| w.len()).min()
    }

    /// `exp(x)` for `x` with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs zero constant term");
        let mut acc = Self::one(self.n, self.ctx.clone());
        let mut term = acc.clone();
        for k in 1..=self.n {
            term = term.mul(self).scale(&Rational::new(1, k as i64));
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(x)` for `x` with constant term one.
    pub fn log(&self) -> Self {
        let one = Self::one(self.n, self.ctx.clone());
        let y = self.sub(&one);
        assert!(y.constant_term().is_zero(), "log needs constant term one");
        let mut acc = Self::zero(self.n, y.ctx.clone());
        let mut pow = one;
        for k in 1..=self.n {
            pow = pow.mul(&y);
            if pow.is_empty() {
                break;
            }
            let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            acc = acc.add(&pow.scale(&c));
        }
        acc
    }

    /// Inverse of a series with constant term one.
    pub fn inverse(&self) -> Self {
        let one = Self::one(self.n, self.ctx.clone());
        let y = self.sub(&one);
        assert!(y.constant_term().is_zero(), "inverse needs constant term one");
        let mut acc = one.clone();
        let mut pow = one;
        let minus_y = y.neg();
        for _ in 1..=self.n {
            pow = pow.mul(&minus_y);
            if pow.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        acc
    }

    /// `ad_x^k (y)`.
    pub fn ad_pow(&self, k: usize, y: &Self) -> Self {
        let mut r = y.clone();
        for _ in 0..k {
            r = self.bracket(&r);
        }
        r
    }

    /// Algebra homomorphism sending `T ↦ img_t`, `A ↦ img_a` (images without constant term).
    pub fn substitute(&self, img_t: &Self, img_a: &Self) -> Self {
        let n = self.n.min(img_t.n).min(img_a.n);
        let ctx = C::mul_ctx(&self.ctx, &C::meet(&img_t.ctx, &img_a.ctx));
        let mut out = Self::zero(n, ctx);
        let one = Self::one(n, C::meet(&img_t.ctx, &img_a.ctx));
        let mut cache: FxHashMap<Word, Self> = FxHashMap::default();
        cache.insert(Word::EMPTY, one);
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort();
        for w in words {
            let img = image_of(*w, img_t, img_a, &mut cache);
            out = out.add(&img.scale_c(&self.terms[w]));
        }
        out
    }

    /// Coefficientwise map into another ring.
    pub fn convert<D: Coeff>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> NCSeries<D> {
        let mut out = NCSeries::<D>::zero(self.n, ctx);
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    /// Swap the two letters.
    pub fn swap_letters(&self) -> Self {
        let mut out = Self::zero(self.n, self.ctx.clone());
        for (w, c) in &self.terms {
            out.terms.insert(w.swap_letters(), c.clone());
        }
        out
    }

    /// Render with the given letter names, sorted, using the ring's short format.
    pub fn render(&self, names: [&str; 2]) -> String {
        let t = self.sorted_terms();
        if t.is_empty() {
            return "0".to_string();
        }
        t.iter().map(|(w, c)| format!("({}) {}", c.render(), w.render(names))).collect::<Vec<_>>().join(" + ")
    }

    /// First (shortest, then lexicographically smallest) nonzero term, for witnesses.
    pub fn first_term(&self) -> Option<(Word, C)> {
        self.sorted_terms().into_iter().find(|(_, c)| !c.is_zero()).map(|(w, c)| (w, c.clone()))
    }
}

fn image_of<C: Coeff>(
    w: Word,
    img_t: &NCSeries<C>,
    img_a: &NCSeries<C>,
    cache: &mut FxHashMap<Word, NCSeries<C>>,
) -> NCSeries<C> {
    if let Some(s) = cache.get(&w) {
        return s.clone();
    }
    let head = w.prefix(w.len() - 1);
    let last = if w.at(w.len() - 1) == T { img_t } else { img_a };
    let s = image_of(head, img_t, img_a, cache).mul(last);
    cache.insert(w, s.clone());
    s
}

impl<C: Coeff> PartialEq for NCSeries<C> {
    /// Equal as truncated series: same degree bound and the same nonzero terms.
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let nz = |s: &Self| s.terms.iter().filter(|(_, c)| !c.is_zero()).count();
        if nz(self) != nz(other) {
            return false;
        }
        self.terms.iter().filter(|(_, c)| !c.is_zero()).all(|(w, c)| other.terms.get(w) == Some(c))
    }
}

impl<C: Coeff> fmt::Debug for NCSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.render(["T", "A"]), self.n + 1)
    }
}

impl QNC {
    pub fn from_terms(n: usize, terms: &[(&str, Rational)]) -> QNC {
        let mut s = QNC::zero(n, ());
        for (w, c) in terms {
            s.add_term(Word::parse(w).expect("word over T, A"), c.clone());
        }
        s
    }

    pub fn qt(n: usize) -> QNC {
        QNC::t(n, ())
    }

    pub fn qa(n: usize) -> QNC {
        QNC::a(n, ())
    }
}

impl fmt::Display for QNC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(["T", "A"]))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_qnc(n: usize, min_deg: usize) -> impl Strategy<Value = QNC> {
        prop::collection::vec((min_deg..=n, any::<u32>(), -5i64..=5), 0..12).prop_map(move |v| {
            let mut s = QNC::zero(n, ());
            for (len, bits, c) in v {
                let letters: Vec<u8> = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
                s.add_term(Word::from_letters(&letters), Rational::from_int(c));
            }
            s
        })
    }

    #[test]
    fn small_products() {
        let t = QNC::qt(4);
        let a = QNC::qa(4);
        let c = t.bracket(&a);
        assert_eq!(c, QNC::from_terms(4, &[("TA", Rational::ONE), ("AT", -Rational::ONE)]));
        assert_eq!(t.pow(5), QNC::zero(4, ()));
    }

    #[test]
    fn exp_of_letter() {
        let e = QNC::qt(6).exp();
        for k in 0..=6u32 {
            let w = Word::from_letters(&vec![T; k as usize]);
            assert_eq!(e.coeff_or_zero(&w), Rational::ONE / crate::exactcore::factorial(k));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn exp_log_inverse(x in arb_qnc(6, 1)) {
            prop_assert_eq!(x.exp().log(), x.clone());
            let g = x.exp();
            prop_assert_eq!(g.mul(&g.inverse()), QNC::one(6, ()));
        }

        #[test]
        fn mul_associative(x in arb_qnc(5, 0), y in arb_qnc(5, 0), z in arb_qnc(5, 0)) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }

        #[test]
        fn jacobi(x in arb_qnc(6, 1), y in arb_qnc(6, 1), z in arb_qnc(6, 1)) {
            let j = x.bracket(&y.bracket(&z))
                .add(&y.bracket(&z.bracket(&x)))
                .add(&z.bracket(&x.bracket(&y)));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn substitute_is_homomorphism(x in arb_qnc(5, 0), y in arb_qnc(5, 0), p in arb_qnc(5, 1), q in arb_qnc(5, 1)) {
            let lhs = x.mul(&y).substitute(&p, &q);
            let rhs = x.substitute(&p, &q).mul(&y.substitute(&p, &q));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
