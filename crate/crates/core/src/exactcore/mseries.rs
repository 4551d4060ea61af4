//! Dense truncated multivariate Laurent series.

use std::fmt;

use num_complex::Complex64;

use super::coeff::Coeff;
use super::rational::Rational;

/// Per-variable window `[lo_i, order_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MWindow {
    pub lo: Vec<i32>,
    pub order: Vec<i32>,
}

impl MWindow {
    pub fn new(lo: Vec<i32>, order: Vec<i32>) -> MWindow {
        assert_eq!(lo.len(), order.len());
        let order = order.iter().zip(&lo).map(|(&o, &l)| o.max(l)).collect();
        MWindow { lo, order }
    }

    pub fn nvars(&self) -> usize {
        self.lo.len()
    }

    fn dims(&self) -> Vec<usize> {
        self.lo.iter().zip(&self.order).map(|(l, o)| (o - l) as usize).collect()
    }

    fn size(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn contains(&self, e: &[i32]) -> bool {
        e.iter().zip(self.lo.iter().zip(&self.order)).all(|(x, (l, o))| x >= l && x < o)
    }

    pub fn meet(&self, other: &MWindow) -> MWindow {
        MWindow::new(
            self.lo.iter().zip(&other.lo).map(|(a, b)| *a.min(b)).collect(),
            self.order.iter().zip(&other.order).map(|(a, b)| *a.min(b)).collect(),
        )
    }

    pub fn product(&self, other: &MWindow) -> MWindow {
        let n = self.nvars();
        MWindow::new(
            (0..n).map(|i| self.lo[i] + other.lo[i]).collect(),
            (0..n).map(|i| (self.order[i] + other.lo[i]).min(other.order[i] + self.lo[i])).collect(),
        )
    }
}

/// `Σ c_e x^e` over multi-indices `e` in a window.
#[derive(Clone)]
pub struct MSeries {
    window: MWindow,
    data: Vec<Rational>,
}

impl MSeries {
    pub fn zero(window: MWindow) -> MSeries {
        let n = window.size();
        MSeries { window, data: vec![Rational::ZERO; n] }
    }

    pub fn constant(c: Rational, window: MWindow) -> MSeries {
        let mut s = MSeries::zero(window);
        let e = vec![0; s.nvars()];
        if s.window.contains(&e) {
            s.set(&e, c);
        }
        s
    }

    pub fn monomial(e: &[i32], c: Rational, window: MWindow) -> MSeries {
        let mut s = MSeries::zero(window);
        if s.window.contains(e) {
            s.set(e, c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.window.nvars()
    }

    pub fn window(&self) -> &MWindow {
        &self.window
    }

    fn index(&self, e: &[i32]) -> usize {
        let mut idx = 0usize;
        for i in 0..self.nvars() {
            let d = (self.window.order[i] - self.window.lo[i]) as usize;
            idx = idx * d + (e[i] - self.window.lo[i]) as usize;
        }
        idx
    }

    fn exps(&self, mut idx: usize) -> Vec<i32> {
        let n = self.nvars();
        let mut e = vec![0; n];
        for i in (0..n).rev() {
            let d = (self.window.order[i] - self.window.lo[i]) as usize;
            e[i] = self.window.lo[i] + (idx % d) as i32;
            idx /= d;
        }
        e
    }

    /// Coefficient at `e`; zero below the window. Panics above the order.
    pub fn coeff(&self, e: &[i32]) -> Rational {
        for i in 0..self.nvars() {
            assert!(e[i] < self.window.order[i], "exponent {:?} beyond truncation {:?}", e, self.window.order);
            if e[i] < self.window.lo[i] {
                return Rational::ZERO;
            }
        }
        self.data[self.index(e)].clone()
    }

    pub fn set(&mut self, e: &[i32], c: Rational) {
        assert!(self.window.contains(e), "exponent {:?} outside window", e);
        let i = self.index(e);
        self.data[i] = c;
    }

    pub fn add_at(&mut self, e: &[i32], c: &Rational) {
        assert!(self.window.contains(e), "exponent {:?} outside window", e);
        let i = self.index(e);
        self.data[i] += c;
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> Vec<(Vec<i32>, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps(i), c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn reshape(&self, w: &MWindow) -> MSeries {
        if *w == self.window {
            return self.clone();
        }
        let mut out = MSeries::zero(w.clone());
        for (e, c) in self.terms() {
            if e.iter().zip(&w.order).all(|(x, o)| x < o) {
                out.set(&e, c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &MSeries) -> MSeries {
        let w = self.window.meet(&other.window);
        let mut out = self.reshape(&w);
        if other.window == w {
            for (a, b) in out.data.iter_mut().zip(&other.data) {
                *a += b;
            }
        } else {
            for (e, c) in other.terms() {
                if e.iter().zip(&w.order).all(|(x, o)| x < o) {
                    out.add_at(&e, c);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &MSeries) -> MSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MSeries {
        MSeries { window: self.window.clone(), data: self.data.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> MSeries {
        MSeries { window: self.window.clone(), data: self.data.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &MSeries) -> MSeries {
        let w = self.window.product(&other.window);
        let mut out = MSeries::zero(w.clone());
        let n = self.nvars();
        let at = self.terms();
        let bt = other.terms();
        'outer: for (ea, ca) in &at {
            for (eb, cb) in &bt {
                let mut e = [0i32; 8];
                let mut ok = true;
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                    if e[i] >= w.order[i] {
                        if i == 0 {
                            // terms are sorted by the first exponent
                            continue 'outer;
                        }
                        ok = false;
                        break;
                    }
                }
                if ok {
                    let idx = out.index(&e[..n]);
                    out.data[idx].add_mul(ca, cb);
                }
            }
        }
        out
    }

    /// Product with a polynomial given by its terms; exact wherever `self` is.
    pub fn mul_poly(&self, poly: &[(Vec<i32>, Rational)]) -> MSeries {
        let n = self.nvars();
        let shift: Vec<i32> = (0..n).map(|i| poly.iter().map(|(e, _)| e[i]).min().unwrap_or(0)).collect();
        let w = MWindow::new(
            (0..n).map(|i| self.window.lo[i] + shift[i]).collect(),
            (0..n).map(|i| self.window.order[i] + shift[i]).collect(),
        );
        let mut out = MSeries::zero(w);
        for (ea, ca) in self.terms() {
            for (eb, cb) in poly {
                let e: Vec<i32> = (0..n).map(|i| ea[i] + eb[i]).collect();
                if out.window.contains(&e) {
                    let idx = out.index(&e);
                    out.data[idx].add_mul(ca, cb);
                }
            }
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, var: usize) -> MSeries {
        let mut w = self.window.clone();
        w.lo[var] -= 1;
        w.order[var] -= 1;
        let mut out = MSeries::zero(w);
        for (mut e, c) in self.terms() {
            let k = e[var];
            if k != 0 {
                e[var] -= 1;
                out.set(&e, c * &Rational::from_int(k as i64));
            }
        }
        out
    }

    /// `x_i ∂/∂x_i`.
    pub fn theta(&self, var: usize) -> MSeries {
        let mut out = self.clone();
        for i in 0..out.data.len() {
            if !out.data[i].is_zero() {
                let k = out.exps(i)[var];
                out.data[i] *= Rational::from_int(k as i64);
            }
        }
        out
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &[i32]) -> MSeries {
        let w = MWindow::new(
            self.window.lo.iter().zip(e).map(|(a, b)| a + b).collect(),
            self.window.order.iter().zip(e).map(|(a, b)| a + b).collect(),
        );
        MSeries { window: w, data: self.data.clone() }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let mut t = Complex64::new(c.to_f64(), 0.0);
            for (xi, ei) in x.iter().zip(&e) {
                t *= xi.powi(*ei);
            }
            acc += t;
        }
        acc
    }

    /// Coefficient of `x_var^e`, as a series in the remaining variables.
    pub fn slice(&self, var: usize, e: i32) -> MSeries {
        let drop = |v: &[i32]| -> Vec<i32> {
            v.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, x)| *x).collect()
        };
        let mut out = MSeries::zero(MWindow::new(drop(&self.window.lo), drop(&self.window.order)));
        for (ex, c) in self.terms() {
            if ex[var] == e {
                out.set(&drop(&ex), c.clone());
            }
        }
        out
    }

    /// Re-index into a larger variable set: variable `i` becomes `positions[i]`.
    /// Terms outside `window` are dropped.
    pub fn embed(&self, positions: &[usize], window: MWindow) -> MSeries {
        let mut out = MSeries::zero(window);
        for (ex, c) in self.terms() {
            let mut e = vec![0; out.nvars()];
            for (i, p) in positions.iter().enumerate() {
                e[*p] = ex[i];
            }
            if out.window.contains(&e) {
                out.set(&e, c.clone());
            }
        }
        out
    }

    /// Nonzero terms with some exponent below `lo`.
    pub fn terms_below(&self, lo: &[i32]) -> Vec<(Vec<i32>, Rational)> {
        self.terms()
            .into_iter()
            .filter(|(e, _)| e.iter().zip(lo).any(|(x, l)| x < l))
            .map(|(e, c)| (e, c.clone()))
            .collect()
    }

    /// First nonzero term in lexicographic order, for witnesses.
    pub fn first_nonzero(&self) -> Option<(Vec<i32>, Rational)> {
        self.terms().into_iter().next().map(|(e, c)| (e, c.clone()))
    }
}

/// Equal orders and equal nonzero terms.
impl PartialEq for MSeries {
    fn eq(&self, other: &Self) -> bool {
        self.window.order == other.window.order && self.terms() == other.terms()
    }
}

impl fmt::Debug for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e:?}")?;
        }
        write!(f, " + O({:?})", self.window.order)
    }
}

impl Coeff for MSeries {
    type Ctx = MWindow;

    fn zero_in(ctx: &MWindow) -> Self {
        MSeries::zero(ctx.clone())
    }
    fn from_rational_in(r: &Rational, ctx: &MWindow) -> Self {
        let w = MWindow::new(ctx.lo.iter().map(|l| *l.min(&0)).collect(), ctx.order.clone());
        MSeries::constant(r.clone(), w)
    }
    fn ctx(&self) -> MWindow {
        self.window.clone()
    }
    fn is_zero(&self) -> bool {
        MSeries::is_zero(self)
    }
    fn add_assign_c(&mut self, other: &Self) {
        if self.window == other.window {
            for (a, b) in self.data.iter_mut().zip(&other.data) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = self.add(other);
        }
    }
    fn sub_assign_c(&mut self, other: &Self) {
        if self.window == other.window {
            for (a, b) in self.data.iter_mut().zip(&other.data) {
                if !b.is_zero() {
                    *a -= b;
                }
            }
        } else {
            *self = self.sub(other);
        }
    }
    fn mul_c(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn scale_c(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn meet(a: &MWindow, b: &MWindow) -> MWindow {
        a.meet(b)
    }
    fn mul_ctx(a: &MWindow, b: &MWindow) -> MWindow {
        a.product(b)
    }
    fn restrict(&self, ctx: &MWindow) -> Self {
        self.reshape(ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::series::Series;
    use proptest::prelude::*;

    fn w2(lo: [i32; 2], order: [i32; 2]) -> MWindow {
        MWindow::new(lo.to_vec(), order.to_vec())
    }

    #[test]
    fn product_window() {
        let a = MSeries::monomial(&[-1, 0], Rational::ONE, w2([-1, 0], [4, 5]));
        let b = MSeries::monomial(&[0, -1], Rational::ONE, w2([0, -1], [3, 5]));
        let p = a.mul(&b);
        assert_eq!(p.window(), &w2([-1, -1], [2, 4]));
        assert_eq!(p.coeff(&[-1, -1]), Rational::ONE);
    }

    #[test]
    fn partial_derivatives_commute() {
        let mut s = MSeries::zero(w2([-1, 0], [5, 5]));
        for i in -1..5 {
            for j in 0..5 {
                s.set(&[i, j], Rational::new((i * 7 + j * 3) as i64, (j + 2) as i64));
            }
        }
        assert_eq!(s.partial(0).partial(1), s.partial(1).partial(0));
    }

    proptest! {
        #[test]
        fn single_variable_agrees_with_series(a in proptest::collection::vec(-9i64..9, 6), b in proptest::collection::vec(-9i64..9, 7)) {
            let sa = Series::from_ints(-1, &a);
            let sb = Series::from_ints(0, &b);
            let mut ma = MSeries::zero(MWindow::new(vec![-1], vec![5]));
            let mut mb = MSeries::zero(MWindow::new(vec![0], vec![7]));
            for (i, c) in a.iter().enumerate() { ma.set(&[i as i32 - 1], Rational::from_int(*c)); }
            for (i, c) in b.iter().enumerate() { mb.set(&[i as i32], Rational::from_int(*c)); }
            let sp = sa.mul(&sb);
            let mp = ma.mul(&mb);
            prop_assert_eq!(mp.window().order[0], sp.order());
            for e in sp.lo()..sp.order() {
                prop_assert_eq!(mp.coeff(&[e]), sp.coeff(e));
            }
        }

        #[test]
        fn bivariate_associative(x in proptest::collection::vec(-5i64..5, 12), y in proptest::collection::vec(-5i64..5, 12), z in proptest::collection::vec(-5i64..5, 12)) {
            let build = |v: &Vec<i64>, lo: [i32; 2]| {
                let mut s = MSeries::zero(w2(lo, [lo[0] + 3, lo[1] + 4]));
                for (k, c) in v.iter().enumerate() {
                    s.set(&[lo[0] + (k / 4) as i32, lo[1] + (k % 4) as i32], Rational::from_int(*c));
                }
                s
            };
            let (a, b, c) = (build(&x, [-1, 0]), build(&y, [0, -1]), build(&z, [0, 0]));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
