//! Truncated univariate Laurent series with exact coefficients.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::rational::Rational;

/// `Σ_{lo ≤ e < order} c_e x^e + O(x^order)`.
///
/// Exponents at or above `order` are unknown; every operation propagates the
/// smallest order its inputs justify.
#[derive(Clone, Serialize, Deserialize)]
pub struct Series {
    lo: i32,
    order: i32,
    coeffs: Vec<Rational>,
}

/// Power series in `q`.
pub type QSeries = Series;
/// Series allowed to start at a negative exponent.
pub type LaurentSeries = Series;

/// Window `[lo, order)` of a [`Series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub order: i32,
}

impl Series {
    pub fn zero(lo: i32, order: i32) -> Series {
        let n = (order - lo).max(0) as usize;
        Series { lo, order: order.max(lo), coeffs: vec![Rational::ZERO; n] }
    }

    pub fn one(order: i32) -> Series {
        Series::monomial(0, Rational::ONE, order)
    }

    /// `c x^e + O(x^order)`, with window starting at `min(e, 0)`.
    pub fn monomial(e: i32, c: Rational, order: i32) -> Series {
        let mut s = Series::zero(e.min(0), order);
        if e < order {
            s.set(e, c);
        }
        s
    }

    /// Coefficients `c_lo, c_lo+1, ...`; the order is `lo + len`.
    pub fn from_coeffs(lo: i32, coeffs: Vec<Rational>) -> Series {
        let order = lo + coeffs.len() as i32;
        Series { lo, order, coeffs }
    }

    pub fn from_ints(lo: i32, coeffs: &[i64]) -> Series {
        Series::from_coeffs(lo, coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn window(&self) -> Window {
        Window { lo: self.lo, order: self.order }
    }

    /// Coefficient of `x^e`; zero below the window. Panics at or above the order.
    pub fn coeff(&self, e: i32) -> Rational {
        assert!(e < self.order, "coefficient x^{e} is beyond the truncation order {}", self.order);
        if e < self.lo {
            Rational::ZERO
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    pub fn coeff_ref(&self, e: i32) -> Option<&Rational> {
        if e < self.lo || e >= self.order {
            None
        } else {
            Some(&self.coeffs[(e - self.lo) as usize])
        }
    }

    pub fn set(&mut self, e: i32, c: Rational) {
        assert!(e < self.order && e >= self.lo, "exponent {e} outside window");
        self.coeffs[(e - self.lo) as usize] = c;
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// First exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn reshape(&self, w: Window) -> Series {
        assert!(w.order <= self.order, "cannot extend a truncated series");
        let mut out = Series::zero(w.lo, w.order);
        for (e, c) in self.terms() {
            if e < w.order {
                assert!(e >= w.lo, "nonzero coefficient below target window");
                out.set(e, c.clone());
            }
        }
        out
    }

    pub fn truncate(&self, order: i32) -> Series {
        self.reshape(Window { lo: self.lo, order: order.min(self.order) })
    }

    fn meet_window(a: Window, b: Window) -> Window {
        Window { lo: a.lo.min(b.lo), order: a.order.min(b.order) }
    }

    pub fn add(&self, other: &Series) -> Series {
        let w = Self::meet_window(self.window(), other.window());
        let mut out = self.reshape(w);
        for (e, c) in other.terms() {
            if e < w.order {
                let i = (e - w.lo) as usize;
                out.coeffs[i] += c;
            }
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series { lo: self.lo, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Series {
        Series { lo: self.lo, order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let lo = self.lo + other.lo;
        let order = (self.order + other.lo).min(other.order + self.lo);
        let mut out = Series::zero(lo, order);
        let bt: Vec<(i32, &Rational)> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for &(eb, cb) in &bt {
                let e = ea + eb;
                if e >= order {
                    break;
                }
                out.coeffs[(e - lo) as usize].add_mul(ca, cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Series {
        if n == 0 {
            return Series::one((self.order - self.lo).max(1));
        }
        let mut result: Option<Series> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result.unwrap()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i32) -> Series {
        Series { lo: self.lo + k, order: self.order + k, coeffs: self.coeffs.clone() }
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    /// Returns `None` for series with no known nonzero coefficient.
    pub fn inverse(&self) -> Option<Series> {
        let v = self.valuation()?;
        let rel = self.order - v;
        let a0 = self.coeff(v).recip();
        // b = 1 / (x^-v self), computed with relative precision rel
        let mut b = vec![Rational::ZERO; rel as usize];
        for n in 0..rel as usize {
            let mut s = if n == 0 { Rational::ONE } else { Rational::ZERO };
            for k in 1..=n {
                let a = self.coeff(v + k as i32);
                if !a.is_zero() {
                    s -= &a * &b[n - k];
                }
            }
            b[n] = &s * &a0;
        }
        Some(Series::from_coeffs(-v, b))
    }

    pub fn div(&self, other: &Series) -> Option<Series> {
        Some(self.mul(&other.inverse()?))
    }

    /// `exp(s)` for `s` with vanishing constant term.
    pub fn exp(&self) -> Series {
        assert!(self.lo >= 0 && self.coeff_ref(0).map_or(true, |c| c.is_zero()), "exp needs zero constant term");
        let order = self.order;
        let mut acc = Series::one(order);
        let mut term = Series::one(order);
        for k in 1..order.max(1) {
            term = term.mul(self).scale(&Rational::new(1, k as i64));
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(1 + s)` for `s` with vanishing constant term.
    pub fn log1p(&self) -> Series {
        assert!(self.lo >= 0 && self.coeff_ref(0).map_or(true, |c| c.is_zero()), "log1p needs zero constant term");
        let order = self.order;
        let mut acc = Series::zero(0, order);
        let mut pow = Series::one(order);
        for k in 1..order.max(1) {
            pow = pow.mul(self);
            let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            acc = acc.add(&pow.scale(&c));
        }
        acc
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Series {
        let mut out = Series::zero(self.lo - 1, self.order - 1);
        for (e, c) in self.terms() {
            if e != 0 {
                out.set(e - 1, c * &Rational::from_int(e as i64));
            }
        }
        out
    }

    /// `x d/dx`.
    pub fn theta(&self) -> Series {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= Rational::from_int((self.lo + i as i32) as i64);
        }
        out
    }

    /// Evaluate the truncated sum at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            acc += x.powi(e) * c.to_f64();
        }
        acc
    }
}

/// Equal orders and equal coefficients; the stored lower bound is irrelevant.
impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.terms().eq(other.terms())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order)
    }
}

impl Coeff for Series {
    type Ctx = Window;

    fn zero_in(ctx: &Window) -> Self {
        Series::zero(ctx.lo, ctx.order)
    }
    fn from_rational_in(r: &Rational, ctx: &Window) -> Self {
        let mut s = Series::zero(ctx.lo.min(0), ctx.order);
        if ctx.order > 0 {
            s.set(0, r.clone());
        }
        s
    }
    fn ctx(&self) -> Window {
        self.window()
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add_assign_c(&mut self, other: &Self) {
        if self.window() == other.window() {
            for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                *a += b;
            }
        } else {
            *self = self.add(other);
        }
    }
    fn sub_assign_c(&mut self, other: &Self) {
        if self.window() == other.window() {
            for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
                *a -= b;
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
    fn meet(a: &Window, b: &Window) -> Window {
        Series::meet_window(*a, *b)
    }
    fn mul_ctx(a: &Window, b: &Window) -> Window {
        Window { lo: a.lo + b.lo, order: (a.order + b.lo).min(b.order + a.lo) }
    }
    fn restrict(&self, ctx: &Window) -> Self {
        self.reshape(*ctx)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
