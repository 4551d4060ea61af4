//! Coefficient rings for noncommutative series.

use std::fmt::Debug;

use num_complex::Complex64;

use super::rational::Rational;

/// A commutative coefficient ring, possibly truncated.
///
/// Truncated rings (power series) carry a window `Ctx` describing which
/// exponents are known. Sums live in the meet of the operand windows and
/// products in [`Coeff::mul_ctx`] of them, so results never claim more
/// precision than the inputs support.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn from_rational_in(r: &Rational, ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn add_assign_c(&mut self, other: &Self);
    fn sub_assign_c(&mut self, other: &Self);
    fn mul_c(&self, other: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn scale_c(&self, r: &Rational) -> Self;
    fn meet(a: &Self::Ctx, b: &Self::Ctx) -> Self::Ctx;
    fn mul_ctx(a: &Self::Ctx, b: &Self::Ctx) -> Self::Ctx;
    /// Reshape to a window contained in (or equal to) the current one.
    fn restrict(&self, ctx: &Self::Ctx) -> Self;

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_rational_in(&Rational::ONE, ctx)
    }

    fn add_mul_c(&mut self, a: &Self, b: &Self) {
        let p = a.mul_c(b);
        self.add_assign_c(&p);
    }

    /// Short human-readable rendering used in witnesses.
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

impl Coeff for Rational {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        Rational::ZERO
    }
    fn from_rational_in(r: &Rational, _: &()) -> Self {
        r.clone()
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign_c(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_c(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_c(&self, r: &Rational) -> Self {
        self * r
    }
    fn meet(_: &(), _: &()) {}
    fn mul_ctx(_: &(), _: &()) {}
    fn restrict(&self, _: &()) -> Self {
        self.clone()
    }
    fn add_mul_c(&mut self, a: &Self, b: &Self) {
        self.add_mul(a, b);
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for Complex64 {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_rational_in(r: &Rational, _: &()) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_assign_c(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_c(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_c(&self, r: &Rational) -> Self {
        self * r.to_f64()
    }
    fn meet(_: &(), _: &()) {}
    fn mul_ctx(_: &(), _: &()) {}
    fn restrict(&self, _: &()) -> Self {
        *self
    }
    fn add_mul_c(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn render(&self) -> String {
        format!("{:.3e}{:+.3e}i", self.re, self.im)
    }
}
