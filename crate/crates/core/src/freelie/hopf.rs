//! Shuffle coproduct, antipode and counit on truncated series.

use rustc_hash::FxHashMap;

use super::ncseries::NCSeries;
use super::word::Word;
use crate::exactcore::{Coeff, Rational};

/// Element of the (truncated) tensor square, graded by total word length.
#[derive(Clone, Debug)]
pub struct TensorSquare<C: Coeff> {
    n: usize,
    ctx: C::Ctx,
    terms: FxHashMap<(Word, Word), C>,
}

impl<C: Coeff> TensorSquare<C> {
    pub fn zero(n: usize, ctx: C::Ctx) -> Self {
        TensorSquare { n, ctx, terms: FxHashMap::default() }
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: C) {
        if l.len() + r.len() > self.n || c.is_zero() {
            return;
        }
        let c = if c.ctx() == self.ctx { c } else { c.restrict(&self.ctx) };
        match self.terms.get_mut(&(l, r)) {
            Some(e) => {
                e.add_assign_c(&c);
                if e.is_zero() {
                    self.terms.remove(&(l, r));
                }
            }
            None => {
                self.terms.insert((l, r), c);
            }
        }
    }

    /// `x ⊗ y`.
    pub fn tensor(x: &NCSeries<C>, y: &NCSeries<C>) -> Self {
        let n = x.max_degree().min(y.max_degree());
        let mut out = Self::zero(n, C::mul_ctx(x.ctx(), y.ctx()));
        for (wl, cl) in x.terms() {
            for (wr, cr) in y.terms() {
                out.add_term(*wl, *wr, cl.mul_c(cr));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n.min(other.n), C::meet(&self.ctx, &other.ctx));
        for ((l, r), c) in &self.terms {
            out.add_term(*l, *r, c.clone());
        }
        for ((l, r), c) in &other.terms {
            out.add_term(*l, *r, c.neg_c());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &C)> {
        self.terms.iter()
    }

    /// Smallest-degree nonzero term, for witnesses.
    pub fn first_term(&self) -> Option<((Word, Word), C)> {
        let mut v: Vec<_> = self.terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| (a.0 .0.len() + a.0 .1.len(), a.0).cmp(&(b.0 .0.len() + b.0 .1.len(), b.0)));
        v.first().map(|(k, c)| (**k, (*c).clone()))
    }
}

/// `Δ(w) = Σ_{S ⊆ positions} w|_S ⊗ w|_{S^c}`, extended linearly.
pub fn coproduct<C: Coeff>(x: &NCSeries<C>) -> TensorSquare<C> {
    let mut out = TensorSquare::zero(x.max_degree(), x.ctx().clone());
    for (w, c) in x.terms() {
        for mask in 0..(1u32 << w.len()) {
            let (l, r) = w.split_by_mask(mask);
            out.add_term(l, r, c.clone());
        }
    }
    out
}

/// `S(w) = (-1)^{|w|} reverse(w)`.
pub fn antipode<C: Coeff>(x: &NCSeries<C>) -> NCSeries<C> {
    let mut out = NCSeries::zero(x.max_degree(), x.ctx().clone());
    for (w, c) in x.terms() {
        let c = if w.len() % 2 == 1 { c.neg_c() } else { c.clone() };
        out.add_term(w.reverse(), c);
    }
    out
}

pub fn counit<C: Coeff>(x: &NCSeries<C>) -> C {
    x.constant_term()
}

/// `Δx = x ⊗ 1 + 1 ⊗ x`.
pub fn is_primitive<C: Coeff>(x: &NCSeries<C>) -> bool {
    primitive_defect(x).is_zero()
}

pub fn primitive_defect<C: Coeff>(x: &NCSeries<C>) -> TensorSquare<C> {
    let one = NCSeries::one(x.max_degree(), x.ctx().clone());
    let mut rhs = TensorSquare::tensor(x, &one);
    for ((l, r), c) in TensorSquare::tensor(&one, x).terms() {
        rhs.add_term(*l, *r, c.clone());
    }
    coproduct(x).sub(&rhs)
}

/// `Δx = x ⊗ x` (within the truncation).
pub fn grouplike_defect<C: Coeff>(x: &NCSeries<C>) -> TensorSquare<C> {
    coproduct(x).sub(&TensorSquare::tensor(x, x))
}

pub fn is_grouplike<C: Coeff>(x: &NCSeries<C>) -> bool {
    let one = C::one_in(x.ctx());
    x.constant_term() == one && grouplike_defect(x).is_zero()
}

/// Largest coefficient modulus of the group-likeness defect, for complex series.
pub fn grouplike_residual(x: &NCSeries<num_complex::Complex64>) -> f64 {
    let d = grouplike_defect(x);
    let c0 = (x.constant_term() - num_complex::Complex64::new(1.0, 0.0)).norm();
    d.terms().map(|(_, c)| c.norm()).fold(c0, f64::max)
}

/// Convenience: rational coefficient of `l ⊗ r`.
pub fn tensor_coeff(t: &TensorSquare<Rational>, l: Word, r: Word) -> Rational {
    t.terms.get(&(l, r)).cloned().unwrap_or(Rational::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::ncseries::tests::arb_qnc;
    use crate::freelie::QNC;
    use proptest::prelude::*;

    fn tensor_mul(x: &TensorSquare<Rational>, y: &TensorSquare<Rational>) -> TensorSquare<Rational> {
        let mut out = TensorSquare::zero(x.n.min(y.n), ());
        for ((l1, r1), c1) in x.terms() {
            for ((l2, r2), c2) in y.terms() {
                if l1.len() + r1.len() + l2.len() + r2.len() <= out.n {
                    out.add_term(l1.concat(*l2), r1.concat(*r2), c1 * c2);
                }
            }
        }
        out
    }

    #[test]
    fn exp_of_lie_is_grouplike() {
        let t = QNC::qt(7);
        let a = QNC::qa(7);
        let x = t.add(&a.scale(&Rational::new(2, 3))).add(&t.bracket(&a));
        assert!(is_primitive(&x));
        assert!(is_grouplike(&x.exp()));
        assert!(!is_grouplike(&x.exp().add(&t.mul(&a))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn coproduct_is_algebra_map(x in arb_qnc(6, 0), y in arb_qnc(6, 0)) {
            let lhs = coproduct(&x.mul(&y));
            let rhs = tensor_mul(&coproduct(&x), &coproduct(&y));
            prop_assert!(lhs.sub(&rhs).is_zero());
        }

        #[test]
        fn antipode_antihomomorphism(x in arb_qnc(6, 0), y in arb_qnc(6, 0)) {
            prop_assert_eq!(antipode(&x.mul(&y)), antipode(&y).mul(&antipode(&x)));
        }

        #[test]
        fn brackets_are_primitive(x in arb_qnc(8, 1), y in arb_qnc(8, 1)) {
            let u = x.degree_part(1);
            let v = y.degree_part(1);
            prop_assert!(is_primitive(&u.bracket(&v).bracket(&u)));
        }

        #[test]
        fn antipode_inverts_grouplike(x in arb_qnc(6, 1)) {
            // exp of a primitive element built from x's degree-1 part and one bracket
            let l = x.degree_part(1).add(&x.degree_part(1).bracket(&QNC::qa(6)));
            let g = l.exp();
            prop_assert_eq!(antipode(&g), g.inverse());
        }
    }
}
