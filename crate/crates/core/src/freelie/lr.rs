//! The calculus `f(x, y) ∘ (U, V)`: the linear extension of
//! `x^r y^s ∘ (U, V) = [T^r·U, T^s·V]`.

use rand::Rng;

use super::derivation::{ad_power, QDerivation};
use super::lyndon::LyndonBasis;
use super::ncseries::QNC;
use crate::exactcore::hpoly::XY;
use crate::exactcore::{CommPoly, Rational};
use crate::report::Verdict;

/// `f ∘ (U, V)` for `f` in variables `x, y`.
pub fn lr_apply(f: &CommPoly, u: &QNC, v: &QNC) -> QNC {
    let n = u.max_degree().min(v.max_degree());
    let deg = f.terms().map(|(e, _)| e[0].max(e[1]) as usize).max().unwrap_or(0);
    let tu: Vec<QNC> = (0..=deg).map(|k| ad_power(k, u)).collect();
    let tv: Vec<QNC> = (0..=deg).map(|k| ad_power(k, v)).collect();
    let mut acc = QNC::zero(n, ());
    for (e, c) in f.terms() {
        let (r, s) = (e[0] as usize, e[1] as usize);
        acc = acc.add(&tu[r].bracket(&tv[s]).scale(c));
    }
    acc
}

/// `g(x+y) - g(y)` divided by `x`, for `g` univariate in `x`.
pub fn lr_correction(g: &CommPoly) -> CommPoly {
    let x = CommPoly::var(&XY, 0);
    let y = CommPoly::var(&XY, 1);
    let gx_y = g.substitute(0, &x.add(&y));
    let gy = g.substitute(0, &y);
    gx_y.sub(&gy).div_exact(&x).expect("g(x+y) - g(y) is divisible by x")
}

/// Random Lie element of degrees `1..=max_deg`: a small integer combination of
/// Lyndon bracketings.
pub fn random_lie(rng: &mut impl Rng, basis: &LyndonBasis, n: usize, max_deg: usize, terms: usize) -> QNC {
    let words: Vec<_> = basis.words().iter().filter(|w| w.len() <= max_deg).copied().collect();
    let mut acc = QNC::zero(n, ());
    for _ in 0..terms {
        let w = words[rng.gen_range(0..words.len())];
        let c = Rational::from_int(rng.gen_range(-3i64..=3));
        acc = acc.add(&basis.bracketing(&w).truncate(n).scale(&c));
    }
    acc
}

pub fn random_derivation(rng: &mut impl Rng, basis: &LyndonBasis, n: usize, max_deg: usize) -> QDerivation {
    QDerivation::new(random_lie(rng, basis, n, max_deg, 3), random_lie(rng, basis, n, max_deg, 3))
}

fn random_monomial(rng: &mut impl Rng, max: u32) -> CommPoly {
    let r = rng.gen_range(0..=max);
    let s = rng.gen_range(0..=max);
    CommPoly::monomial(&XY, vec![r, s], Rational::from_int(rng.gen_range(1i64..=4)))
}

/// Both calculus identities on random inputs; `drop_correction` removes the
/// second term of the derivation rule (negative control).
pub fn lr_lemma_checks(n: usize, trials: usize, seed: u64, drop_correction: bool) -> Verdict {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let basis = LyndonBasis::new(n);
    let t = QNC::qt(n);
    let x_plus_y = CommPoly::var(&XY, 0).add(&CommPoly::var(&XY, 1));
    let mut fixed = vec![(
        CommPoly::monomial(&XY, vec![1, 1], Rational::ONE),
        QNC::qa(n),
        QNC::qa(n),
        CommPoly::monomial(&XY, vec![2, 0], Rational::ONE),
        super::derivation::delta2m(1, n),
    )];
    for _ in 0..trials {
        fixed.push((
            random_monomial(&mut rng, 3),
            random_lie(&mut rng, &basis, n, 2, 2),
            random_lie(&mut rng, &basis, n, 2, 2),
            CommPoly::monomial(&XY, vec![rng.gen_range(0..=4), 0], Rational::ONE),
            random_derivation(&mut rng, &basis, n, 3),
        ));
    }
    for (i, (f, u, v, g, d)) in fixed.iter().enumerate() {
        let lhs = t.bracket(&lr_apply(f, u, v));
        let rhs = lr_apply(&x_plus_y.mul(f), u, v);
        if let Some(w) = nc_witness(&lhs.sub(&rhs)) {
            return Verdict::fail(format!("trial {i}, ad_T rule, f = {f}: {w}"));
        }
        let gv = univariate_apply(g, v);
        let lhs = d.apply(&gv);
        let mut rhs = univariate_apply(g, &d.apply(v));
        if !drop_correction {
            rhs = rhs.add(&lr_apply(&lr_correction(g), d.on_t(), v));
        }
        if let Some(w) = nc_witness(&lhs.sub(&rhs)) {
            return Verdict::fail(format!("trial {i}, derivation rule, g = {g}: {w}"));
        }
    }
    Verdict::pass()
}

/// `g(ad_T)(v)` for `g` a polynomial in `x` alone.
pub fn univariate_apply(g: &CommPoly, v: &QNC) -> QNC {
    let mut acc = QNC::zero(v.max_degree(), ());
    for (e, c) in g.terms() {
        assert_eq!(e[1], 0, "univariate in x expected");
        acc = acc.add(&ad_power(e[0] as usize, v).scale(c));
    }
    acc
}

/// First nonzero term of a difference, rendered as a witness.
pub fn nc_witness(diff: &QNC) -> Option<String> {
    diff.first_term().map(|(w, c)| format!("degree {}: coefficient of {} is {}", w.len(), w, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::ncseries::tests::arb_qnc;
    use proptest::prelude::*;

    fn p(s: &str) -> CommPoly {
        CommPoly::parse(s, &XY).unwrap()
    }

    #[test]
    fn examples() {
        let a = QNC::qa(6);
        let t = QNC::qt(6);
        let ta_a = t.bracket(&a).bracket(&a);
        assert!(lr_apply(&p("1"), &a, &a).is_zero());
        assert_eq!(lr_apply(&p("x"), &a, &a), ta_a);
        assert_eq!(lr_apply(&p("x - y"), &a, &a), ta_a.scale(&Rational::from_int(2)));
    }

    #[test]
    fn lemma_checks() {
        assert!(lr_lemma_checks(8, 6, 7, false).passed());
        assert!(!lr_lemma_checks(8, 6, 7, true).passed());
    }

    #[test]
    fn correction_polynomial() {
        assert_eq!(lr_correction(&p("x^2")), p("x + 2 y"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn skew(u in arb_qnc(6, 1), r in 0u32..3, s in 0u32..3, c in -3i64..4) {
            let f = CommPoly::monomial(&XY, vec![r, s], Rational::from_int(c));
            let swapped = CommPoly::monomial(&XY, vec![s, r], Rational::from_int(c));
            let half = f.sub(&swapped).scale(&Rational::new(1, 2));
            prop_assert_eq!(lr_apply(&f, &u, &u), lr_apply(&half, &u, &u));
        }
    }
}
