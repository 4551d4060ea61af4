//! The connection form `ω = P du + Q dq/q` with derivation-valued coefficients.

use std::collections::BTreeMap;

use super::jacobi::jacobi_f;
use crate::exactcore::{factorial, MSeries, MWindow, Rational};
use crate::freelie::{ad_power, epsilon, nc_witness, psi_derivation, QDerivation, QNC};
use crate::modforms::eisenstein_any;
use crate::report::Verdict;

/// `coeff(u, q) ⊗ der`.
#[derive(Clone, Debug)]
pub struct FormTerm {
    pub label: String,
    pub coeff: MSeries,
    pub der: QDerivation,
}

/// `duPart = Σ du` terms; `dqPart = (1/q) Σ dq` terms, so `dq` holds the coefficient of `dq/q`.
/// Derivation values are exact through word length `n`, coefficients through
/// `u^k` and `q^{m-1}`.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    pub n: usize,
    pub k: i32,
    pub m: i32,
    pub du: Vec<FormTerm>,
    pub dq: Vec<FormTerm>,
}

/// Negative controls drop one piece of the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KzbVariant {
    Exact,
    DropPsi,
    DropEpsilon,
}

fn evaluate(terms: &[FormTerm], e: &[i32], n: usize) -> QDerivation {
    let mut acc = QDerivation::zero(n, ());
    for t in terms {
        let c = t.coeff.coeff(e);
        if !c.is_zero() {
            acc = acc.add(&t.der.scale(&c));
        }
    }
    acc
}

impl ConnectionForm {
    /// `duPart` at `u^a q^b`.
    pub fn du_at(&self, a: i32, b: i32) -> QDerivation {
        evaluate(&self.du, &[a, b], self.n)
    }

    /// Coefficient of `dq/q` at `u^a q^b`.
    pub fn dq_at(&self, a: i32, b: i32) -> QDerivation {
        evaluate(&self.dq, &[a, b], self.n)
    }
}

pub fn assemble_kzb(n: usize, k: i32, m: i32) -> Result<ConnectionForm, String> {
    assemble_kzb_variant(n, k, m, KzbVariant::Exact)
}

pub fn assemble_kzb_variant(n: usize, k: i32, m: i32, variant: KzbVariant) -> Result<ConnectionForm, String> {
    if n < 2 {
        return Err(format!("Lie truncation {n} is below 2"));
    }
    if k < 1 || m < 1 {
        return Err(format!("orders u < {k}, q < {m} are empty"));
    }
    // 𝔽(u, v) through u^k and v^{n}
    let f = jacobi_f(k + 1, n as i32 + 1, m).full();
    let a = QNC::qa(n);
    let mut du = Vec::new();
    let mut dq = Vec::new();
    for j in 0..n {
        let x = ad_power(j, &a);
        if x.is_zero() {
            continue;
        }
        let der = QDerivation::inner(&x);
        // T𝔽(u,T)·A: f_{j-1} against T^j·A
        du.push(FormTerm { label: format!("ad(T^{j}.A)"), coeff: f.slice(1, j as i32 - 1), der: der.clone() });
        // (1/T + T𝔽_v(u,T))·A: j f_j against T^j·A, the j = 0 term cancels
        if j >= 1 && (j as i32) < n as i32 + 1 {
            let c = f.slice(1, j as i32).scale(&Rational::from_int(j as i64));
            dq.push(FormTerm { label: format!("ad(T^{j}.A)"), coeff: c, der });
        }
    }
    let w = MWindow::new(vec![0, 0], vec![k + 1, m]);
    if variant != KzbVariant::DropEpsilon {
        dq.push(FormTerm { label: "A d/dT".into(), coeff: MSeries::constant(Rational::ONE, w.clone()), der: epsilon(n) });
    }
    if variant != KzbVariant::DropPsi {
        let mut j = 1;
        while 2 * j + 2 <= n {
            let g = eisenstein_any(2 * j as u32 + 2, m);
            let scale = Rational::from_int(2) / factorial(2 * j as u32);
            let mut c = MSeries::zero(w.clone());
            for (e, x) in g.terms() {
                c.set(&[0, e], x * &scale);
            }
            dq.push(FormTerm { label: format!("psi_{j}"), coeff: c, der: psi_derivation(j, n) });
            j += 1;
        }
    }
    Ok(ConnectionForm { n, k, m, du, dq })
}

fn region(form: &ConnectionForm) -> impl Iterator<Item = (i32, i32)> {
    let (k, m) = (form.k, form.m);
    (-1..k).flat_map(move |a| (0..m).map(move |b| (a, b)))
}

fn accumulate(acc: &mut BTreeMap<(i32, i32), QDerivation>, form: &ConnectionForm, c: &MSeries, d: &QDerivation) {
    for (a, b) in region(form) {
        let x = c.coeff(&[a, b]);
        if !x.is_zero() {
            let slot = acc.entry((a, b)).or_insert_with(|| QDerivation::zero(form.n, ()));
            *slot = slot.add(&d.scale(&x));
        }
    }
}

/// `∂_u Q - D P` on the certified region, keyed by `(u, q)` exponents.
pub fn closedness_defect(form: &ConnectionForm) -> BTreeMap<(i32, i32), QDerivation> {
    let mut acc = BTreeMap::new();
    for t in &form.dq {
        accumulate(&mut acc, form, &t.coeff.partial(0), &t.der);
    }
    for t in &form.du {
        accumulate(&mut acc, form, &t.coeff.theta(1).neg(), &t.der);
    }
    acc
}

/// `∂_u Q - D P + [P, Q]`: the `du ∧ dq/q` coefficient of `dω + ω∧ω`.
pub fn curvature(form: &ConnectionForm) -> BTreeMap<(i32, i32), QDerivation> {
    let mut acc = closedness_defect(form);
    for p in &form.du {
        for q in &form.dq {
            let b = p.der.bracket(&q.der);
            if b.is_zero() {
                continue;
            }
            accumulate(&mut acc, form, &p.coeff.mul(&q.coeff), &b);
        }
    }
    acc
}

// the failing entry of lowest word length, then lowest (u, q)
fn lowest_failure(defect: &BTreeMap<(i32, i32), QDerivation>) -> Option<String> {
    let mut best: Option<(usize, String)> = None;
    for ((a, b), d) in defect {
        for (name, v) in [("T", d.on_t()), ("A", d.on_a())] {
            if let Some(w) = nc_witness(v) {
                let len = v.first_term().map(|(w, _)| w.len()).unwrap_or(0);
                if best.as_ref().map_or(true, |(l, _)| len < *l) {
                    best = Some((len, format!("u^{a} q^{b}, value on {name}: {w}")));
                }
            }
        }
    }
    best.map(|(_, s)| s)
}

fn region_detail(form: &ConnectionForm) -> String {
    format!("u^-1..u^{}, q^0..q^{}, word length <= {}", form.k - 1, form.m - 1, form.n)
}

/// `dω = 0` on the `(u, q)` chart; equivalent to the heat equation for `𝔽`.
pub fn closedness_check(form: &ConnectionForm) -> Verdict {
    match lowest_failure(&closedness_defect(form)) {
        Some(w) => Verdict::fail(w),
        None => Verdict::pass().with_detail(region_detail(form)),
    }
}

/// Integrability on the certified region, with closedness as a named sub-check.
pub fn flatness_check(form: &ConnectionForm) -> Verdict {
    let curv = match lowest_failure(&curvature(form)) {
        Some(w) => Verdict::fail(w),
        None => Verdict::pass().with_detail(region_detail(form)),
    };
    Verdict::all([("closedness".to_string(), closedness_check(form)), ("curvature".to_string(), curv)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::{nq, nw};
    use proptest::prelude::*;

    #[test]
    fn low_order_shape() {
        let f = assemble_kzb(5, 4, 4).unwrap();
        assert_eq!(f.du_at(-1, 0), nw(5));
        for b in 1..4 {
            assert!(f.du_at(-1, b).is_zero());
        }
        // u^0 q^0: A in degree 1, then R₀ + ½[T,A]
        let d = f.du_at(0, 0);
        let x = d.inner_element().unwrap();
        assert_eq!(x.degree_part(1), QNC::qa(5));
        let (r0, r1, _) = crate::freelie::residues(5);
        assert_eq!(*x, r0.add(&r1.scale(&Rational::new(1, 2))));
        assert_eq!(f.dq_at(0, 0), nq(5));
        assert!(assemble_kzb(1, 4, 4).is_err());
    }

    #[test]
    fn flat_at_small_orders() {
        let f = assemble_kzb(5, 4, 5).unwrap();
        let v = flatness_check(&f);
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn negative_controls() {
        let f = assemble_kzb_variant(6, 4, 4, KzbVariant::DropPsi).unwrap();
        let v = flatness_check(&f);
        assert!(!v.passed());
        assert!(closedness_check(&f).passed());
        let f = assemble_kzb_variant(4, 3, 3, KzbVariant::DropEpsilon).unwrap();
        let v = flatness_check(&f);
        assert!(!v.passed());
        assert!(v.witness.unwrap().contains("degree"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn flat_everywhere_in_range(n in 2usize..=8, k in 1i32..=8, m in 1i32..=10) {
            let f = assemble_kzb(n, k, m).unwrap();
            let v = flatness_check(&f);
            prop_assert!(v.passed(), "{:?}", v);
        }
    }
}
