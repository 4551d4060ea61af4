//! Restriction of the connection to the Tate curve `q = 0`, and the induced
//! form on `P¹ - {0, 1, ∞}` in the coordinate `w = e^u`.

use std::collections::BTreeMap;

use super::connection::assemble_kzb;
use crate::exactcore::{factorial, Rational, Series};
use crate::freelie::{nc_witness, nq, operator_apply, residues, QDerivation, QNC};
use crate::report::Verdict;

/// `Σ_k c_k x^k` for `c = x/(e^x - 1)`, by inverting `(e^x - 1)/x`.
fn todd_coeffs(n: usize) -> Vec<Rational> {
    let s = Series::from_coeffs(0, (0..=n).map(|k| factorial(k as u32 + 1).recip()).collect());
    let inv = s.inverse().unwrap();
    (0..=n as i32).map(|k| inv.coeff(k)).collect()
}

/// `duPart|_{q=0} = [T,A] e^u/(e^u-1) + (T/(e^T-1))·A` through `u^{k-1}`, and the
/// `q`-residue of `dqPart` is `N_q`, independent of `u`.
pub fn tate_restriction_check(n: usize, k: i32) -> Verdict {
    let form = match assemble_kzb(n, k, 1) {
        Ok(f) => f,
        Err(e) => return Verdict::fail(e),
    };
    // e^u/(e^u - 1) = (1/u)·(u/(1 - e^{-u}))
    let td = todd_coeffs(k as usize + 1);
    let mut wcoef = BTreeMap::new();
    for e in -1..k {
        // u/(1 - e^{-u}) is x/(e^x - 1) at x = -u
        let j = (e + 1) as usize;
        let c = if j % 2 == 1 { -&td[j] } else { td[j].clone() };
        wcoef.insert(e, c);
    }
    let ta = QNC::qt(n).bracket(&QNC::qa(n));
    let r0 = operator_apply(&todd_coeffs(n), &QNC::qa(n));
    for e in -1..k {
        let got = match form.du_at(e, 0).inner_element() {
            Some(x) => x.clone(),
            None => return Verdict::fail(format!("u^{e}: duPart is not inner")),
        };
        let mut want = ta.scale(&wcoef[&e]);
        if e == 0 {
            want = want.add(&r0);
        }
        if let Some(w) = nc_witness(&got.sub(&want)) {
            return Verdict::fail(format!("duPart u^{e}: {w}"));
        }
    }
    let nq = nq(n);
    for e in -1..k {
        let d = form.dq_at(e, 0);
        let want = if e == 0 { nq.clone() } else { QDerivation::zero(n, ()) };
        let diff = d.sub(&want);
        for (name, v) in [("T", diff.on_t()), ("A", diff.on_a())] {
            if let Some(w) = nc_witness(v) {
                return Verdict::fail(format!("q-residue u^{e}, value on {name}: {w}"));
            }
        }
    }
    Verdict::pass()
}

/// Residues of `[T,A] dw/(w-1) + (T/(e^T-1))·A dw/w` at `0, 1, ∞`, compared with
/// `R₀, R₁, R_∞`, and their sum.
pub fn p1_residues(n: usize) -> Verdict {
    if n < 2 {
        return Verdict::fail(format!("Lie truncation {n} is below 2"));
    }
    let td = todd_coeffs(n);
    let ta = QNC::qt(n).bracket(&QNC::qa(n));
    let c0 = operator_apply(&td, &QNC::qa(n));
    // simple fractions c/(w - p); at ∞ put w = 1/t: c/(w-p) dw = -c dt/(t(1 - pt)), residue -c
    let poles: [(Option<i32>, &QNC); 2] = [(Some(0), &c0), (Some(1), &ta)];
    let res_at = |p: Option<i32>| -> QNC {
        let mut acc = QNC::zero(n, ());
        for (q, c) in &poles {
            if p.is_none() {
                acc = acc.sub(c);
            } else if *q == p {
                acc = acc.add(c);
            }
        }
        acc
    };
    let (r0, r1, rinf) = residues(n);
    let got = [res_at(Some(0)), res_at(Some(1)), res_at(None)];
    let mut checks = Vec::new();
    for (name, g, w) in [("w=0", &got[0], &r0), ("w=1", &got[1], &r1), ("w=inf", &got[2], &rinf)] {
        checks.push((name.to_string(), Verdict::from_witness(nc_witness(&g.sub(w)))));
    }
    let sum = got[0].add(&got[1]).add(&got[2]);
    checks.push(("residue sum".to_string(), Verdict::from_witness(nc_witness(&sum))));
    Verdict::all(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn todd_low_terms() {
        let t = todd_coeffs(4);
        assert_eq!(t[0], Rational::ONE);
        assert_eq!(t[1], Rational::new(-1, 2));
        assert_eq!(t[2], Rational::new(1, 12));
        assert!(t[3].is_zero());
    }

    #[test]
    fn tate() {
        let v = tate_restriction_check(7, 6);
        assert!(v.passed(), "{v:?}");
        assert!(tate_restriction_check(10, 8).passed());
    }

    #[test]
    fn p1() {
        assert!(p1_residues(8).passed());
        assert!(!p1_residues(1).passed());
    }
}
