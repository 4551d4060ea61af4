//! Weight, Hodge and relative weight filtrations on `Q<<T,A>>` and on derivations.

use super::derivation::{delta2m, epsilon, nq, QDerivation};
use super::ncseries::QNC;
use super::word::{Word, A, T};
use crate::exactcore::linalg::rank;
use crate::exactcore::{binomial, Rational};
use crate::report::Verdict;

/// Filtration degrees: `x ∈ W_w`, `x ∈ F^f`, `x ∈ M_m`, each the sharpest index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub w: i64,
    pub f: i64,
    pub m: i64,
}

impl Degrees {
    /// Membership in `F^f W_w M_m`.
    pub fn lies_in(&self, f: i64, w: i64, m: i64) -> bool {
        self.f >= f && self.w <= w && self.m <= m
    }
}

/// `W = -min length`, `F = -max A-degree`, `M = -2 min A-degree`; `None` for zero.
pub fn filtration_degrees(x: &QNC) -> Option<Degrees> {
    let mut it = x.terms().map(|(w, _)| (w.len() as i64, w.count_a() as i64));
    let (l0, a0) = it.next()?;
    let (mut min_len, mut max_a, mut min_a) = (l0, a0, a0);
    for (l, a) in it {
        min_len = min_len.min(l);
        max_a = max_a.max(a);
        min_a = min_a.min(a);
    }
    Some(Degrees { w: -min_len, f: -max_a, m: -2 * min_a })
}

/// Degrees of a derivation, read off from the shifts it induces on the generators.
pub fn derivation_filtration(d: &QDerivation) -> Option<Degrees> {
    let mut out: Option<Degrees> = None;
    for (letter, value) in [(T, d.on_t()), (A, d.on_a())] {
        let Some(g) = filtration_degrees(value) else { continue };
        let a = (letter == A) as i64;
        // shift relative to the generator, which sits in W_{-1} F^{-a} M_{-2a}
        let s = Degrees { w: g.w + 1, f: g.f + a, m: g.m + 2 * a };
        out = Some(match out {
            None => s,
            Some(o) => Degrees { w: o.w.max(s.w), f: o.f.min(s.f), m: o.m.max(s.m) },
        });
    }
    out
}

fn words_with(n: usize, count_a: usize) -> Vec<Word> {
    (0..(1u32 << n))
        .filter(|b| b.count_ones() as usize == count_a)
        .map(|b| {
            let letters: Vec<u8> = (0..n).map(|i| ((b >> i) & 1) as u8).collect();
            Word::from_letters(&letters)
        })
        .collect()
}

/// Rank of `(A ∂/∂T)^k` from length-`n` words with `(n-k)/2` letters `A` to
/// those with `(n+k)/2`.
pub fn sl2_rank(n: usize, k: usize) -> usize {
    assert!(k <= n && (n - k) % 2 == 0);
    let src = words_with(n, (n - k) / 2);
    let dst = words_with(n, (n + k) / 2);
    let index: rustc_hash::FxHashMap<Word, usize> = dst.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let e = epsilon(n);
    let rows: Vec<Vec<Rational>> = src
        .iter()
        .map(|w| {
            let mut x = QNC::word(*w, Rational::ONE, n, ());
            for _ in 0..k {
                x = e.apply(&x);
            }
            let mut row = vec![Rational::ZERO; dst.len()];
            for (v, c) in x.terms() {
                row[index[v]] = c.clone();
            }
            row
        })
        .collect();
    rank(&rows)
}

pub fn sl2_relative_iso_check(n: usize, k: usize) -> Verdict {
    let expected = binomial(n as u32, ((n - k) / 2) as u32).to_big().to_integer();
    let got = sl2_rank(n, k);
    if num_bigint::BigInt::from(got) == expected {
        Verdict::pass().with_detail(format!("rank {got}"))
    } else {
        Verdict::fail(format!("n={n}, k={k}: rank {got}, expected {expected}"))
    }
}

/// Every `(n, k)` with `1 ≤ k ≤ n ≤ max_n` and `n - k` even.
pub fn sl2_all_check(max_n: usize) -> Verdict {
    let mut vs = Vec::new();
    for n in 1..=max_n {
        for k in (1..=n).filter(|k| (n - k) % 2 == 0) {
            vs.push((format!("(n={n}, k={k})"), sl2_relative_iso_check(n, k)));
        }
    }
    Verdict::all(vs)
}

/// `N_q ∈ F^{-1}M_{-2}W_0` and `δ₂ₘ ∈ F^{-1}M_{-2}W_{-2m}` for `2 ≤ 2m ≤ max_weight`,
/// with derivations truncated at word length `n > max_weight`.
pub fn filtration_membership_check(max_weight: usize, n: usize) -> Verdict {
    if n <= max_weight {
        return Verdict::fail(format!("word length {n} cannot see δ_{max_weight}"));
    }
    let mut vs = Vec::new();
    let member = |d: &QDerivation, w: i64| match derivation_filtration(d) {
        None => Verdict::fail("zero derivation"),
        Some(g) if g.lies_in(-1, w, -2) => Verdict::pass().with_detail(format!("(W,F,M) = ({},{},{})", g.w, g.f, g.m)),
        Some(g) => Verdict::fail(format!("(W,F,M) = ({},{},{})", g.w, g.f, g.m)),
    };
    vs.push(("N_q".to_string(), member(&nq(n), 0)));
    for m in 1..=max_weight / 2 {
        vs.push((format!("delta_{}", 2 * m), member(&delta2m(m, n), -2 * m as i64)));
    }
    Verdict::all(vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::derivation::nw;

    #[test]
    fn word_degrees() {
        let x = QNC::from_terms(4, &[("TAT", Rational::ONE)]);
        assert_eq!(filtration_degrees(&x), Some(Degrees { w: -3, f: -1, m: -2 }));
    }

    #[test]
    fn derivation_degrees() {
        assert_eq!(derivation_filtration(&nw(8)), Some(Degrees { w: -2, f: -1, m: -2 }));
        assert_eq!(derivation_filtration(&epsilon(8)), Some(Degrees { w: 0, f: -1, m: -2 }));
        for m in 0..=5 {
            let d = derivation_filtration(&delta2m(m, 12)).unwrap();
            assert!(d.lies_in(-1, -2 * m as i64, -2), "m = {m}: {d:?}");
        }
        assert!(derivation_filtration(&nq(12)).unwrap().lies_in(-1, 0, -2));
        assert!(filtration_membership_check(12, 13).passed());
        assert!(!filtration_membership_check(12, 12).passed());
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(sl2_rank(2, 2), 1);
        assert_eq!(sl2_rank(3, 1), 3);
        assert_eq!(sl2_rank(4, 2), 4);
        assert!(sl2_all_check(6).passed());
    }
}
