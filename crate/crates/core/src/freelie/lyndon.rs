//! Lyndon words, their standard bracketings, and Lie elements in Lyndon coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use rustc_hash::{FxHashMap, FxHashSet};

use super::ncseries::{NCSeries, QNC};
use super::word::Word;
use crate::exactcore::{Coeff, Rational};

/// A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: Word) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| w.lex_cmp(w.suffix(k)) == Ordering::Less)
}

/// All Lyndon words of length `1..=n`, in lexicographic order (Duval's algorithm).
pub fn lyndon_words(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        if w.len() <= n {
            out.push(Word::from_letters(&w));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        if let Some(l) = w.last_mut() {
            *l += 1;
        }
    }
    out
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: Word) -> (Word, Word) {
    assert!(w.len() >= 2);
    for k in 1..w.len() {
        let v = w.suffix(k);
        if is_lyndon(v) {
            return (w.prefix(k), v);
        }
    }
    unreachable!("a single letter is always Lyndon")
}

/// Lyndon words up to a degree together with their bracketings.
pub struct LyndonBasis {
    n: usize,
    words: Vec<Word>,
    set: FxHashSet<Word>,
    brackets: FxHashMap<Word, QNC>,
}

impl LyndonBasis {
    pub fn new(n: usize) -> LyndonBasis {
        let words = lyndon_words(n);
        let set = words.iter().copied().collect();
        let mut b = LyndonBasis { n, words, set, brackets: FxHashMap::default() };
        let mut sorted = b.words.clone();
        sorted.sort_by_key(|w| w.len());
        for w in sorted {
            let p = if w.len() == 1 {
                QNC::word(w, Rational::ONE, n, ())
            } else {
                let (u, v) = standard_factorization(w);
                b.brackets[&u].bracket(&b.brackets[&v])
            };
            b.brackets.insert(w, p);
        }
        b
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        self.words.iter().copied().filter(|w| w.len() == d).collect()
    }

    pub fn is_lyndon(&self, w: &Word) -> bool {
        self.set.contains(w)
    }

    /// Standard bracketing `P(w)`.
    pub fn bracketing(&self, w: &Word) -> &QNC {
        &self.brackets[w]
    }

    /// Lyndon coordinates of `x` within tolerance `negligible`, or the first
    /// non-Lyndon leading word met (meaning `x` is not a Lie element).
    fn decompose_with<C: Coeff>(
        &self,
        x: &NCSeries<C>,
        negligible: impl Fn(&C) -> bool,
    ) -> Result<Vec<(Word, C)>, NotLie<C>> {
        assert!(x.max_degree() <= self.n, "basis too small");
        let mut out = Vec::new();
        let mut rest = x.clone();
        loop {
            let lead = rest
                .terms()
                .filter(|(_, c)| !negligible(c))
                .map(|(w, c)| (*w, c.clone()))
                .min_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.lex_cmp(b.0)));
            let Some((w, c)) = lead else { break };
            if !self.is_lyndon(&w) {
                return Err(NotLie { word: w, coeff: c });
            }
            let p: NCSeries<C> = self.brackets[&w].convert(rest.ctx().clone(), |r| C::from_rational_in(r, rest.ctx()));
            rest = rest.sub(&p.scale_c(&c));
            out.push((w, c));
        }
        Ok(out)
    }
}

/// Witness that a series is not in the free Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NotLie<C> {
    pub word: Word,
    pub coeff: C,
}

/// Element of the free Lie algebra stored by Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    coords: BTreeMap<Word, Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> LieElement {
        LieElement { n, coords: BTreeMap::new() }
    }

    /// Certifies that `x` is Lie by decomposing it completely.
    pub fn from_series(x: &QNC, basis: &LyndonBasis) -> Result<LieElement, NotLie<Rational>> {
        let coords = basis.decompose_with(x, |c| c.is_zero())?;
        Ok(LieElement { n: x.max_degree(), coords: coords.into_iter().collect() })
    }

    pub fn to_series(&self, basis: &LyndonBasis) -> QNC {
        let mut s = QNC::zero(self.n, ());
        for (w, c) in &self.coords {
            s = s.add(&basis.bracketing(w).truncate(self.n).scale(c));
        }
        s
    }

    pub fn coords(&self) -> &BTreeMap<Word, Rational> {
        &self.coords
    }

    pub fn coord(&self, w: &Word) -> Rational {
        self.coords.get(w).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }
}

/// True iff `x` lies in the free Lie algebra (within its truncation).
pub fn is_lie(x: &QNC, basis: &LyndonBasis) -> bool {
    x.constant_term().is_zero() && LieElement::from_series(x, basis).is_ok()
}

/// Approximate Lyndon coordinates of a complex series; entries below `tol` are ignored.
pub fn lyndon_coords_approx(
    x: &NCSeries<Complex64>,
    basis: &LyndonBasis,
    tol: f64,
) -> Result<Vec<(Word, Complex64)>, NotLie<Complex64>> {
    basis.decompose_with(x, |c| c.norm() <= tol)
}
