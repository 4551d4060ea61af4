//! Dense truncated series in two noncommuting letters with complex coefficients.

use num_complex::Complex64;

use crate::freelie::{NCSeries, Word};

/// Coefficients of every word of length `≤ n`, the word `w` stored at
/// `2^{|w|} - 1 + bits(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseNC {
    n: usize,
    data: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
fn offset(len: usize) -> usize {
    (1 << len) - 1
}

impl DenseNC {
    pub fn zero(n: usize) -> DenseNC {
        DenseNC { n, data: vec![ZERO; offset(n + 1)] }
    }

    pub fn one(n: usize) -> DenseNC {
        let mut x = DenseNC::zero(n);
        x.data[0] = ONE;
        x
    }

    pub fn letter(n: usize, l: u8) -> DenseNC {
        let mut x = DenseNC::zero(n);
        if n >= 1 {
            x.data[offset(1) + l as usize] = ONE;
        }
        x
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, w: Word) -> Complex64 {
        if w.len() > self.n {
            return ZERO;
        }
        self.data[offset(w.len()) + w.bits() as usize]
    }

    pub fn set(&mut self, w: Word, c: Complex64) {
        self.data[offset(w.len()) + w.bits() as usize] = c;
    }

    pub fn add(&self, o: &DenseNC) -> DenseNC {
        DenseNC { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &DenseNC) -> DenseNC {
        DenseNC { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: Complex64) -> DenseNC {
        DenseNC { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn axpy(&mut self, c: Complex64, o: &DenseNC) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += c * b;
        }
    }

    pub fn mul(&self, o: &DenseNC) -> DenseNC {
        let n = self.n;
        let mut out = DenseNC::zero(n);
        for la in 0..=n {
            for ba in 0..(1usize << la) {
                let ca = self.data[offset(la) + ba];
                if ca == ZERO {
                    continue;
                }
                for lb in 0..=n - la {
                    let base = offset(la + lb);
                    for bb in 0..(1usize << lb) {
                        let cb = o.data[offset(lb) + bb];
                        if cb != ZERO {
                            out.data[base + (ba | (bb << la))] += ca * cb;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, o: &DenseNC) -> DenseNC {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.data[0]
    }

    /// `exp(x)` for `x` without constant term.
    pub fn exp(&self) -> DenseNC {
        let mut acc = DenseNC::one(self.n);
        let mut term = DenseNC::one(self.n);
        for k in 1..=self.n {
            term = term.mul(self).scale(Complex64::new(1.0 / k as f64, 0.0));
            acc = acc.add(&term);
        }
        acc
    }

    /// `log(x)` for `x` with constant term 1.
    pub fn log(&self) -> DenseNC {
        let y = self.sub(&DenseNC::one(self.n));
        let mut acc = DenseNC::zero(self.n);
        let mut p = DenseNC::one(self.n);
        for k in 1..=self.n {
            p = p.mul(&y);
            let s = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc.axpy(Complex64::new(s / k as f64, 0.0), &p);
        }
        acc
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> DenseNC {
        let y = self.sub(&DenseNC::one(self.n));
        let mut acc = DenseNC::one(self.n);
        let mut p = DenseNC::one(self.n);
        for k in 1..=self.n {
            p = p.mul(&y);
            let s = if k % 2 == 1 { -1.0 } else { 1.0 };
            acc.axpy(Complex64::new(s, 0.0), &p);
        }
        acc
    }

    pub fn swap_letters(&self) -> DenseNC {
        let mut out = DenseNC::zero(self.n);
        for l in 0..=self.n {
            let mask = (1usize << l) - 1;
            for b in 0..(1usize << l) {
                out.data[offset(l) + (!b & mask)] = self.data[offset(l) + b];
            }
        }
        out
    }

    /// The anti-automorphism reversing every word.
    pub fn reverse_words(&self) -> DenseNC {
        let mut out = DenseNC::zero(self.n);
        for l in 0..=self.n {
            for b in 0..(1usize << l) {
                let r = if l == 0 { 0 } else { (b as u32).reverse_bits() as usize >> (32 - l) };
                out.data[offset(l) + r] = self.data[offset(l) + b];
            }
        }
        out
    }

    pub fn degree_part(&self, d: usize) -> DenseNC {
        let mut out = DenseNC::zero(self.n);
        if d <= self.n {
            let r = offset(d)..offset(d + 1);
            out.data[r.clone()].copy_from_slice(&self.data[r]);
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn to_ncseries(&self) -> NCSeries<Complex64> {
        let mut out = NCSeries::zero(self.n, ());
        for l in 0..=self.n {
            for b in 0..(1usize << l) {
                let c = self.data[offset(l) + b];
                if c != ZERO {
                    let letters: Vec<u8> = (0..l).map(|i| ((b >> i) & 1) as u8).collect();
                    out.add_term(Word::from_letters(&letters), c);
                }
            }
        }
        out
    }

    pub fn from_ncseries(x: &NCSeries<Complex64>) -> DenseNC {
        let mut out = DenseNC::zero(x.max_degree());
        for (w, c) in x.terms() {
            out.set(*w, *c);
        }
        out
    }
}
