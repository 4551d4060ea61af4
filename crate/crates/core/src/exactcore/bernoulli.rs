//! Bernoulli numbers and related generating series.

use super::rational::{binomial, factorial, Rational};
use super::series::LaurentSeries;

/// `B_0, ..., B_n` with the convention `x/(e^x - 1) = Σ B_k x^k / k!` (so `B_1 = -1/2`).
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(Rational::ONE);
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(Rational::ZERO);
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut s = Rational::ZERO;
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += binomial(m as u32 + 1, k as u32) * bk;
            }
        }
        b.push(-s / Rational::from_int(m as i64 + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().unwrap()
}

/// `½ coth(u/2) = Σ_{m≥0} B_{2m}/(2m)! u^{2m-1}`, keeping `k` coefficients
/// starting at `u^-1` (so the series is known through `u^{k-2}`).
pub fn coth_half_series(k: i32) -> LaurentSeries {
    assert!(k >= 1);
    let order = k - 1;
    let mut s = LaurentSeries::zero(-1, order);
    let b = bernoulli_table(k as usize + 1);
    let mut m = 0;
    while 2 * m - 1 < order {
        s.set(2 * m - 1, &b[2 * m as usize] / &factorial(2 * m as u32));
        m += 1;
    }
    s
}
