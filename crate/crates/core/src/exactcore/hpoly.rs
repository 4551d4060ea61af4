//! The polynomials `h_{a,b}(x, y)` and the Bernoulli identity they satisfy.

use super::bernoulli::bernoulli_table;
use super::poly::CommPoly;
use super::rational::{binomial, factorial, Rational};

pub const XY: [&str; 2] = ["x", "y"];

fn x() -> CommPoly {
    CommPoly::var(&XY, 0)
}

fn y() -> CommPoly {
    CommPoly::var(&XY, 1)
}

fn xy_pow(i: u32, j: u32, c: Rational) -> CommPoly {
    CommPoly::monomial(&XY, vec![i, j], c)
}

/// `Σ_{i+j=2n-1} [C(2n, i+1) - C(2n, j+1)] x^i y^j`.
pub fn binomial_rhs(n: u32) -> CommPoly {
    let mut p = CommPoly::zero(&XY);
    for i in 0..2 * n {
        let j = 2 * n - 1 - i;
        p.add_term(vec![i, j], binomial(2 * n, i + 1) - binomial(2 * n, j + 1));
    }
    p
}

/// `h_{a,b}(x, y)`, a polynomial of total degree `2(a+b) - 1`. Panics for `a = b = 0`.
pub fn h_poly(a: u32, b: u32) -> CommPoly {
    assert!(a + b >= 1, "h_poly needs a + b >= 1");
    if a == 0 {
        return binomial_rhs(b).scale(&Rational::from_int(-1));
    }
    let head = xy_pow(2 * a - 1, 2 * b, Rational::ONE).sub(&xy_pow(2 * b, 2 * a - 1, Rational::ONE));
    let diff = xy_pow(0, 2 * a - 2, Rational::ONE).sub(&xy_pow(2 * a - 2, 0, Rational::ONE));
    let s = x().add(&y());
    let tail = if b >= 1 {
        s.pow(2 * b - 1).mul(&diff)
    } else {
        diff.div_exact(&s).expect("y^(2a-2) - x^(2a-2) must be divisible by x + y")
    };
    head.add(&x().mul(&y()).mul(&tail))
}

/// `Σ_{a+b=n} (2a-1) B_{2a}/(2a)! B_{2b}/(2b)! h_{a,b}` with the given Bernoulli values.
pub fn bernoulli_h_sum(n: u32, bern: &[Rational]) -> CommPoly {
    let mut acc = CommPoly::zero(&XY);
    for a in 0..=n {
        let b = n - a;
        let c = Rational::from_int(2 * a as i64 - 1) * &bern[2 * a as usize] / factorial(2 * a)
            * &bern[2 * b as usize]
            / factorial(2 * b);
        acc = acc.add(&h_poly(a, b).scale(&c));
    }
    acc
}

/// Outcome of the identity at one `n`: the homogeneous sum and the binomial form residual.
pub struct HIdentity {
    pub sum: CommPoly,
    pub binomial_residual: CommPoly,
}

impl HIdentity {
    pub fn holds(&self) -> bool {
        self.sum.is_zero() && self.binomial_residual.is_zero()
    }
}

pub fn bernoulli_h_identity_with(n: u32, bern: &[Rational]) -> HIdentity {
    let sum = bernoulli_h_sum(n, bern);
    let mut lhs = CommPoly::zero(&XY);
    let b2n = &bern[2 * n as usize];
    for a in 1..=n {
        let b = n - a;
        let c = Rational::from_int(2 * a as i64 - 1) * binomial(2 * n, 2 * a) * &bern[2 * a as usize]
            * &bern[2 * b as usize]
            / b2n;
        lhs = lhs.add(&h_poly(a, b).scale(&c));
    }
    // the right-hand side is h_{0,n} = -binomial_rhs(n)
    HIdentity { sum, binomial_residual: lhs.add(&binomial_rhs(n)) }
}

pub fn bernoulli_h_identity(n: u32) -> HIdentity {
    bernoulli_h_identity_with(n, &bernoulli_table(2 * n as usize))
}

/// Truncate to total degree `<= d`.
fn trunc(p: &CommPoly, d: u32) -> CommPoly {
    let mut out = CommPoly::zero(&p.vars());
    for (e, c) in p.terms() {
        if e.iter().sum::<u32>() <= d {
            out.add_term(e.clone(), c.clone());
        }
    }
    out
}

fn univariate(coeffs: &[Rational], var: usize) -> CommPoly {
    let mut p = CommPoly::zero(&XY);
    for (k, c) in coeffs.iter().enumerate() {
        let mut e = vec![0, 0];
        e[var] = k as u32;
        p.add_term(e, c.clone());
    }
    p
}

/// Residual of the generating-function identity behind the Bernoulli relation.
///
/// With `F(u,v) = u e^u/(e^u-1)^2 · (v/(e^v-1) + v/2)` the combination
/// `F(x,y) - F(y,x) + x/(x+y) F(y,x+y) - y/(x+y) F(x,x+y)` is multiplied by
/// `xy(x+y)` and returned truncated to `x^i y^j`, `i < u_order`, `j < v_order`.
///
/// `perturb` adds `u^2` to the first factor, a control that must break the identity.
/// (Odd terms of the second factor, such as `v/2`, are invisible to it.)
pub fn h_generating_residual(u_order: u32, v_order: u32, perturb: bool) -> CommPoly {
    let d = u_order + v_order + 2;
    let bern = bernoulli_table(d as usize + 2);
    // f(u) = u^2 e^u/(e^u-1)^2 = Σ (1-k) B_k u^k / k!
    let f: Vec<Rational> =
        (0..=d).map(|k| Rational::from_int(1 - k as i64) * &bern[k as usize] / factorial(k)).collect();
    // g(v) = v/(e^v-1) + v/2
    let mut f = f;
    if perturb {
        f[2] += Rational::ONE;
    }
    let mut g: Vec<Rational> = (0..=d).map(|k| &bern[k as usize] / factorial(k)).collect();
    g[1] += Rational::new(1, 2);
    let (fx, fy) = (univariate(&f, 0), univariate(&f, 1));
    let (gx, gy) = (univariate(&g, 0), univariate(&g, 1));
    let s = x().add(&y());
    let gs = trunc(&gy.substitute(1, &s), d);
    let t1 = y().mul(&s).mul(&trunc(&fx.mul(&gy), d));
    let t2 = x().mul(&s).mul(&trunc(&fy.mul(&gx), d));
    let t3 = x().pow(2).mul(&trunc(&fy.mul(&gs), d));
    let t4 = y().pow(2).mul(&trunc(&fx.mul(&gs), d));
    let total = t1.sub(&t2).add(&t3).sub(&t4);
    let mut out = CommPoly::zero(&XY);
    for (e, c) in total.terms() {
        if e[0] < u_order && e[1] < v_order {
            out.add_term(e.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_h() {
        let xm = x().sub(&y());
        assert_eq!(h_poly(0, 1), xm);
        assert_eq!(h_poly(1, 0), xm);
        assert_eq!(h_poly(1, 1), x().mul(&y()).mul(&y().sub(&x())));
    }

    #[test]
    fn degrees_and_divisibility() {
        for a in 0..6 {
            for b in 0..6 {
                if a + b == 0 {
                    continue;
                }
                let h = h_poly(a, b);
                assert_eq!(h.weighted_degree(&[1, 1]), Some(2 * (a + b) as i64 - 1), "h_{a},{b}");
                // antisymmetric under x <-> y, hence divisible by y - x
                assert!(h.div_exact(&y().sub(&x())).is_some(), "h_{a},{b}");
            }
        }
    }

    #[test]
    fn divisible_by_xy() {
        let xy = x().mul(&y());
        for a in 1..6u32 {
            for b in 1..5u32 {
                assert!(h_poly(a, b).div_exact(&xy).is_some(), "h_{a},{b}");
            }
        }
    }

    #[test]
    fn identity_small_n() {
        for n in 1..=8 {
            let r = bernoulli_h_identity(n);
            assert!(r.holds(), "n = {n}: {} | {}", r.sum, r.binomial_residual);
        }
    }

    #[test]
    fn corrupted_bernoulli_fails() {
        // at n = 1 both terms carry B_0 B_2, so a wrong B_2 cancels; n = 2 detects it
        let mut b = bernoulli_table(4);
        b[2] = Rational::new(1, 5);
        assert!(bernoulli_h_sum(1, &b).is_zero());
        assert!(!bernoulli_h_sum(2, &b).is_zero());
    }

    #[test]
    fn generating_function() {
        assert!(h_generating_residual(8, 8, false).is_zero());
        assert!(h_generating_residual(2, 2, false).is_zero());
        assert!(!h_generating_residual(8, 8, true).is_zero());
    }
}
