//! `θ(u, τ) = Σ (-1)^n q^{(n+½)²/2} e^{(n+½)u}` and `F^Zag = θ'(0)θ(u+v)/(θ(u)θ(v))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{finite, NumericError};

/// Number of terms `|n| ≤ N` making the tail below `1e-18` relative to the
/// leading term, including a factor `|n+½|^k` for the `k`-th derivative.
pub fn theta_terms(u: Complex64, tau: Complex64, k: usize) -> usize {
    let b = PI * tau.im;
    let a = u.re.abs();
    let budget = 42.0 + 2.0 * k as f64;
    // b x² - a x > budget + k ln x
    let mut x: f64 = 0.5;
    while b * x * x - a * x < budget + k as f64 * x.max(1.0).ln() {
        x += 1.0;
    }
    x as usize + 2
}

/// `θ^{(j)}(u, τ)` for `j = 0..=k`.
pub fn theta_derivs(u: Complex64, tau: Complex64, k: usize) -> Result<Vec<Complex64>, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::NotInUpperHalfPlane(tau.im));
    }
    let terms = theta_terms(u, tau, k) as i64;
    let i_pi_tau = Complex64::new(0.0, PI) * tau;
    let mut out = vec![Complex64::new(0.0, 0.0); k + 1];
    for n in -terms - 1..=terms {
        let x = n as f64 + 0.5;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let e = (i_pi_tau * (x * x) + u * x).exp() * sign;
        let mut p = 1.0;
        for o in out.iter_mut() {
            *o += e * p;
            p *= x;
        }
    }
    for z in &out {
        finite(*z)?;
    }
    Ok(out)
}

pub fn theta(u: Complex64, tau: Complex64) -> Result<Complex64, NumericError> {
    Ok(theta_derivs(u, tau, 0)?[0])
}

fn pole_guard(u: Complex64, th: Complex64, scale: Complex64) -> Result<(), NumericError> {
    let tol = 1e-9;
    if th.norm() < tol * scale.norm().max(1e-300) {
        Err(NumericError::PoleProximity(u, tol))
    } else {
        Ok(())
    }
}

pub fn fzag_numeric(u: Complex64, v: Complex64, tau: Complex64) -> Result<Complex64, NumericError> {
    let d0 = theta_derivs(Complex64::new(0.0, 0.0), tau, 1)?;
    let tu = theta(u, tau)?;
    let tv = theta(v, tau)?;
    pole_guard(u, tu, d0[1])?;
    pole_guard(v, tv, d0[1])?;
    finite(d0[1] * theta(u + v, tau)? / (tu * tv))
}

/// `f_s(u)` for `s = -1..=smax` with `F^Zag(u, v) = Σ_s f_s(u) v^s`; `f_{-1} = 1`.
pub fn fzag_v_coeffs(u: Complex64, tau: Complex64, smax: usize) -> Result<Vec<Complex64>, NumericError> {
    let k = smax + 2;
    let at0 = theta_derivs(Complex64::new(0.0, 0.0), tau, k + 1)?;
    let at_u = theta_derivs(u, tau, k)?;
    pole_guard(u, at_u[0], at0[1])?;
    // θ(v)/(θ'(0) v) = Σ_i c_i v^{2i}, c_i = θ^{(2i+1)}(0)/((2i+1)! θ'(0))
    let half = k / 2 + 1;
    let mut fact = vec![1.0f64; 2 * half + 2];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * i as f64;
    }
    let c: Vec<Complex64> = (0..half)
        .map(|i| if 2 * i + 1 < at0.len() { at0[2 * i + 1] / (at0[1] * fact[2 * i + 1]) } else { Complex64::new(0.0, 0.0) })
        .collect();
    // e = 1/c as an even series
    let mut e = vec![Complex64::new(0.0, 0.0); half];
    e[0] = Complex64::new(1.0, 0.0) / c[0];
    for i in 1..half {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 1..=i {
            s += c[j] * e[i - j];
        }
        e[i] = -s / c[0];
    }
    let mut out = Vec::with_capacity(smax + 2);
    for s in -1..=smax as i64 {
        // v^s from θ^{(j)}(u) v^j / j! times e_i v^{2i-1}
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..half {
            let j = s + 1 - 2 * i as i64;
            if j >= 0 && (j as usize) < at_u.len() {
                acc += at_u[j as usize] / fact[j as usize] * e[i];
            }
        }
        out.push(finite(acc / at_u[0])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // oracle: fixed 50-term symmetric sum in the opposite order
    fn theta_direct(u: Complex64, tau: Complex64) -> Complex64 {
        let mut s = c(0.0, 0.0);
        for n in (-51..=50).rev() {
            let x = n as f64 + 0.5;
            let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            s += (c(0.0, PI) * tau * x * x + u * x).exp() * sign;
        }
        s
    }

    #[test]
    fn theta_values() {
        let i = c(0.0, 1.0);
        assert!(theta(c(0.0, 0.0), i).unwrap().norm() < 1e-14);
        for u in [c(0.3, 0.0), c(-0.2, 0.7), c(1.1, -0.4)] {
            assert!((theta(u, i).unwrap() + theta(-u, i).unwrap()).norm() < 1e-13);
            assert!((theta(u, i).unwrap() - theta_direct(u, i)).norm() < 1e-14);
        }
        assert!(theta(c(0.1, 0.0), c(0.0, -1.0)).is_err());
    }

    #[test]
    fn fzag_symmetry_and_parity() {
        let tau = c(0.2, 1.3);
        for (u, v) in [(c(0.3, 0.1), c(-0.2, 0.4)), (c(1.0, 0.5), c(0.7, -0.2))] {
            let f = fzag_numeric(u, v, tau).unwrap();
            assert!((f - fzag_numeric(v, u, tau).unwrap()).norm() < 1e-12);
            assert!((f + fzag_numeric(-u, -v, tau).unwrap()).norm() < 1e-12);
        }
        assert!(fzag_numeric(c(0.0, 0.0), c(0.3, 0.0), tau).is_err());
    }

    #[test]
    fn v_coefficients_resum() {
        let tau = c(0.1, 1.5);
        let u = c(0.4, 0.9);
        let f = fzag_v_coeffs(u, tau, 14).unwrap();
        assert!((f[0] - 1.0).norm() < 1e-14);
        let v = c(0.05, -0.03);
        let mut s = c(0.0, 0.0);
        for (k, fk) in f.iter().enumerate() {
            s += fk * v.powi(k as i32 - 1);
        }
        assert!((s - fzag_numeric(u, v, tau).unwrap()).norm() < 1e-11);
    }
}
