//! Transformation laws of the Jacobi form, checked numerically, and agreement of
//! the exact series with the theta quotient.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::theta::fzag_numeric;
use super::NumericError;
use crate::kzbform::jacobi_f;
use crate::report::Verdict;

const TWO_PI_I: Complex64 = Complex64 { re: 0.0, im: 2.0 * PI };

/// `F(ξ, η, τ) = 2πi F^Zag(2πiξ, 2πiη, τ)`.
fn f_xi(xi: Complex64, eta: Complex64, tau: Complex64) -> Result<Complex64, NumericError> {
    Ok(TWO_PI_I * fzag_numeric(TWO_PI_I * xi, TWO_PI_I * eta, tau)?)
}

fn e(z: Complex64) -> Complex64 {
    (TWO_PI_I * z).exp()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Largest relative residuals of the transformation laws over the samples.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LawReport {
    /// `(m, n) = (±1, *)`: `F(ξ+mτ+n, η) = e(-mη) F(ξ, η)`.
    pub elliptic: f64,
    /// `(m, n) = (0, 1)`.
    pub periodic: f64,
    /// `τ ↦ -1/τ`.
    pub modular: f64,
}

impl LawReport {
    pub fn max(&self) -> f64 {
        self.elliptic.max(self.periodic).max(self.modular)
    }
}

/// Samples are `(ξ, η, τ)`. Returns the residuals and a verdict against `tol`.
pub fn elliptic_modularity_check(
    samples: &[(Complex64, Complex64, Complex64)],
    tol: f64,
) -> (LawReport, Verdict) {
    let mut r = LawReport::default();
    let mut worst = None;
    let mut note = |what: &str, s: &(Complex64, Complex64, Complex64), res: f64, slot: &mut f64| {
        if res > *slot {
            *slot = res;
        }
        if res > tol && worst.is_none() {
            worst = Some(format!("{what} at xi={} eta={} tau={}: residual {res:e}", s.0, s.1, s.2));
        }
    };
    for s in samples {
        let (xi, eta, tau) = *s;
        let run = || -> Result<[f64; 4], NumericError> {
            let f = f_xi(xi, eta, tau)?;
            let mut out = [0.0; 4];
            for (i, (m, n)) in [(1.0, 0.0), (-1.0, 1.0), (0.0, 1.0)].iter().enumerate() {
                let lhs = f_xi(xi + tau * *m + *n, eta, tau)?;
                out[i] = rel(lhs, e(-eta * *m) * f);
            }
            let lhs = f_xi(xi / tau, eta / tau, -tau.inv())?;
            out[3] = rel(lhs, tau * e(xi * eta / tau) * f);
            Ok(out)
        };
        match run() {
            Ok(v) => {
                note("elliptic (1,0)", s, v[0], &mut r.elliptic);
                note("elliptic (-1,1)", s, v[1], &mut r.elliptic);
                note("periodicity (0,1)", s, v[2], &mut r.periodic);
                note("S-modularity", s, v[3], &mut r.modular);
            }
            Err(err) => {
                return (r, Verdict::fail(format!("xi={xi} eta={eta} tau={tau}: {err}")));
            }
        }
    }
    let detail = format!("elliptic {:.1e}, periodic {:.1e}, modular {:.1e}", r.elliptic, r.periodic, r.modular);
    (r, Verdict::from_witness(worst).with_detail(detail))
}

/// Default sample points: `τ ∈ {2i, 0.3+i}`.
pub fn default_law_samples() -> Vec<(Complex64, Complex64, Complex64)> {
    let c = Complex64::new;
    let mut out = Vec::new();
    for tau in [c(0.0, 2.0), c(0.3, 1.0)] {
        for (xi, eta) in [(c(0.13, 0.21), c(0.07, -0.11)), (c(-0.24, 0.05), c(0.19, 0.17)), (c(0.31, -0.08), c(-0.12, 0.26))] {
            out.push((xi, eta, tau));
        }
    }
    out
}

/// Largest `|𝔽_series − F^Zag|` over a `3×3×2` grid with `|u|, |v| ≤ 0.4` and
/// `τ ∈ {2i, 1+2i}`, the series taken to orders `(ku, kv, m)`.
pub fn series_vs_theta_check(ku: i32, kv: i32, m: i32, tol: f64) -> (f64, Verdict) {
    let c = Complex64::new;
    let f = jacobi_f(ku, kv, m).full();
    let us = [c(0.1, 0.2), c(-0.3, 0.1), c(0.25, -0.3)];
    let vs = [c(0.2, 0.0), c(-0.15, 0.35), c(0.0, 0.3)];
    let taus = [c(0.0, 2.0), c(1.0, 2.0)];
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for tau in taus {
        let q = (TWO_PI_I * tau).exp();
        for u in us {
            for v in vs {
                let series = f.eval(&[u, v, q]);
                match fzag_numeric(u, v, tau) {
                    Ok(z) => {
                        let d = (series - z).norm();
                        worst = worst.max(d);
                        if d > tol && witness.is_none() {
                            witness = Some(format!("u={u} v={v} tau={tau}: series {series} theta {z}"));
                        }
                    }
                    Err(err) => return (f64::INFINITY, Verdict::fail(format!("u={u} v={v} tau={tau}: {err}"))),
                }
            }
        }
    }
    (worst, Verdict::from_witness(witness).with_detail(format!("max deviation {worst:.1e} at orders ({ku},{kv},{m})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold() {
        let (r, v) = elliptic_modularity_check(&default_law_samples(), 1e-8);
        assert!(v.passed(), "{v:?}");
        assert!(r.elliptic < 1e-9 && r.periodic < 1e-12 && r.modular < 1e-8, "{r:?}");
    }

    #[test]
    fn wrong_automorphy_factor_is_caught() {
        let c = Complex64::new;
        let (xi, eta, tau) = (c(0.13, 0.21), c(0.07, -0.11), c(0.3, 1.0));
        let f = f_xi(xi, eta, tau).unwrap();
        let lhs = f_xi(xi / tau, eta / tau, -tau.inv()).unwrap();
        assert!(rel(lhs, tau * f) > 1e-3);
        let lhs = f_xi(xi + tau, eta, tau).unwrap();
        assert!(rel(lhs, f) > 1e-3);
    }

    #[test]
    fn series_agrees_with_theta() {
        let (d, v) = series_vs_theta_check(12, 12, 40, 1e-10);
        assert!(v.passed(), "{v:?} {d}");
        let f = jacobi_f(12, 12, 40).full();
        let c = Complex64::new;
        let tau = c(0.0, 2.0);
        let u = c(0.2, 0.0);
        let z = f.eval(&[u, u, (TWO_PI_I * tau).exp()]);
        assert!((z - fzag_numeric(u, u, tau).unwrap()).norm() < 1e-10);
    }
}
