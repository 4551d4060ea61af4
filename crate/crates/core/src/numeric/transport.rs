//! Chen transport of the KZ connection on `P¹ − {0, 1, ∞}` and of the KZB
//! connection along a fiber, by 4th-order Magnus integration.
//!
//! Transports compose as `T(αβ) = T(β)·T(α)`, `α` traversed first.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dense::DenseNC;
use super::theta::fzag_v_coeffs;
use super::NumericError;
use crate::freelie::{grouplike_residual, lyndon_coords_approx, LyndonBasis, Word, A, T};
use crate::report::Verdict;

pub type NumericNCSeries = DenseNC;

const TWO_PI_I: Complex64 = Complex64 { re: 0.0, im: 2.0 * PI };
const ZETA3: f64 = 1.202_056_903_159_594_3;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Solution of `S' = S·a(t)` on `[0, 1]` with `S(0) = 1`; the result is later
/// reversed to give the transport in the composition convention above.
fn magnus_right(
    n: usize,
    steps: usize,
    a: impl Fn(f64) -> Result<DenseNC, NumericError>,
) -> Result<DenseNC, NumericError> {
    let h = 1.0 / steps as f64;
    let g = 0.5 - 3f64.sqrt() / 6.0;
    let k = 3f64.sqrt() / 12.0 * h * h;
    let mut s = DenseNC::one(n);
    for i in 0..steps {
        let t0 = i as f64 * h;
        let a1 = a(t0 + g * h)?;
        let a2 = a(t0 + (1.0 - g) * h)?;
        let mut om = a1.add(&a2).scale(c(h / 2.0));
        if n >= 2 {
            om.axpy(c(k), &a1.bracket(&a2));
        }
        s = s.mul(&om.exp());
    }
    Ok(s)
}

/// `ω_KZ` pulled back to `t ↦ p + t(q − p)`, in the right convention.
fn kz_segment_right(n: usize, p: Complex64, q: Complex64, steps: usize) -> Result<DenseNC, NumericError> {
    let x0 = DenseNC::letter(n, T);
    let x1 = DenseNC::letter(n, A);
    let d = q - p;
    magnus_right(n, steps, |t| {
        let w = p + d * t;
        let mut a = x0.scale(d / w);
        a.axpy(d / (w - 1.0), &x1);
        Ok(a)
    })
}

/// `H(w) = Σ h_k w^k` with `n h_n − [h_n, X₀] = −Σ_{k<n} h_k X₁`, `h_0 = 1`;
/// then `S(0⃗ → w) = e^{X₀ log w} H(w)` in the right convention.
fn local0_right(n: usize, w: Complex64) -> DenseNC {
    let x0 = DenseNC::letter(n, T);
    let x1 = DenseNC::letter(n, A);
    let terms = (-(40.0f64) / w.norm().ln()).ceil().max(8.0) as usize + 8;
    let mut partial = DenseNC::one(n);
    let mut sum = DenseNC::one(n);
    let mut wk = c(1.0);
    for k in 1..=terms {
        let kf = k as f64;
        let r = partial.mul(&x1).scale(c(-1.0));
        // (k - R)^{-1} r with R(y) = y X₀ − X₀ y nilpotent
        let mut y = r.scale(c(1.0 / kf));
        let mut acc = y.clone();
        for _ in 0..n {
            y = y.bracket(&x0).scale(c(1.0 / kf));
            acc = acc.add(&y);
        }
        partial = partial.add(&acc);
        wk *= w;
        sum.axpy(wk, &acc);
    }
    x0.scale(w.ln()).exp().mul(&sum)
}

/// `S(1⃗ → w)` with tangent `−∂/∂w` at 1, via `w ↦ 1 − w`.
fn local1_right(n: usize, w: Complex64) -> DenseNC {
    local0_right(n, 1.0 - w).swap_letters()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KzEndpoint {
    /// Tangential base point `∂/∂w` at 0.
    Tangent0,
    /// Tangential base point `−∂/∂w` at 1.
    Tangent1,
    Point(Complex64),
}

impl KzEndpoint {
    fn location(self) -> Complex64 {
        match self {
            KzEndpoint::Tangent0 => c(0.0),
            KzEndpoint::Tangent1 => c(1.0),
            KzEndpoint::Point(w) => w,
        }
    }
}

/// A polygonal path; tangential base points may only occur at the ends.
#[derive(Clone, Debug, PartialEq)]
pub struct KzPath(pub Vec<KzEndpoint>);

impl KzPath {
    pub fn reversed(&self) -> KzPath {
        KzPath(self.0.iter().rev().copied().collect())
    }
}

fn segment_distance(p: Complex64, q: Complex64, z: Complex64) -> f64 {
    let d = q - p;
    if d.norm() == 0.0 {
        return (z - p).norm();
    }
    let t = (((z - p) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (p + d * t - z).norm()
}

fn kz_right(n: usize, path: &KzPath, steps: usize) -> Result<DenseNC, NumericError> {
    let pts = &path.0;
    if pts.is_empty() {
        return Err(NumericError::BadPath("empty path".into()));
    }
    for (i, p) in pts.iter().enumerate() {
        let interior = i != 0 && i + 1 != pts.len();
        if let KzEndpoint::Point(w) = p {
            if w.norm() < 1e-12 || (w - 1.0).norm() < 1e-12 {
                return Err(NumericError::BadPath(format!("vertex {w} is singular")));
            }
        } else if interior {
            return Err(NumericError::BadPath("tangential base point inside the path".into()));
        }
    }
    if pts.len() == 1 {
        return match pts[0] {
            KzEndpoint::Point(_) => Ok(DenseNC::one(n)),
            _ => Err(NumericError::BadPath("a lone tangential base point".into())),
        };
    }
    let mut s = DenseNC::one(n);
    let last = pts.len() - 2;
    for (i, win) in pts.windows(2).enumerate() {
        let (mut p, mut q) = (win[0].location(), win[1].location());
        let len = (q - p).norm();
        let dir = (q - p) / len;
        let off = len.min(0.5) / 2.0;
        let mut pre = None;
        let mut post = None;
        if i == 0 {
            match win[0] {
                KzEndpoint::Tangent0 => {
                    p = dir * off;
                    pre = Some(local0_right(n, p));
                }
                KzEndpoint::Tangent1 => {
                    p = 1.0 + dir * off;
                    pre = Some(local1_right(n, p));
                }
                _ => {}
            }
        }
        if i == last {
            match win[1] {
                KzEndpoint::Tangent0 => {
                    q -= dir * off;
                    post = Some(local0_right(n, q).inverse());
                }
                KzEndpoint::Tangent1 => {
                    q -= dir * off;
                    post = Some(local1_right(n, q).inverse());
                }
                _ => {}
            }
        }
        for z in [c(0.0), c(1.0)] {
            if segment_distance(p, q, z) < 1e-9 {
                return Err(NumericError::BadPath(format!("segment {p} -> {q} meets {z}")));
            }
        }
        if let Some(x) = pre {
            s = s.mul(&x);
        }
        s = s.mul(&kz_segment_right(n, p, q, steps)?);
        if let Some(x) = post {
            s = s.mul(&x);
        }
    }
    Ok(s)
}

/// Degree-`≤ n` transport of `ω_KZ = X₀ dw/w + X₁ dw/(w−1)` along `path`,
/// `X₀ = T`, `X₁ = A`, with `steps` Magnus steps per segment. Tangential
/// endpoints use the exact local solution `e^{X₀ log w}·H(w)` near 0 and its
/// image under `w ↦ 1 − w` near 1.
pub fn kz_transport(n: usize, path: &KzPath, steps: usize) -> Result<DenseNC, NumericError> {
    Ok(kz_right(n, path, steps.max(1))?.reverse_words())
}

/// As [`kz_transport`], with the error estimated by comparing `steps` against
/// `2·steps` (4th order). Returns the finer result and the estimate.
pub fn kz_transport_checked(n: usize, path: &KzPath, steps: usize, tol: f64) -> Result<(DenseNC, f64), NumericError> {
    let a = kz_transport(n, path, steps)?;
    let b = kz_transport(n, path, 2 * steps)?;
    let est = b.sub(&a).max_norm() / 15.0;
    if est > tol {
        return Err(NumericError::StepsTooFew { steps, estimate: est, tolerance: tol });
    }
    Ok((b, est))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssociatorReport {
    pub degree: usize,
    pub steps: usize,
    /// Lyndon coordinates of `log Φ`, words over `X₀ = T`, `X₁ = A`.
    pub coords: Vec<(Word, Complex64)>,
    /// Coefficients of `[X₀,X₁]`, `[X₀,[X₀,X₁]]`, `[X₀,[X₀,[X₀,X₁]]]` where present.
    pub measured: Vec<(String, Complex64, f64)>,
    pub degree1: f64,
    pub grouplike_residual: f64,
    /// Estimated error of `Φ` at `steps`: `16/15` of the difference against `2·steps`.
    pub error_estimate: f64,
}

impl AssociatorReport {
    /// Largest `| |coefficient| − reference |`.
    pub fn max_abs_deviation(&self) -> f64 {
        self.measured.iter().map(|(_, z, r)| (z.norm() - r).abs()).fold(0.0, f64::max)
    }
}

/// `Φ = T(0⃗ → 1⃗)` along `[0, 1]` and its logarithm.
pub fn associator(n: usize, steps: usize) -> Result<AssociatorReport, NumericError> {
    let path = KzPath(vec![KzEndpoint::Tangent0, KzEndpoint::Tangent1]);
    let phi = kz_transport(n, &path, steps)?;
    let fine = kz_transport(n, &path, 2 * steps)?;
    let log = phi.log();
    let basis = LyndonBasis::new(n);
    let coords = lyndon_coords_approx(&log.to_ncseries(), &basis, 1e-9).map_err(|_| NumericError::NonFinite)?;
    let refs = [
        ("[X0,X1]", "TA", PI * PI / 6.0),
        ("[X0,[X0,X1]]", "TTA", ZETA3),
        ("[X0,[X0,[X0,X1]]]", "TTTA", PI.powi(4) / 90.0),
    ];
    let measured = refs
        .iter()
        .filter(|(_, w, _)| w.len() <= n)
        .map(|(name, w, r)| {
            let w = Word::parse(w).unwrap();
            let z = coords.iter().find(|(x, _)| *x == w).map(|(_, z)| *z).unwrap_or(c(0.0));
            (name.to_string(), z, *r)
        })
        .collect();
    Ok(AssociatorReport {
        degree: n,
        steps,
        coords,
        measured,
        degree1: log.degree_part(1).max_norm(),
        grouplike_residual: grouplike_residual(&phi.to_ncseries()),
        error_estimate: fine.sub(&phi).max_norm() * 16.0 / 15.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberLoop {
    /// `ξ: x → x + 1`.
    Alpha,
    /// `ξ: x → x + τ`, followed by `e^{−T}`.
    Beta,
}

/// Transport of `ν₁ = T𝔽(u, T)·A du`, `u = 2πiξ`, along the straight segment
/// `ξ: from → to`.
pub fn fiber_segment(
    tau: Complex64,
    from: Complex64,
    to: Complex64,
    n: usize,
    steps: usize,
) -> Result<DenseNC, NumericError> {
    if tau.im <= 0.0 {
        return Err(NumericError::NotInUpperHalfPlane(tau.im));
    }
    let t = DenseNC::letter(n, T);
    let mut ads = vec![DenseNC::letter(n, A)];
    for k in 1..n {
        let next = t.bracket(&ads[k - 1]);
        ads.push(next);
    }
    let du = TWO_PI_I * (to - from);
    let s = magnus_right(n, steps.max(1), |s| {
        let u = TWO_PI_I * (from + (to - from) * s);
        let f = fzag_v_coeffs(u, tau, n.saturating_sub(1))?;
        let mut a = DenseNC::zero(n);
        for (k, ad) in ads.iter().enumerate() {
            a.axpy(f[k] * du, ad);
        }
        Ok(a)
    })?;
    Ok(s.reverse_words())
}

/// `Θ(γ)`: the transport along `γ` times `e^{−mT}` on the right (`m = 1` for β).
pub fn fiber_transport(
    tau: Complex64,
    x: Complex64,
    lp: FiberLoop,
    n: usize,
    steps: usize,
) -> Result<DenseNC, NumericError> {
    match lp {
        FiberLoop::Alpha => fiber_segment(tau, x, x + 1.0, n, steps),
        FiberLoop::Beta => {
            let s = fiber_segment(tau, x, x + tau, n, steps)?;
            Ok(s.mul(&DenseNC::letter(n, T).scale(c(-1.0)).exp()))
        }
    }
}

fn deg1(x: &DenseNC) -> (Complex64, Complex64) {
    (x.coeff(Word::letter(T)), x.coeff(Word::letter(A)))
}

/// Degree-1 classes of `Θ(α)`, `Θ(β)`, the commutator, group-likeness and
/// path reversal at base point `x`.
pub fn fiber_classes_check(
    tau: Complex64,
    x: Complex64,
    n: usize,
    steps: usize,
    tol: f64,
) -> Result<Verdict, NumericError> {
    let a = fiber_transport(tau, x, FiberLoop::Alpha, n, steps)?;
    let b = fiber_transport(tau, x, FiberLoop::Beta, n, steps)?;
    let mut fails = Vec::new();
    let (at, aa) = deg1(&a);
    let ea = (at.norm()).max((aa - TWO_PI_I).norm());
    if ea > tol {
        fails.push(format!("Θ(α) degree 1 is {at}·T + {aa}·A"));
    }
    let (bt, ba) = deg1(&b);
    let eb = ((bt + 1.0).norm()).max((ba - TWO_PI_I * tau).norm());
    if eb > tol {
        fails.push(format!("Θ(β) degree 1 is {bt}·T + {ba}·A"));
    }
    let comm = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
    let (ct, ca) = deg1(&comm);
    let ec = ct.norm().max(ca.norm());
    if ec > tol {
        fails.push(format!("commutator degree 1 is {ct}·T + {ca}·A"));
    }
    // the commutator encircles the puncture: its log starts with 2πi[T, A]
    let comm2 = if n >= 2 { comm.log().coeff(Word::parse("TA").unwrap()) } else { TWO_PI_I };
    if (comm2 - TWO_PI_I).norm() > tol {
        fails.push(format!("commutator log has [T,A]-coefficient {comm2}"));
    }
    let gl = grouplike_residual(&a.to_ncseries()).max(grouplike_residual(&b.to_ncseries()));
    if gl > 1e-8 {
        fails.push(format!("group-likeness residual {gl:e}"));
    }
    let fwd = fiber_segment(tau, x, x + tau, n, steps)?;
    let back = fiber_segment(tau, x + tau, x, n, steps)?;
    let rev = back.mul(&fwd).sub(&DenseNC::one(n)).max_norm();
    if rev > 1e-8 {
        fails.push(format!("reversal residual {rev:e}"));
    }
    let detail = format!(
        "deviations α {ea:.1e}, β {eb:.1e}, commutator {ec:.1e}; commutator log [T,A]-coefficient {comm2:.6}; group-like {gl:.1e}; reversal {rev:.1e}"
    );
    Ok(if fails.is_empty() { Verdict::pass() } else { Verdict::fail(fails.join("; ")) }.with_detail(detail))
}

/// `[[1, −log λ], [0, 2πi]]`.
pub fn limit_period_matrix(lambda: Complex64) -> [[Complex64; 2]; 2] {
    [[c(1.0), -lambda.ln()], [c(0.0), TWO_PI_I]]
}

/// Rebuilds the limit period matrix from the degree-1 parts of `Θ(α)`, `Θ(β)` at
/// `τ = (log λ − t)/2πi`, i.e. `q = λe^{−t}`, and compares within `tol`.
pub fn limit_period_check(
    lambda: Complex64,
    t: f64,
    steps: usize,
    tol: f64,
) -> Result<([[Complex64; 2]; 2], Verdict), NumericError> {
    if lambda.norm() == 0.0 {
        return Err(NumericError::BadPath("λ = 0".into()));
    }
    let tau = (lambda.ln() - t) / TWO_PI_I;
    let x = 0.31 + 0.37 * tau;
    let a = fiber_transport(tau, x, FiberLoop::Alpha, 2, steps)?;
    let b = fiber_transport(tau, x, FiberLoop::Beta, 2, steps)?;
    let (at, aa) = deg1(&a);
    let (bt, ba) = deg1(&b);
    let num = [[-bt, -ba - t], [at, aa]];
    let exact = limit_period_matrix(lambda);
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            dev = dev.max((num[i][j] - exact[i][j]).norm());
        }
    }
    let v = if dev <= tol {
        Verdict::pass()
    } else {
        Verdict::fail(format!("numeric {num:?} vs {exact:?}"))
    };
    Ok((num, v.with_detail(format!("tau = {tau:.4}, max deviation {dev:.1e}"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::grouplike_residual;

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // oracle: classical RK4 on S' = S a(t)
    fn rk4_right(n: usize, p: Complex64, q: Complex64, steps: usize) -> DenseNC {
        let x0 = DenseNC::letter(n, T);
        let x1 = DenseNC::letter(n, A);
        let d = q - p;
        let a = |t: f64| {
            let w = p + d * t;
            x0.scale(d / w).add(&x1.scale(d / (w - 1.0)))
        };
        let h = 1.0 / steps as f64;
        let mut s = DenseNC::one(n);
        for i in 0..steps {
            let t = i as f64 * h;
            let k1 = s.mul(&a(t));
            let k2 = s.add(&k1.scale(c(h / 2.0))).mul(&a(t + h / 2.0));
            let k3 = s.add(&k2.scale(c(h / 2.0))).mul(&a(t + h / 2.0));
            let k4 = s.add(&k3.scale(c(h))).mul(&a(t + h));
            let inc = k1.add(&k2.scale(c(2.0))).add(&k3.scale(c(2.0))).add(&k4);
            s = s.add(&inc.scale(c(h / 6.0)));
        }
        s
    }

    #[test]
    fn magnus_matches_rk4() {
        let (p, q) = (cz(0.2, 0.3), cz(0.8, -0.4));
        let r = rk4_right(4, p, q, 4000);
        let e1 = kz_segment_right(4, p, q, 100).unwrap().sub(&r).max_norm();
        let e2 = kz_segment_right(4, p, q, 200).unwrap().sub(&r).max_norm();
        assert!(e2 < 1e-9);
        // fourth order
        assert!(e1 / e2 > 12.0 && e1 / e2 < 20.0, "{e1} {e2}");
    }

    #[test]
    fn local_series_solves_the_equation() {
        // S(0⃗→w2) = S(0⃗→w1)·S(w1→w2) in the right convention
        let (w1, w2) = (cz(0.1, 0.05), cz(0.3, -0.1));
        let lhs = local0_right(4, w2);
        let rhs = local0_right(4, w1).mul(&kz_segment_right(4, w1, w2, 400).unwrap());
        assert!(lhs.sub(&rhs).max_norm() < 1e-11);
        let (w1, w2) = (cz(0.9, 0.05), cz(0.7, 0.1));
        let lhs = local1_right(4, w2);
        let rhs = local1_right(4, w1).mul(&kz_segment_right(4, w1, w2, 400).unwrap());
        assert!(lhs.sub(&rhs).max_norm() < 1e-11);
    }

    #[test]
    fn constant_path_and_composition() {
        let p = KzPath(vec![KzEndpoint::Point(cz(0.3, 0.2))]);
        assert_eq!(kz_transport(3, &p, 10).unwrap(), DenseNC::one(3));
        let a = KzPath(vec![KzEndpoint::Point(cz(0.3, 0.2)), KzEndpoint::Point(cz(0.6, -0.3))]);
        let b = KzPath(vec![KzEndpoint::Point(cz(0.6, -0.3)), KzEndpoint::Point(cz(-0.4, 0.5))]);
        let ab = KzPath(vec![
            KzEndpoint::Point(cz(0.3, 0.2)),
            KzEndpoint::Point(cz(0.6, -0.3)),
            KzEndpoint::Point(cz(-0.4, 0.5)),
        ]);
        let ta = kz_transport(4, &a, 256).unwrap();
        let tb = kz_transport(4, &b, 256).unwrap();
        let tab = kz_transport(4, &ab, 256).unwrap();
        assert!(tab.sub(&tb.mul(&ta)).max_norm() < 1e-9);
        assert!(grouplike_residual(&tab.to_ncseries()) < 1e-9);
        let back = kz_transport(4, &ab.reversed(), 256).unwrap();
        assert!(back.mul(&tab).sub(&DenseNC::one(4)).max_norm() < 1e-8);
        // a loop around 0 has monodromy exp(2πi X₀)
        let lp = KzPath(vec![
            KzEndpoint::Point(cz(0.3, 0.0)),
            KzEndpoint::Point(cz(0.0, 0.3)),
            KzEndpoint::Point(cz(-0.3, 0.0)),
            KzEndpoint::Point(cz(0.0, -0.3)),
            KzEndpoint::Point(cz(0.3, 0.0)),
        ]);
        let m = kz_transport(3, &lp, 256).unwrap();
        assert!((m.coeff(Word::letter(T)) - TWO_PI_I).norm() < 1e-9);
        assert!(kz_transport(3, &KzPath(vec![KzEndpoint::Point(cz(-1.0, 0.0)), KzEndpoint::Point(cz(1.5, 0.0))]), 8).is_err());
    }

    #[test]
    fn associator_zeta_values() {
        let r = associator(4, 256).unwrap();
        assert!(r.degree1 < 1e-9);
        assert!(r.max_abs_deviation() < 1e-6, "{:?}", r.measured);
        assert!(r.grouplike_residual < 1e-9);
        assert!(r.error_estimate < 1e-8);
        // the estimate bounds the actual deviation and scales like steps^-4
        let c64 = associator(2, 64).unwrap();
        let c128 = associator(2, 128).unwrap();
        assert!(c64.error_estimate >= c64.max_abs_deviation());
        let ratio = c64.error_estimate / c128.error_estimate;
        assert!(ratio > 12.0 && ratio < 20.0, "{ratio}");
        let r2 = associator(2, 64).unwrap();
        let z2 = r2.measured[0].1;
        assert!(z2.im.abs() < 1e-9 && (z2.re.abs() - PI * PI / 6.0).abs() < 1e-6);
    }

    #[test]
    fn too_few_steps_detected() {
        let p = KzPath(vec![KzEndpoint::Tangent0, KzEndpoint::Tangent1]);
        assert!(matches!(kz_transport_checked(3, &p, 1, 1e-12), Err(NumericError::StepsTooFew { .. })));
        assert!(kz_transport_checked(3, &p, 128, 1e-9).is_ok());
    }

    #[test]
    fn fiber_classes() {
        let tau = cz(0.0, 2.0);
        let x = cz(0.3, 0.5);
        let v = fiber_classes_check(tau, x, 4, 256, 1e-6).unwrap();
        assert!(v.passed(), "{v:?}");
        let v = fiber_classes_check(cz(0.4, 1.1), cz(0.2, 0.3), 3, 256, 1e-6).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn missing_beta_factor_changes_the_class() {
        let tau = cz(0.0, 2.0);
        let s = fiber_segment(tau, cz(0.3, 0.5), cz(0.3, 2.5), 2, 64).unwrap();
        assert!(s.coeff(Word::letter(T)).norm() < 1e-9);
    }

    #[test]
    fn limit_period() {
        assert_eq!(limit_period_matrix(c(1.0))[0][1], c(0.0) * -1.0);
        assert!((limit_period_matrix(c(std::f64::consts::E))[0][1] + 1.0).norm() < 1e-15);
        let (_, v) = limit_period_check(c(1.0), 8.0, 128, 1e-4).unwrap();
        assert!(v.passed(), "{v:?}");
        let (_, v) = limit_period_check(cz(0.5, 0.2), 8.0, 128, 1e-4).unwrap();
        assert!(v.passed(), "{v:?}");
    }
}
