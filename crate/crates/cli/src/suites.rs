//! Named suites of checks.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use kzb_core::exactcore::{bernoulli_h_identity, h_generating_residual};
use kzb_core::freelie::checks::{
    bch_check, bracket_rank_check, commuting_residues_check, cylinder_check, delta_h_link_check, exp_ad_lemma_check,
    grouplike_ode_check, highest_weight_and_der0_check, nq_annihilation_check, nq_exp_minus_t_check, nq_t_check,
    rescaling_check, residues_check, substitute_kz_check, CylinderVariant, OdePath,
};
use kzb_core::freelie::filtration::sl2_all_check;
use kzb_core::freelie::{filtration_membership_check, grouplike_residual, lr_lemma_checks};
use kzb_core::kzbform::{
    addition_formula_check_variant, assemble_kzb_variant, flatness_check, frame_change_check,
    heat_check_variant, hodge_weight_transversality_check, m1vec_connection, nabla0_check, p1_residues,
    q0_coth_check, qdr_homogeneity_check, qdr_pullback_check, symmetry_check, tate_restriction_check,
    v_derivative_check, wp_difference_identity_check, AdditionVariant, JacobiVariant, KzbVariant,
};
use kzb_core::modforms::{
    discriminant_check, e2_log_delta_check, g4_g2_relation_check, p2m_recheck, uv_wronskian_check, G4Variant,
};
use kzb_core::numeric::{
    associator, default_law_samples, elliptic_modularity_check, fiber_classes_check, fzag_numeric, kz_transport,
    limit_period_check, series_vs_theta_check, theta, DenseNC, KzEndpoint, KzPath,
};
use kzb_core::{CheckReport, Rational, Verdict};
use num_complex::Complex64;

use crate::orders::Orders;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Bernoulli,
    Modforms,
    Lie,
    Jacobi,
    Flatness,
    Tate,
    Qdr,
    Hodge,
    Numeric,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Bernoulli,
        Suite::Modforms,
        Suite::Lie,
        Suite::Jacobi,
        Suite::Flatness,
        Suite::Tate,
        Suite::Qdr,
        Suite::Hodge,
        Suite::Numeric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bernoulli => "bernoulli",
            Suite::Modforms => "modforms",
            Suite::Lie => "lie",
            Suite::Jacobi => "jacobi",
            Suite::Flatness => "flatness",
            Suite::Tate => "tate",
            Suite::Qdr => "qdr",
            Suite::Hodge => "hodge",
            Suite::Numeric => "numeric",
            Suite::All => "all",
        }
    }
}

/// Deliberate faults, for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Drop the `ψ` terms from the connection.
    Psi,
    /// Drop `A ∂/∂T` from the connection.
    Epsilon,
    /// Replace `B₄` in `N_q`.
    B4,
    /// Replace `G₂` by `G₄` in one coefficient of `𝔽`.
    Heat,
    /// Perturb `℘` in the addition formula.
    Wp,
    /// Omit `D G₂` in the `G₄` relation.
    G4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub orders: Orders,
    /// Range of the Bernoulli identity.
    pub max_n: usize,
    /// Largest modular weight used by `modforms`, `qdr` and `hodge`.
    pub max_weight: u32,
    pub tolerance: f64,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for Params {
    fn default() -> Self {
        Params { orders: Orders::default(), max_n: 30, max_weight: 14, tolerance: 1e-6, seed: 0, fault: None }
    }
}

struct Runner<'a> {
    suite: &'static str,
    p: &'a Params,
    out: Vec<CheckReport>,
}

impl Runner<'_> {
    fn check(&mut self, check: &str, params: &[(&str, String)], f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let verdict = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(v) => v,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown".into());
                Verdict::fail(format!("panic: {msg}"))
            }
        };
        let ms = start.elapsed().as_millis() as u64;
        self.out.push(CheckReport::new(self.suite, check, params, verdict, ms));
    }

    fn fault(&self, f: Fault) -> bool {
        self.p.fault == Some(f)
    }
}

fn nkm(o: &Orders) -> Vec<(&'static str, String)> {
    vec![("N", o.n.to_string()), ("K", o.k.to_string()), ("M", o.m.to_string())]
}

fn bernoulli(r: &mut Runner) {
    for n in 1..=r.p.max_n {
        r.check("h_identity", &[("n", n.to_string())], || {
            let h = bernoulli_h_identity(n as u32);
            if h.holds() {
                Verdict::pass()
            } else if !h.sum.is_zero() {
                Verdict::fail(format!("sum = {}", h.sum))
            } else {
                Verdict::fail(format!("binomial form residual = {}", h.binomial_residual))
            }
        });
    }
    let k = r.p.orders.k.max(2) as u32;
    r.check("h_generating", &[("order", k.to_string())], || {
        let res = h_generating_residual(k, k, false);
        if res.is_zero() {
            Verdict::pass()
        } else {
            Verdict::fail(format!("residual {res}"))
        }
    });
}

fn modforms(r: &mut Runner) {
    let m = r.p.orders.m;
    let mp = [("M", m.to_string())];
    let g4 = if r.fault(Fault::G4) { G4Variant::OmitDerivative } else { G4Variant::Exact };
    r.check("g4_g2", &mp, || g4_g2_relation_check(m, g4));
    r.check("discriminant", &mp, || discriminant_check(m));
    r.check("e2_log_delta", &mp, || e2_log_delta_check(m, false));
    r.check("uv_wronskian", &mp, || uv_wronskian_check(m));
    let w = r.p.max_weight.max(4);
    let order = m.max(kzb_core::modforms::p2m_min_order(w) + 2);
    r.check("p2m_table", &[("W", w.to_string()), ("M", order.to_string())], || p2m_recheck(w, order));
}

fn lie(r: &mut Runner) {
    let n = r.p.orders.n;
    let seed = r.p.seed;
    let np = [("N", n.to_string())];
    r.check("bch", &[("N", n.min(8).to_string())], || bch_check(n.min(8)));
    r.check("residues", &np, || residues_check(n));
    r.check("lr_lemma", &[("N", n.min(8).to_string()), ("seed", seed.to_string())], || {
        lr_lemma_checks(n.min(8), 4, seed, false)
    });
    r.check("highest_weight_der0", &np, || highest_weight_and_der0_check(n / 2, n, false));
    let b4 = r.fault(Fault::B4);
    r.check("nq_annihilation", &np, || nq_annihilation_check(n, b4));
    r.check("nq_T", &np, || nq_t_check(n));
    r.check("commuting_residues", &np, || commuting_residues_check(n));
    r.check("cylinder", &np, || {
        let lambdas = [Rational::ONE, Rational::new(3, 2), Rational::from_int(-2)];
        Verdict::all(lambdas.iter().map(|l| (format!("λ={l}"), cylinder_check(n, l, CylinderVariant::Exact))))
    });
    r.check("nq_exp_minus_T", &np, || nq_exp_minus_t_check(n));
    r.check("exp_ad", &[("N", n.min(8).to_string()), ("seed", seed.to_string())], || {
        exp_ad_lemma_check(n.min(8), 4, seed)
    });
    let hmax = (n - 1) / 2;
    r.check("delta_h_link", &[("a+b", hmax.to_string()), ("N", n.to_string())], || delta_h_link_check(hmax, n));
    let kmax = (n - 1).min(9);
    r.check("bracket_rank", &[("n", kmax.to_string())], || bracket_rank_check(kmax));
    let on = n.min(6);
    r.check("grouplike_ode", &[("N", on.to_string())], || {
        Verdict::all([
            ("constant".to_string(), grouplike_ode_check(on, OdePath::Constant)),
            ("linear".to_string(), grouplike_ode_check(on, OdePath::Linear)),
        ])
    });
    r.check("substitute_kz", &np, || substitute_kz_check(n));
    r.check("rescaling", &np, || rescaling_check(n / 2, n, &[Rational::from_int(2), Rational::new(-1, 3)]));
}

fn jacobi(r: &mut Runner) {
    let o = r.p.orders;
    let (k, m) = (o.k, o.m);
    let p = [("K", k.to_string()), ("M", m.to_string())];
    let hv = if r.fault(Fault::Heat) { JacobiVariant::G2ToG4 } else { JacobiVariant::Exact };
    r.check("heat", &p, || heat_check_variant(k + 2, k + 2, m, hv));
    r.check("v_derivative", &p, || v_derivative_check(k, k, m));
    r.check("q0_coth", &p, || q0_coth_check(k, k, m));
    r.check("symmetry", &p, || symmetry_check(k, m));
    let ka = k.min(5);
    let ma = m.min(8);
    let av = if r.fault(Fault::Wp) { AdditionVariant::PerturbWp } else { AdditionVariant::Exact };
    r.check("addition", &[("K", ka.to_string()), ("M", ma.to_string())], || addition_formula_check_variant(ka, ka, ma, av));
    r.check("wp_difference", &p, || wp_difference_identity_check(k, m));
}

fn kzb_variant(r: &Runner) -> KzbVariant {
    match r.p.fault {
        Some(Fault::Psi) => KzbVariant::DropPsi,
        Some(Fault::Epsilon) => KzbVariant::DropEpsilon,
        _ => KzbVariant::Exact,
    }
}

fn flatness(r: &mut Runner) {
    let o = r.p.orders;
    let variant = kzb_variant(r);
    r.check("flatness", &nkm(&o), || match assemble_kzb_variant(o.n, o.k, o.m, variant) {
        Ok(form) => flatness_check(&form),
        Err(e) => Verdict::fail(e),
    });
}

fn tate(r: &mut Runner) {
    let o = r.p.orders;
    r.check("restriction", &[("N", o.n.to_string()), ("K", o.k.to_string())], || tate_restriction_check(o.n, o.k));
    r.check("p1_residues", &[("N", o.n.to_string())], || p1_residues(o.n));
}

fn qdr(r: &mut Runner) {
    let o = r.p.orders;
    let w = r.p.max_weight;
    let p = [("N", o.n.to_string()), ("W", w.to_string()), ("M", o.m.to_string())];
    match m1vec_connection(o.n, w) {
        Err(e) => r.check("pullback", &p, || Verdict::fail(e.to_string())),
        Ok(form) => {
            r.check("pullback", &p, || qdr_pullback_check(&form, o.m));
            r.check("homogeneity", &p, || qdr_homogeneity_check(&form));
        }
    }
    let n = o.n;
    r.check("frame_change", &[("N", n.to_string())], || {
        let cases = [(Rational::from_int(2), Rational::new(1, 3)), (Rational::new(-3, 2), Rational::from_int(5))];
        Verdict::all((1..=(n / 2).min(4)).flat_map(|m| {
            cases.iter().map(move |(s, c)| (format!("m={m}, s={s}, c={c}"), frame_change_check(m, n, s, c)))
        }))
    });
    r.check("nabla0", &[("M", o.m.to_string())], || nabla0_check(o.m));
}

fn hodge(r: &mut Runner) {
    let o = r.p.orders;
    let w = (r.p.max_weight as usize).min((o.n - 1) & !1).min(12);
    r.check("filtration_membership", &[("W", w.to_string()), ("N", o.n.to_string())], || {
        filtration_membership_check(w, o.n)
    });
    let sn = o.n.min(8);
    r.check("sl2_relative_iso", &[("N", sn.to_string())], || sl2_all_check(sn));
    let variant = kzb_variant(r);
    r.check("transversality", &nkm(&o), || match assemble_kzb_variant(o.n, o.k, o.m, variant) {
        Ok(form) => hodge_weight_transversality_check(&form),
        Err(e) => Verdict::fail(e),
    });
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn numeric(r: &mut Runner) {
    let nn = r.p.orders.numeric_n;
    let tol = r.p.tolerance;
    r.check("theta", &[], || {
        let i = c(0.0, 1.0);
        let mut worst: f64 = 0.0;
        match theta(c(0.0, 0.0), i) {
            Ok(z) if z.norm() < 1e-14 => {}
            Ok(z) => return Verdict::fail(format!("|θ(0, i)| = {:e}", z.norm())),
            Err(e) => return Verdict::fail(e.to_string()),
        }
        for u in [c(0.3, 0.0), c(-0.2, 0.7), c(1.1, -0.4)] {
            for tau in [i, c(0.3, 1.2)] {
                let s = theta(u, tau).and_then(|a| theta(-u, tau).map(|b| (a + b).norm()));
                match s {
                    Ok(d) => worst = worst.max(d),
                    Err(e) => return Verdict::fail(e.to_string()),
                }
            }
        }
        if worst < 1e-13 {
            Verdict::pass().with_detail(format!("oddness residual {worst:.1e}"))
        } else {
            Verdict::fail(format!("oddness residual {worst:e}"))
        }
    });
    r.check("fzag_symmetry", &[], || {
        let tau = c(0.2, 1.3);
        let mut worst: f64 = 0.0;
        for (u, v) in [(c(0.3, 0.1), c(-0.2, 0.4)), (c(1.0, 0.5), c(0.7, -0.2)), (c(-0.6, 0.2), c(0.1, 0.9))] {
            let run = || -> Result<f64, kzb_core::numeric::NumericError> {
                let f = fzag_numeric(u, v, tau)?;
                Ok((f - fzag_numeric(v, u, tau)?).norm().max((f + fzag_numeric(-u, -v, tau)?).norm()))
            };
            match run() {
                Ok(d) => worst = worst.max(d),
                Err(e) => return Verdict::fail(e.to_string()),
            }
        }
        if worst < 1e-12 {
            Verdict::pass().with_detail(format!("residual {worst:.1e}"))
        } else {
            Verdict::fail(format!("residual {worst:e}"))
        }
    });
    r.check("series_vs_theta", &[("orders", "12,12,40".into())], || series_vs_theta_check(12, 12, 40, 1e-10).1);
    r.check("transformation_laws", &[], || {
        let (rep, v) = elliptic_modularity_check(&default_law_samples(), 1e-8);
        if !v.passed() {
            return v;
        }
        let mut fails = Vec::new();
        if rep.elliptic >= 1e-9 {
            fails.push(format!("elliptic residual {:e}", rep.elliptic));
        }
        if rep.periodic >= 1e-12 {
            fails.push(format!("periodicity residual {:e}", rep.periodic));
        }
        if fails.is_empty() {
            v
        } else {
            Verdict::fail(fails.join("; "))
        }
    });
    let gn = nn.min(4);
    r.check("kz_transport", &[("N", gn.to_string())], || {
        let p = |w: Complex64| KzEndpoint::Point(w);
        let a = KzPath(vec![p(c(0.3, 0.2)), p(c(0.6, -0.3))]);
        let b = KzPath(vec![p(c(0.6, -0.3)), p(c(-0.4, 0.5))]);
        let ab = KzPath(vec![p(c(0.3, 0.2)), p(c(0.6, -0.3)), p(c(-0.4, 0.5))]);
        let run = || -> Result<(f64, f64, f64), kzb_core::numeric::NumericError> {
            let ta = kz_transport(gn, &a, 256)?;
            let tb = kz_transport(gn, &b, 256)?;
            let tab = kz_transport(gn, &ab, 256)?;
            let back = kz_transport(gn, &ab.reversed(), 256)?;
            Ok((
                tab.sub(&tb.mul(&ta)).max_norm(),
                grouplike_residual(&tab.to_ncseries()),
                back.mul(&tab).sub(&DenseNC::one(gn)).max_norm(),
            ))
        };
        match run() {
            Ok((comp, gl, rev)) if comp < 1e-9 && gl < 1e-9 && rev < 1e-8 => Verdict::pass()
                .with_detail(format!("composition {comp:.1e}, group-like {gl:.1e}, reversal {rev:.1e}")),
            Ok((comp, gl, rev)) => {
                Verdict::fail(format!("composition {comp:e}, group-like {gl:e}, reversal {rev:e}"))
            }
            Err(e) => Verdict::fail(e.to_string()),
        }
    });
    let an = nn.max(2);
    r.check("associator", &[("N", an.to_string()), ("steps", "2048".into())], || match associator(an, 2048) {
        Ok(rep) => {
            let dev = rep.max_abs_deviation();
            let detail = rep
                .measured
                .iter()
                .map(|(name, z, reference)| format!("{name}: {:.12} (|·| − {reference:.12} = {:.1e})", z.re, z.norm() - reference))
                .collect::<Vec<_>>()
                .join(", ");
            if dev < tol && rep.degree1 < tol {
                Verdict::pass().with_detail(detail)
            } else {
                Verdict::fail(format!("{detail}; degree-1 part {:e}", rep.degree1))
            }
        }
        Err(e) => Verdict::fail(e.to_string()),
    });
    let fn_ = nn.min(4);
    r.check("fiber_monodromy", &[("N", fn_.to_string()), ("tau", "2i".into())], || {
        fiber_classes_check(c(0.0, 2.0), c(0.3, 0.5), fn_, 256, tol).unwrap_or_else(|e| Verdict::fail(e.to_string()))
    });
    r.check("limit_period", &[("t", "8".into())], || {
        Verdict::all([c(1.0, 0.0), c(std::f64::consts::E, 0.0)].into_iter().map(|l| {
            (format!("λ={}", l.re), limit_period_check(l, 8.0, 128, 1e-4).map(|x| x.1).unwrap_or_else(|e| Verdict::fail(e.to_string())))
        }))
    });
}

fn run_one(suite: Suite, p: &Params) -> Vec<CheckReport> {
    let mut r = Runner { suite: suite.name(), p, out: Vec::new() };
    match suite {
        Suite::Bernoulli => bernoulli(&mut r),
        Suite::Modforms => modforms(&mut r),
        Suite::Lie => lie(&mut r),
        Suite::Jacobi => jacobi(&mut r),
        Suite::Flatness => flatness(&mut r),
        Suite::Tate => tate(&mut r),
        Suite::Qdr => qdr(&mut r),
        Suite::Hodge => hodge(&mut r),
        Suite::Numeric => numeric(&mut r),
        Suite::All => unreachable!(),
    }
    r.out
}

/// Runs a suite; `All` runs every suite concurrently and returns the reports in
/// suite order.
pub fn run_suite(suite: Suite, p: &Params) -> Vec<CheckReport> {
    if suite != Suite::All {
        return run_one(suite, p);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = Suite::EACH.iter().map(|&su| s.spawn(move || run_one(su, p))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite thread")).collect()
    })
}
