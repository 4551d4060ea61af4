//! The fourteen acceptance criteria, each with its tolerance and time limit.
//! Prints one `PASS`/`FAIL` line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use kzb_core::exactcore::bernoulli_h_identity;
use kzb_core::freelie::checks::{
    bracket_basis_rank, commuting_residues_check, cylinder_check, delta_h_link_check, nq_annihilation_check,
    nq_exp_minus_t_check, CylinderVariant,
};
use kzb_core::freelie::{filtration_membership_check, sl2_all_check};
use kzb_core::kzbform::{
    addition_formula_check, assemble_kzb, assemble_kzb_variant, flatness_check, heat_check, m1vec_connection,
    q0_coth_check, qdr_pullback_check, v_derivative_check, KzbVariant,
};
use kzb_core::modforms::{discriminant_check, e2_log_delta_check, g4_g2_relation_check, uv_wronskian_check, G4Variant};
use kzb_core::numeric::{
    associator, default_law_samples, elliptic_modularity_check, fiber_transport, series_vs_theta_check, FiberLoop,
};
use kzb_core::freelie::{Word, A, T};
use kzb_core::{CommPoly, Rational, Verdict};
use num_complex::Complex64;

const P2M: [(u32, &str); 11] = [
    (4, "1/20 u"),
    (6, "3/7 v"),
    (8, "3/10 u^2"),
    (10, "108/11 u v"),
    (12, "756/65 u^3 + 16200/91 v^2"),
    (14, "1296 u^2 v"),
    (16, "174636/85 u^4 + 1166400/17 u v^2"),
    (18, "9471168/19 u^3 v + 256608000/133 v^3"),
    (20, "25147584/25 u^5 + 678844800/11 u^2 v^2"),
    (22, "10671720192/23 u^4 v + 103296384000/23 u v^3"),
    (24, "73581830784/65 u^6 + 1410877440000/13 u^3 v^2 + 15547365504000/91 v^4"),
];

const ZETA2: f64 = 1.644_934_066_848_226_4;
const ZETA3: f64 = 1.202_056_903_159_594_3;

fn all(vs: Vec<(&str, Verdict)>) -> Verdict {
    Verdict::all(vs.into_iter().map(|(k, v)| (k.to_string(), v)))
}

fn crit1() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_kzb"))
        .args(["p2m-table", "--max-weight", "24", "--format", "json"])
        .output()
        .expect("binary runs");
    if !out.status.success() {
        return Verdict::fail(String::from_utf8_lossy(&out.stderr).to_string());
    }
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).expect("json table");
    if rows.len() != P2M.len() {
        return Verdict::fail(format!("{} rows", rows.len()));
    }
    for (row, (w, s)) in rows.iter().zip(P2M) {
        let got = CommPoly::parse(row["p"].as_str().unwrap_or(""), &["u", "v"]);
        let want = CommPoly::parse(s, &["u", "v"]).unwrap();
        if row["weight"] != w || got.as_ref() != Ok(&want) {
            return Verdict::fail(format!("p_{w}: got {}, expected {s}", row["p"]));
        }
    }
    Verdict::pass()
}

fn crit2() -> Verdict {
    for n in 1..=30 {
        let h = bernoulli_h_identity(n);
        if !h.sum.is_zero() {
            return Verdict::fail(format!("n={n}: {}", h.sum));
        }
        if !h.binomial_residual.is_zero() {
            return Verdict::fail(format!("n={n}: binomial form residual {}", h.binomial_residual));
        }
    }
    Verdict::pass()
}

fn crit5() -> Verdict {
    let form = assemble_kzb(8, 8, 10).expect("valid orders");
    let exact = flatness_check(&form);
    let broken = flatness_check(&assemble_kzb_variant(8, 8, 10, KzbVariant::DropPsi).expect("valid orders"));
    let control = match broken.witness {
        Some(w) if !broken.passed() => Verdict::pass().with_detail(format!("without psi: {w}")),
        _ => Verdict::fail("dropping psi went unnoticed"),
    };
    all(vec![("exact", exact), ("psi deleted", control)])
}

fn crit6() -> Verdict {
    all(vec![
        ("heat (8,8,12)", heat_check(8, 8, 12)),
        ("addition (5,5,8)", addition_formula_check(5, 5, 8)),
        ("q0 coth", q0_coth_check(8, 8, 12)),
        ("v-derivative pole-free", v_derivative_check(8, 8, 12)),
    ])
}

fn crit7() -> Verdict {
    all(vec![
        ("G4 from G2", g4_g2_relation_check(50, G4Variant::Exact)),
        ("log derivative of Delta", e2_log_delta_check(50, false)),
        ("discriminant", discriminant_check(50)),
        ("Wronskian", uv_wronskian_check(50)),
    ])
}

fn crit8() -> Verdict {
    match m1vec_connection(16, 14) {
        Ok(form) => qdr_pullback_check(&form, 30),
        Err(e) => Verdict::fail(e.to_string()),
    }
}

fn crit9() -> Verdict {
    let mut vs: Vec<(String, Verdict)> = ["1", "3/2", "-2"]
        .iter()
        .map(|l| {
            let lambda = match *l {
                "1" => Rational::ONE,
                "3/2" => Rational::new(3, 2),
                _ => Rational::from_int(-2),
            };
            (format!("cylinder λ={l}"), cylinder_check(12, &lambda, CylinderVariant::Exact))
        })
        .collect();
    vs.push(("N_q(e^-T)".into(), nq_exp_minus_t_check(12)));
    Verdict::all(vs)
}

fn crit10() -> Verdict {
    all(vec![("memberships", filtration_membership_check(12, 13)), ("sl2", sl2_all_check(8))])
}

fn crit11() -> Verdict {
    let (dev, series) = series_vs_theta_check(12, 12, 40, 1e-10);
    let (laws, v) = elliptic_modularity_check(&default_law_samples(), 1e-8);
    let bounds = if laws.elliptic < 1e-9 && laws.modular < 1e-8 {
        Verdict::pass().with_detail(format!("elliptic {:.1e}, modular {:.1e}", laws.elliptic, laws.modular))
    } else {
        Verdict::fail(format!("{laws:?}"))
    };
    all(vec![
        ("series vs theta", series.with_detail(format!("{dev:.1e}"))),
        ("laws", v),
        ("bounds", bounds),
    ])
}

fn crit12() -> Verdict {
    let rep = associator(3, 4096).expect("associator runs");
    let get = |w: &str| {
        let w = Word::parse(w).unwrap();
        rep.coords.iter().find(|(x, _)| *x == w).map(|(_, z)| *z).unwrap_or_default()
    };
    let (z2, z3) = (get("TA"), get("TTA"));
    let (d2, d3) = ((z2.norm() - ZETA2).abs(), (z3.norm() - ZETA3).abs());
    let detail = format!("[Y,Z] {:.12}, [Y,[Y,Z]] {:.12}", z2.re, z3.re);
    if d2 < 1e-6 && d3 < 1e-6 {
        Verdict::pass().with_detail(detail)
    } else {
        Verdict::fail(detail)
    }
}

fn crit13() -> Verdict {
    let tau = Complex64::new(0.0, 2.0);
    let x = Complex64::new(0.3, 0.5);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let a = fiber_transport(tau, x, FiberLoop::Alpha, 3, 256).expect("α transport");
    let b = fiber_transport(tau, x, FiberLoop::Beta, 3, 256).expect("β transport");
    let (t, aw) = (Word::letter(T), Word::letter(A));
    let da = a.coeff(t).norm().max((a.coeff(aw) - two_pi_i).norm());
    let db = (b.coeff(t) + 1.0).norm().max((b.coeff(aw) - two_pi_i * tau).norm());
    if da < 1e-6 && db < 1e-6 {
        Verdict::pass().with_detail(format!("α {da:.1e}, β {db:.1e}"))
    } else {
        Verdict::fail(format!("Θ(α) = 1 + {}T + {}A, Θ(β) = 1 + {}T + {}A", a.coeff(t), a.coeff(aw), b.coeff(t), b.coeff(aw)))
    }
}

fn crit14() -> Verdict {
    let mut ranks = Vec::new();
    for n in 1..=9 {
        let r = bracket_basis_rank(n, n + 2);
        if r != (n + 1) / 2 {
            return Verdict::fail(format!("rank at n={n} is {r}"));
        }
        ranks.push(r);
    }
    all(vec![("delta-h link", delta_h_link_check(6, 13)), ("ranks", Verdict::pass().with_detail(format!("{ranks:?}")))])
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Duration, fn() -> Verdict)> = vec![
        ("1 p2m table", Duration::from_secs(10), crit1),
        ("2 Bernoulli identity n<=30", Duration::from_secs(10), crit2),
        ("3 N_q annihilates residues, N=16", Duration::from_secs(120), || nq_annihilation_check(16, false)),
        ("4 commuting residues, N=14", Duration::from_secs(120), || commuting_residues_check(14)),
        ("5 flatness (8,8,10) and psi control", Duration::from_secs(300), crit5),
        ("6 Jacobi functional equations", Duration::from_secs(120), crit6),
        ("7 modular identities, order 50", Duration::from_secs(10), crit7),
        ("8 QDR pullback, weight 14, q-order 30", Duration::from_secs(300), crit8),
        ("9 cylinder and N_q(e^-T), N=12", Duration::from_secs(300), crit9),
        ("10 filtration memberships and sl2", Duration::from_secs(300), crit10),
        ("11 numeric transformation laws", Duration::from_secs(30), crit11),
        ("12 associator zeta(2), zeta(3)", Duration::from_secs(120), crit12),
        ("13 fiber monodromy at tau=2i", Duration::from_secs(300), crit13),
        ("14 delta-h link and bracket ranks", Duration::from_secs(300), crit14),
    ];
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let v = f();
        let el = start.elapsed();
        let ok = v.passed() && el <= limit;
        let why = if !v.passed() {
            v.witness.clone().unwrap_or_default()
        } else if el > limit {
            format!("took {el:?}, limit {limit:?}")
        } else {
            v.detail.clone().unwrap_or_default()
        };
        println!("{} criterion {name} ({} ms) {why}", if ok { "PASS" } else { "FAIL" }, el.as_millis());
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
