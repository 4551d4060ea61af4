//! Non-check outputs: the `p₂ₘ` table, exact series dumps, associator reports.

use kzb_core::kzbform::jacobi_f;
use kzb_core::modforms::{delta0, eisenstein, p2m_table, ModformsError};
use kzb_core::numeric::{associator, AssociatorReport, NumericError};
use kzb_core::{MSeries, QSeries, Rational};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Md,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct P2mRow {
    weight: u32,
    p: String,
}

pub fn p2m_document(max_weight: u32, format: TableFormat) -> Result<String, ModformsError> {
    if max_weight < 4 || max_weight % 2 == 1 {
        return Err(ModformsError::OddWeight(max_weight));
    }
    let table = p2m_table(max_weight)?;
    Ok(match format {
        TableFormat::Md => {
            let mut s = String::from("| 2m | p_2m(u, v) |\n|---|---|\n");
            for (w, p) in &table {
                s.push_str(&format!("| {w} | {p} |\n"));
            }
            s
        }
        TableFormat::Json => {
            let rows: Vec<P2mRow> = table.iter().map(|(w, p)| P2mRow { weight: *w, p: p.to_string() }).collect();
            serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
        }
    })
}

#[derive(Serialize)]
struct Coeff {
    exponents: Vec<i32>,
    numerator: String,
    denominator: String,
}

fn coeff(exponents: Vec<i32>, c: &Rational) -> Coeff {
    Coeff { exponents, numerator: c.numer().to_string(), denominator: c.denom().to_string() }
}

fn dump(vars: &[&str], rows: Vec<Coeff>, format: SeriesFormat) -> String {
    match format {
        SeriesFormat::Csv => {
            let mut s = vars.join(",") + ",numerator,denominator\n";
            for r in rows {
                let e: Vec<String> = r.exponents.iter().map(|e| e.to_string()).collect();
                s.push_str(&format!("{},{},{}\n", e.join(","), r.numerator, r.denominator));
            }
            s
        }
        SeriesFormat::Json => {
            let v = serde_json::json!({ "variables": vars, "coefficients": rows });
            serde_json::to_string_pretty(&v).expect("coefficients serialize") + "\n"
        }
    }
}

fn q_rows(s: &QSeries) -> Vec<Coeff> {
    (s.lo()..s.order()).map(|e| coeff(vec![e], &s.coeff(e))).collect()
}

/// `G_weight` through `q^{order-1}`.
pub fn eisenstein_document(weight: u32, order: i32, format: SeriesFormat) -> Result<String, ModformsError> {
    Ok(dump(&["q"], q_rows(eisenstein(weight, order)?.series()), format))
}

/// `Δ₀ = q Π(1 - q^n)^{24}` through `q^{order-1}`.
pub fn delta0_document(order: i32, format: SeriesFormat) -> String {
    dump(&["q"], q_rows(&delta0(order)), format)
}

/// Coefficients of `𝔽(u, v)` with `u`, `v` exponents below `ku`, `kv` and q-exponents below `m`.
pub fn jacobi_document(ku: i32, kv: i32, m: i32, format: SeriesFormat) -> String {
    let f: MSeries = jacobi_f(ku, kv, m).full();
    let mut terms: Vec<(Vec<i32>, Rational)> = f.terms().into_iter().map(|(e, c)| (e, c.clone())).collect();
    terms.sort();
    dump(&["u", "v", "q"], terms.iter().map(|(e, c)| coeff(e.clone(), c)).collect(), format)
}

#[derive(Serialize)]
struct MeasuredRow {
    bracket: String,
    re: f64,
    im: f64,
    reference: f64,
    residual: f64,
}

#[derive(Serialize)]
struct AssociatorDoc {
    degree: usize,
    steps: usize,
    coefficients: Vec<MeasuredRow>,
    degree1: f64,
    grouplike_residual: f64,
    error_estimate: f64,
    status: &'static str,
}

/// Runs the associator and returns the report plus pass/fail against `tol`.
pub fn associator_document(n: usize, steps: usize, tol: f64, format: TableFormat) -> Result<(String, bool), NumericError> {
    if !(1..=5).contains(&n) {
        return Err(NumericError::BadPath(format!("degree {n} outside 1..=5")));
    }
    let rep: AssociatorReport = associator(n, steps)?;
    let ok = rep.max_abs_deviation() < tol && rep.degree1 < tol;
    let rows: Vec<MeasuredRow> = rep
        .measured
        .iter()
        .map(|(name, z, r)| MeasuredRow { bracket: name.clone(), re: z.re, im: z.im, reference: *r, residual: z.norm() - r })
        .collect();
    let status = if ok { "pass" } else { "fail" };
    Ok((
        match format {
            TableFormat::Md => {
                let mut s = format!("degree {n}, {steps} steps per segment\n\n| bracket | measured | reference | abs residual |\n|---|---|---|---|\n");
                for r in &rows {
                    s.push_str(&format!("| {} | {:.15}{:+.1e}i | {:.15} | {:.2e} |\n", r.bracket, r.re, r.im, r.reference, r.residual));
                }
                s.push_str(&format!(
                    "\ndegree-1 part {:.1e}, group-like residual {:.1e}, step error estimate {:.1e}\n{status}\n",
                    rep.degree1, rep.grouplike_residual, rep.error_estimate
                ));
                s
            }
            TableFormat::Json => {
                let d = AssociatorDoc {
                    degree: n,
                    steps,
                    coefficients: rows,
                    degree1: rep.degree1,
                    grouplike_residual: rep.grouplike_residual,
                    error_estimate: rep.error_estimate,
                    status,
                };
                serde_json::to_string_pretty(&d).expect("report serializes") + "\n"
            }
        },
        ok,
    ))
}
