//! Verification suites and report formatting behind the `kzb` binary.

pub mod docs;
pub mod orders;
pub mod suites;

pub use orders::{Orders, OrdersError};
pub use suites::{run_suite, Fault, Params, Suite};

use kzb_core::{CheckReport, Status};

/// 0 iff every report passed.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(|r| r.status == Status::Pass) {
        0
    } else {
        1
    }
}

fn params_text(r: &CheckReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// One line per report: `status suite/check [params] elapsed`, then the witness
/// or detail if any.
pub fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{:<7} {}/{} [{}] {} ms", r.status, r.suite, r.check, params_text(r), r.elapsed_ms));
        if let Some(w) = &r.witness {
            out.push_str(&format!("\n        witness: {w}"));
        } else if let Some(d) = &r.detail {
            out.push_str(&format!("\n        {d}"));
        }
        out.push('\n');
    }
    let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
    out.push_str(&format!("{pass}/{} checks passed\n", reports.len()));
    out
}

/// A markdown table.
pub fn render_md(reports: &[CheckReport]) -> String {
    let mut out = String::from("| status | suite | check | params | ms | witness / detail |\n|---|---|---|---|---|---|\n");
    for r in reports {
        let extra = r.witness.as_ref().or(r.detail.as_ref()).cloned().unwrap_or_default().replace('|', "\\|");
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.status,
            r.suite,
            r.check,
            params_text(r),
            r.elapsed_ms,
            extra
        ));
    }
    out
}

/// JSON lines, one report per line.
pub fn render_json(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| serde_json::to_string(r).expect("report serializes") + "\n").collect()
}
