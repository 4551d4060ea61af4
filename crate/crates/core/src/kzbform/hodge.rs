//! Position of the connection's derivation coefficients in the Hodge, weight and
//! relative weight filtrations.

use super::connection::ConnectionForm;
use crate::freelie::{derivation_filtration, Degrees};
use crate::report::Verdict;

fn show(d: &Degrees) -> String {
    format!("(W,F,M) = ({},{},{})", d.w, d.f, d.m)
}

/// Every coefficient lies in `F^{-1}W_0`; `A ∂/∂T` sits exactly at `(0,-1,-2)`,
/// `ad_{[T,A]}` exactly at `(-2,-1,-2)` and `ψ_m` in `F^{-1}W_{-2m}`.
pub fn hodge_weight_transversality_check(form: &ConnectionForm) -> Verdict {
    let mut vs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for t in form.du.iter().chain(&form.dq) {
        if !seen.insert(t.label.clone()) {
            continue;
        }
        let Some(g) = derivation_filtration(&t.der) else { continue };
        let v = if t.label == "A d/dT" {
            exact(&g, Degrees { w: 0, f: -1, m: -2 })
        } else if t.label == "ad(T^1.A)" {
            exact(&g, Degrees { w: -2, f: -1, m: -2 })
        } else if let Some(j) = t.label.strip_prefix("psi_") {
            let j: i64 = j.parse().unwrap();
            within(&g, -1, -2 * j)
        } else {
            within(&g, -1, 0)
        };
        vs.push((t.label.clone(), v));
    }
    Verdict::all(vs)
}

fn exact(g: &Degrees, want: Degrees) -> Verdict {
    if *g == want {
        Verdict::pass().with_detail(show(g))
    } else {
        Verdict::fail(format!("{}, expected {}", show(g), show(&want)))
    }
}

fn within(g: &Degrees, f: i64, w: i64) -> Verdict {
    if g.f >= f && g.w <= w {
        Verdict::pass().with_detail(show(g))
    } else {
        Verdict::fail(format!("{} not in F^{f} W_{w}", show(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kzbform::assemble_kzb;

    #[test]
    fn kzb_coefficients() {
        let f = assemble_kzb(8, 3, 3).unwrap();
        let v = hodge_weight_transversality_check(&f);
        assert!(v.passed(), "{v:?}");
        let d = v.detail.unwrap();
        assert!(d.contains("psi_1: (W,F,M) = (-4,-1,-2)"), "{d}");
        assert!(d.contains("A d/dT: (W,F,M) = (0,-1,-2)"));
    }
}
