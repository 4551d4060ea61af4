//! Eisenstein series as weighted-homogeneous polynomials in `u = 20G_4`, `v = 7G_6/3`.

use super::eisenstein::{eisenstein, series_mismatch, uv_series};
use crate::report::Verdict;
use super::ModformsError;
use crate::exactcore::{linear_solve, CommPoly, Rational, Solution};

pub const UV: [&str; 2] = ["u", "v"];

/// Exponents `(a, b)` with `4a + 6b = weight`, by decreasing `a`.
pub fn weighted_monomials(weight: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in (0..=weight / 4).rev() {
        let rest = weight - 4 * a;
        if rest % 6 == 0 {
            out.push((a, rest / 6));
        }
    }
    out
}

/// Smallest q-order accepted by [`p2m`] for this weight.
pub fn p2m_min_order(weight: u32) -> i32 {
    2 + weighted_monomials(weight).len() as i32
}

/// The polynomial `p_w(u, v)` with `G_w = p_w(20G_4, 7G_6/3)`.
///
/// All `order` coefficient equations are imposed; the system must have a unique
/// solution, and the surplus rows certify it.
pub fn p2m(weight: u32, order: i32) -> Result<CommPoly, ModformsError> {
    if weight < 4 || weight % 2 == 1 {
        return Err(ModformsError::OddWeight(weight));
    }
    let monos = weighted_monomials(weight);
    if order < p2m_min_order(weight) {
        return Err(ModformsError::OrderTooSmall { needed: p2m_min_order(weight), got: order });
    }
    let (u, v) = uv_series(order);
    let cols: Vec<_> = monos.iter().map(|&(a, b)| u.pow(a).mul(&v.pow(b))).collect();
    let g = eisenstein(weight, order)?.into_series();
    let rows: Vec<Vec<Rational>> = (0..order).map(|n| cols.iter().map(|c| c.coeff(n)).collect()).collect();
    let rhs: Vec<Rational> = (0..order).map(|n| g.coeff(n)).collect();
    match linear_solve(&rows, &rhs) {
        Solution::Unique(x) => {
            let mut p = CommPoly::zero(&UV);
            for (&(a, b), c) in monos.iter().zip(x) {
                p.add_term(vec![a, b], c);
            }
            Ok(p)
        }
        Solution::Parametrized { .. } => Err(ModformsError::Underdetermined(weight)),
        Solution::Inconsistent => Err(ModformsError::Inconsistent(weight)),
    }
}

/// `(weight, p_weight)` for `weight = 4, 6, ..., max_weight`.
pub fn p2m_table(max_weight: u32) -> Result<Vec<(u32, CommPoly)>, ModformsError> {
    (4..=max_weight)
        .step_by(2)
        .map(|w| {
            let order = p2m_min_order(w) + 8;
            p2m(w, order).map(|p| (w, p))
        })
        .collect()
}

/// Every table entry re-expanded through `q^{order-1}` reproduces `G_w`.
pub fn p2m_recheck(max_weight: u32, order: i32) -> Verdict {
    let table = match p2m_table(max_weight) {
        Ok(t) => t,
        Err(e) => return Verdict::fail(e.to_string()),
    };
    let (u, v) = uv_series(order);
    Verdict::all(table.into_iter().map(|(w, p)| {
        let g = eisenstein(w, order).expect("even weight").into_series();
        (format!("p_{w}"), Verdict::from_witness(series_mismatch(&p.eval_series(&[u.clone(), v.clone()]), &g, order)))
    }))
    .with_detail(format!("weights 4..={max_weight} through q^{}", order - 1))
}
