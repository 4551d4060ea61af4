//! The Jacobi form `𝔽`, the KZB connection in the rational `(T, A, u, q)` gauge,
//! and exact checks of flatness, the Tate restriction, the algebraic form on
//! the `(u, v)` chart and the Hodge/weight filtrations.
//!
//! Gauge: `T = 2πi𝐭`, `A = 𝐚/2πi`, `u = 2πiξ`, `q = e(τ)`. Then `ν₁ = T𝔽(u,T,q)·A du`,
//! `ν₂ = (1/T + T𝔽_v(u,T,q))·A dq/q`, the `dτ` piece is `A ∂/∂T dq/q`, and `ψ` has
//! rational coefficients `G_{2m+2}(q)/(2m)!` against `dq/q`.

mod connection;
mod hodge;
mod jacobi;
mod qdr;
mod tate;

pub use connection::{
    assemble_kzb, assemble_kzb_variant, closedness_check, closedness_defect, curvature, flatness_check, ConnectionForm, FormTerm,
    KzbVariant,
};
pub use hodge::hodge_weight_transversality_check;
pub use jacobi::{
    addition_formula_check, addition_formula_check_variant, heat_check, heat_check_variant, jacobi_f,
    jacobi_f_variant, q0_coth_check, symmetry_check, v_derivative_check, v_derivative_combination,
    wp_difference_identity_check, AdditionVariant, JacobiCoeffs, JacobiFormSeries, JacobiVariant,
};
pub use qdr::{
    frame_change_check, m1vec_connection, nabla0_check, qdr_homogeneity_check, qdr_pullback_check, AlgebraicForm,
    AlgebraicTerm,
};
pub use tate::{p1_residues, tate_restriction_check};

use crate::exactcore::MSeries;

/// First nonzero coefficient of `diff`, rendered with variable names.
pub(crate) fn mseries_witness(diff: &MSeries, names: &[&str]) -> Option<String> {
    diff.first_nonzero().map(|(e, c)| {
        let mono: Vec<String> = names.iter().zip(&e).map(|(n, k)| format!("{n}^{k}")).collect();
        format!("{}: coefficient {c}", mono.join(" "))
    })
}
