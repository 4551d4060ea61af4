//! q-expansions of Eisenstein series and the discriminant, quasi-modular
//! identities for `G_2`, and Eisenstein series as polynomials in `(u, v)`.
//!
//! Everything uses the normalization `2πiξ = 1`, so `u = 20G_4` and `v = 7G_6/3`
//! are exact rational q-series. The discriminant is the standard product
//! `q Π (1 - q^n)^24`.

mod eisenstein;
mod p2m;
mod wp;

pub use eisenstein::{
    delta0, discriminant_check, e2_log_delta_check, eisenstein, eisenstein_any, g4_g2_relation_check, series_mismatch,
    sigma, theta, uv_series, uv_wronskian_check, G4Variant, ModularQExpansion,
};
pub use p2m::{p2m, p2m_min_order, p2m_recheck, p2m_table, weighted_monomials, UV};
pub use wp::wp_series;

use crate::exactcore::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModformsError {
    #[error("weight {0} is not an admissible even weight")]
    OddWeight(u32),
    #[error("weight {weight} expansion has constant term {found}")]
    ConstantTerm { weight: u32, found: Rational },
    #[error("q-order {got} too small, need at least {needed}")]
    OrderTooSmall { needed: i32, got: i32 },
    #[error("coefficient system for weight {0} is underdetermined")]
    Underdetermined(u32),
    #[error("coefficient system for weight {0} is inconsistent")]
    Inconsistent(u32),
}
