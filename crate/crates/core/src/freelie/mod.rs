//! Free associative and free Lie algebra on two letters `T`, `A`.

pub mod checks;
pub mod derivation;
pub mod filtration;
pub mod hopf;
pub mod lr;
pub mod lyndon;
pub mod ncseries;
pub mod word;

pub use hopf::{
    antipode, coproduct, counit, grouplike_defect, grouplike_residual, is_grouplike, is_primitive,
    primitive_defect, TensorSquare,
};
pub use lyndon::{is_lie, is_lyndon, lyndon_coords_approx, lyndon_words, LieElement, LyndonBasis, NotLie};
pub use ncseries::{NCSeries, QNC};
pub use word::{Word, A, T};
pub use derivation::{
    ad_power, alternating_brackets, delta2m, epsilon, nq, nq_with, nw, operator_apply,
    psi_derivation, residues, Derivation, QDerivation,
};
pub use lr::{lr_apply, lr_lemma_checks, nc_witness};
pub use filtration::{
    derivation_filtration, filtration_degrees, filtration_membership_check, sl2_all_check, sl2_relative_iso_check, Degrees,
};
