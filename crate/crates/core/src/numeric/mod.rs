//! Floating-point evaluation of theta and the Jacobi form, numeric transformation
//! laws, and Chen transport for the KZ connection and along fibers.

mod dense;
mod laws;
mod theta;
mod transport;

pub use dense::DenseNC;
pub use laws::{default_law_samples, elliptic_modularity_check, series_vs_theta_check, LawReport};
pub use theta::{fzag_numeric, fzag_v_coeffs, theta, theta_derivs, theta_terms};
pub use transport::{
    associator, fiber_classes_check, fiber_transport, kz_transport, kz_transport_checked, limit_period_check,
    fiber_segment, limit_period_matrix, AssociatorReport, FiberLoop, KzEndpoint, KzPath, NumericNCSeries,
};

use num_complex::Complex64;

/// A point of the complex plane; results are required to be finite.
pub type ComplexPoint = Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("Im τ = {0} is not positive")]
    NotInUpperHalfPlane(f64),
    #[error("evaluation point {0} is within {1:e} of a pole")]
    PoleProximity(Complex64, f64),
    #[error("non-finite value")]
    NonFinite,
    #[error("estimated error {estimate:e} exceeds tolerance {tolerance:e} at {steps} steps")]
    StepsTooFew { steps: usize, estimate: f64, tolerance: f64 },
    #[error("path is invalid: {0}")]
    BadPath(String),
}

pub(crate) fn finite(z: Complex64) -> Result<Complex64, NumericError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(NumericError::NonFinite)
    }
}
