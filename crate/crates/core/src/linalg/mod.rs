//! Dense complex linear algebra: resolvents, spectra, ℓᵖ norms and matrix functions.

mod eigen;
mod expm;
mod lu;
mod matrix;
mod norm;
mod poly;
mod powers;
pub mod random;
mod svd;

pub use eigen::{eigenvalues, hessenberg, spectrum, spectrum_with, Eigenvalue, Spectrum, SpectrumConfig, MAX_DIM};
pub use expm::{mat_exp, EXP_NORM_CAP};
pub use lu::{inverse, resolvent, resolvent_checked, resolvent_identity_residual, solve, Lu, Resolvent, DEFAULT_CONDITION_CAP};
pub use matrix::{vec_norm2, vec_norm_p, ComplexMatrix};
pub use norm::{norm2, norm_maximizer, op_norm, op_norm_with, Certificate, NormConfig, NormEstimate};
pub use poly::{mat_poly, Polynomial};
pub use powers::{log_log_slope, power_and_difference_bounds, power_and_difference_bounds_with, PowerBounds, POWER_CAP};
pub use random::random_matrix;
pub use svd::singular_values;
