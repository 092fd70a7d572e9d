//! Contour-integral functional calculus and its algebraic companions.

mod cauchy;
mod constant;
mod contour;
mod holo;
mod lagrange;
mod rational;
mod seifert;

pub use cauchy::{cauchy_split, cauchy_split_paths, split_paths, CauchySplit, PATH_CLEARANCE};
pub use constant::{
    boundary_grid, boundary_sup, calculus_constant, ensemble, member_ratios, CalcRegion, CalculusConstant, EnsembleConfig,
    EnsembleMember,
};
pub use contour::{admissible_contour, fc_contour, fc_contour_at, fc_dunford_polygon, integrate_resolvent, FCResult, ResolventIntegral};
pub use holo::Holomorphic;
pub use lagrange::{lagrange_split, node_values, LagrangeSplit, VANDERMONDE_CAP};
pub use rational::{rational_ensemble, rho_shift_check, RationalFn, RhoShiftReport};
pub use seifert::{seifert_identity_residual, seifert_q, BivariatePolynomial, SeifertFactor};
