//! Multi-point decompositions of unity on `𝔻` pulled back from a sectorial base family,
//! and the pairing estimate built on them.

mod family;
mod multipoint;
mod pairing;
mod verify;

pub use family::{
    default_family, default_family_unchecked, default_family_with_floor, floor_samples, rho, sigma, SectorFamily,
    DEFAULT_FLOOR,
};
pub use multipoint::{compose_multipoint, multi_indices, multi_indices_by_scale, MultiIndexTerm};
pub use pairing::{pairing_estimate, pairing_estimate_with, PairingConfig, PairingReport, PairingSample};
pub use verify::{disc_grid, verify_unity, verify_unity_with, BoundaryIntegral, UnityConfig, UnityReport};
