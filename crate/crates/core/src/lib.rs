//! Numerical workbench for Ritt_E operators on finite-dimensional ℓᵖ spaces.
//!
//! An operator `T` on ℂᵈ is Ritt_E, for a finite set `E ⊂ 𝕋`, when its
//! spectrum lies in the closed unit disc and its resolvent satisfies
//! `‖R(z,T)‖ ≤ c / ∏|ξⱼ − z|` on the annulus `1 < |z| < 2`. This crate
//! provides the objects needed to study such operators at desk scale:
//!
//! * [`linalg`]: dense complex matrices, resolvents, spectra, ℓᵖ operator norms.
//! * [`domains`]: generalized Stolz domains `E_r`, sectors, contours and the
//!   polygon construction for the polygonal functional calculus.
//! * [`calculus`]: contour-integral functional calculus and constant estimation.
//! * [`classify`]: Ritt_E certification, type, sectoriality and power bounds.
//! * [`rbound`]: Rademacher averages and R-bound lower estimates.
//! * [`unity`]: multi-point decompositions of unity over a sectorial base family.
//! * [`lp`]: regular norms, positive ensembles and the contractively regular experiment.

#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod classify;
pub mod domains;
mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod quad;
pub mod rbound;
pub mod unity;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Polynomial, Spectrum};
pub use domains::{ConvexPolygon, PeripheralSet, PiecewiseContour, Sector, StolzDomain};

/// Complex double used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The generator behind every seeded operation of the crate.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
