use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Default floor for `inf |h|` over the sampled sector.
pub const DEFAULT_FLOOR: f64 = 1e-2;

/// Base family `(Θₙ, Φₙ, Ψₙ)`, `|n| ≤ M`, on `Σ_{π/2}` built from
/// `σ(λ) = λ^{1/3}(1+λ)^{−2/3}`: `Φₙ = Ψₙ = σ(2⁻ⁿλ)`, `Θₙ = σ(2⁻ⁿλ)/h(λ)` with
/// `h(λ) = Σ_{|n|≤M} σ³(2⁻ⁿλ)`, so `Σ ΘₙΦₙΨₙ = 1` at the truncation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectorFamily {
    pub recipe: String,
    pub m: usize,
    /// Claimed decay exponent of `Φₙ, Ψₙ` at 0.
    pub s: f64,
    /// Claimed constant: `|Φₙ(λ)| ≤ c|λ|^s` for every `|n| ≤ M`.
    pub c: f64,
    pub floor: f64,
    /// Smallest sampled `|h|` on `Σ_{π/2−10⁻²}` within the validity zone.
    pub min_h: f64,
    /// The truncated normalizer is only meaningful for `|λ| ≥ 2⁻ᴹ`.
    pub validity_min_modulus: f64,
    pub valid: bool,
}

pub fn sigma(l: C64) -> C64 {
    (l.ln() / 3.0 - (C64::new(1.0, 0.0) + l).ln() * (2.0 / 3.0)).exp()
}

/// `λ/(1+λ)²`, the cube of `σ`.
pub fn rho(l: C64) -> C64 {
    let d = C64::new(1.0, 0.0) + l;
    l / (d * d)
}

impl SectorFamily {
    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        let m = self.m as i64;
        -m..=m
    }

    pub fn len(&self) -> usize {
        2 * self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn scale(n: i64) -> f64 {
        2f64.powi(-n as i32)
    }

    pub fn h(&self, l: C64) -> C64 {
        self.indices().map(|n| rho(l * Self::scale(n))).sum()
    }

    pub fn phi(&self, n: i64, l: C64) -> C64 {
        sigma(l * Self::scale(n))
    }

    pub fn psi(&self, n: i64, l: C64) -> C64 {
        self.phi(n, l)
    }

    pub fn theta(&self, n: i64, l: C64) -> C64 {
        self.phi(n, l) / self.h(l)
    }

    /// `(h(λ), [σ(2⁻ⁿλ)]_{|n|≤M})`, the data every member is built from.
    pub fn table(&self, l: C64) -> (C64, Vec<C64>) {
        let sig: Vec<C64> = self.indices().map(|n| sigma(l * Self::scale(n))).collect();
        let h = sig.iter().map(|s| s * s * s).sum();
        (h, sig)
    }
}

/// Sample points of `Σ_{π/2−10⁻²}` used by the floor check: rays at several angles with
/// `|λ|` log-spaced over the validity zone `[2⁻ᴹ, 2ᴹ]`.
pub fn floor_samples(m: usize, per_ray: usize) -> Vec<C64> {
    let edge = FRAC_PI_2 - 1e-2;
    let angles = [-edge, -0.75 * edge, -0.5 * edge, 0.0, 0.5 * edge, 0.75 * edge, edge];
    let (lo, hi) = (-(m as f64), m as f64);
    let mut out = Vec::with_capacity(angles.len() * per_ray);
    for a in angles {
        for k in 0..per_ray {
            let e = lo + (hi - lo) * k as f64 / (per_ray - 1).max(1) as f64;
            out.push(C64::from_polar(2f64.powf(e), a));
        }
    }
    out
}

/// Builds the default family and reports its floor check without failing.
pub fn default_family_unchecked(m: usize, floor: f64) -> SectorFamily {
    let mut fam = SectorFamily {
        recipe: "sigma-dyadic".into(),
        m,
        s: 1.0 / 3.0,
        c: 2f64.powf(m as f64 / 3.0),
        floor,
        min_h: f64::INFINITY,
        validity_min_modulus: 2f64.powi(-(m as i32)),
        valid: false,
    };
    fam.min_h = floor_samples(m, 4001).into_iter().map(|l| fam.h(l).norm()).fold(f64::INFINITY, f64::min);
    fam.valid = fam.min_h >= floor;
    fam
}

pub fn default_family(m: usize) -> Result<SectorFamily> {
    default_family_with_floor(m, DEFAULT_FLOOR)
}

pub fn default_family_with_floor(m: usize, floor: f64) -> Result<SectorFamily> {
    if m < 1 {
        return Err(Error::InvalidInput("M must be at least 1".into()));
    }
    let fam = default_family_unchecked(m, floor);
    if !fam.valid {
        return Err(Error::FloorFailure { min_h: fam.min_h, floor });
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_on_real_axis() {
        let f = default_family(8).unwrap();
        for k in -40..=40 {
            let h = f.h(C64::new(2f64.powf(k as f64 / 4.0), 0.0));
            assert!(h.re > 0.0 && h.im.abs() < 1e-15);
        }
    }

    #[test]
    fn unity_by_construction() {
        let f = default_family(6).unwrap();
        for l in floor_samples(6, 50) {
            let s: C64 = f.indices().map(|n| f.theta(n, l) * f.phi(n, l) * f.psi(n, l)).sum();
            assert!((s - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn sigma_decay() {
        // |1+λ| ≥ max(1, |λ|) on the closed right half-plane
        for l in floor_samples(20, 200) {
            let bound = l.norm().powf(1.0 / 3.0).min(l.norm().powf(-1.0 / 3.0));
            assert!(sigma(l).norm() <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn cube_is_rho() {
        for l in floor_samples(5, 30) {
            assert!((sigma(l).powi(3) - rho(l)).norm() < 1e-13 * rho(l).norm().max(1e-300));
        }
    }
}
