use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domains::in_standard_sector;
use crate::linalg::{inverse, norm2, op_norm_with, spectrum, ComplexMatrix, NormConfig};
use crate::{seeded_rng, Error, Result, C64};

/// `g(λ) = c₀ + Σ aₖ/(λ − pₖ)`: rational, bounded at infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFn {
    pub c0: C64,
    /// `(aₖ, pₖ)`.
    pub terms: Vec<(C64, C64)>,
}

impl RationalFn {
    pub fn eval(&self, z: C64) -> C64 {
        self.c0 + self.terms.iter().map(|(a, p)| a / (z - p)).sum::<C64>()
    }

    pub fn eval_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::identity(m.dim()).scale(self.c0);
        for (a, p) in &self.terms {
            out = &out + &inverse(&m.shift(-p))?.scale(*a);
        }
        Ok(out)
    }

    /// `g ∘ φ_ρ` with `φ_ρ(z) = (1 − ρ) + ρz`.
    pub fn compose_shift(&self, rho: f64) -> Self {
        Self {
            c0: self.c0,
            terms: self.terms.iter().map(|(a, p)| (a / rho, (p - (1.0 - rho)) / rho)).collect(),
        }
    }

    pub fn check_poles(&self, theta: f64) -> Result<()> {
        if self.terms.iter().any(|(_, p)| in_standard_sector(*p, theta, true) || p.norm() < 1e-12) {
            return Err(Error::PoleInSector);
        }
        Ok(())
    }

    /// `‖g‖_{∞,Σθ}` from the boundary rays `arg λ = ±θ`, `|λ| ≤ 10³`, the vertex and the
    /// value at infinity, with golden-section refinement around the best ray sample.
    pub fn sector_sup(&self, theta: f64) -> f64 {
        let mut best = self.eval(C64::new(0.0, 0.0)).norm().max(self.c0.norm());
        let m = 2000;
        for sign in [1.0, -1.0] {
            let ray = |s: f64| self.eval(C64::from_polar(10f64.powf(s), sign * theta)).norm();
            let (lo, hi) = (-6.0, 3.0);
            let h = (hi - lo) / m as f64;
            let mut arg = (f64::NEG_INFINITY, lo);
            for k in 0..=m {
                let s = lo + h * k as f64;
                let v = ray(s);
                if v > arg.0 {
                    arg = (v, s);
                }
            }
            best = best.max(arg.0);
            let (mut a, mut b) = ((arg.1 - h).max(lo), (arg.1 + h).min(hi));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..60 {
                let (x1, x2) = (b - g * (b - a), a + g * (b - a));
                if ray(x1) > ray(x2) {
                    b = x2;
                } else {
                    a = x1;
                }
            }
            best = best.max(ray(0.5 * (a + b)));
        }
        best
    }
}

/// Random members with poles placed outside `Σ̄_{θ+margin}` in the left half-plane direction.
pub fn rational_ensemble(theta: f64, count: usize, max_terms: usize, seed: u64) -> Vec<RationalFn> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let terms = (0..rng.random_range(1..=max_terms))
            .map(|_| {
                let a = C64::from_polar(rng.random_range(0.1..2.0), rng.random_range(-3.2..3.2));
                let ang = rng.random_range(theta + 0.05..(2.0 * std::f64::consts::PI - theta - 0.05));
                let r = 10f64.powf(rng.random_range(-2.0..1.0));
                (a, C64::from_polar(r, ang))
            })
            .collect();
        let g = RationalFn { c0: C64::new(rng.random_range(-1.0..1.0), 0.0), terms };
        if g.check_poles(theta).is_ok() {
            out.push(g);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoShiftReport {
    /// Largest `‖g(A)‖/‖g‖` over the ensemble closed under `g ↦ g∘φ_ρ`.
    pub k_a: f64,
    /// `max_g ‖g((1−ρ)I + ρA)‖/‖g‖` per `ρ`.
    pub per_rho: Vec<(f64, f64)>,
    pub max_ratio: f64,
    /// `max ‖g(A_ρ) − (g∘φ_ρ)(A)‖ / ‖g(A_ρ)‖`.
    pub composition_residual: f64,
    pub bounded: bool,
}

pub fn rho_shift_check(a: &ComplexMatrix, theta: f64, g_ensemble: &[RationalFn], rho_grid: &[f64], p: f64) -> Result<RhoShiftReport> {
    for g in g_ensemble {
        g.check_poles(theta)?;
    }
    let sp = spectrum(a).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    let scale = 1f64.max(norm2(a));
    if sp.values().iter().any(|&l| l.norm() > 1e-9 * scale && !in_standard_sector(l, theta, true)) {
        return Err(Error::InvalidInput(format!("σ(A) is not inside the closed sector of angle {theta}")));
    }
    let norm = NormConfig::default();
    let ratio = |g: &RationalFn, m: &ComplexMatrix| -> Result<(f64, ComplexMatrix)> {
        let v = g.eval_matrix(m)?;
        Ok((op_norm_with(&v, p, &norm).value / g.sector_sup(theta), v))
    };
    let mut k_a: f64 = 0.0;
    let mut per_rho = Vec::with_capacity(rho_grid.len());
    let mut composition_residual: f64 = 0.0;
    for g in g_ensemble {
        k_a = k_a.max(ratio(g, a)?.0);
    }
    for &rho in rho_grid {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::InvalidInput(format!("ρ = {rho} outside (0, 1]")));
        }
        let a_rho = a.scale_real(rho).shift(C64::new(1.0 - rho, 0.0));
        let mut worst: f64 = 0.0;
        for g in g_ensemble {
            let (r, direct) = ratio(g, &a_rho)?;
            worst = worst.max(r);
            let composed = g.compose_shift(rho);
            let (rc, via) = ratio(&composed, a)?;
            k_a = k_a.max(rc);
            composition_residual = composition_residual.max(norm2(&(&direct - &via)) / norm2(&direct).max(f64::MIN_POSITIVE));
        }
        per_rho.push((rho, worst));
    }
    let max_ratio = per_rho.iter().map(|x| x.1).fold(0.0, f64::max);
    Ok(RhoShiftReport { k_a, max_ratio, bounded: max_ratio <= k_a * (1.0 + 1e-2), per_rho, composition_residual })
}
