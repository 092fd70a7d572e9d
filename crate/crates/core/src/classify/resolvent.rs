use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{op_norm_with, resolvent, ComplexMatrix, NormConfig};
use crate::{Result, C64};

/// Sampling grid for the annulus `1 < |z| < outer_radius`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Radii `1 + (R − 1)·2⁻ᵏ` for `k = 0..=levels`.
    pub levels: usize,
    pub base_angles: usize,
    /// Geometric angular refinements on each side of every `ξⱼ`.
    pub vertex_refinements: usize,
    pub outer_radius: f64,
    pub p: f64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { levels: 20, base_angles: 256, vertex_refinements: 24, outer_radius: 2.0, p: 2.0, seed: 0 }
    }
}

impl SamplerConfig {
    /// Lighter grid used where the family is fed to an R-bound search.
    pub fn coarse() -> Self {
        Self { levels: 12, base_angles: 48, vertex_refinements: 10, ..Self::default() }
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..=self.levels)
            .map(|k| {
                let r = 1.0 + (self.outer_radius - 1.0) * 0.5f64.powi(k as i32);
                if k == 0 {
                    1.0 + (self.outer_radius - 1.0) * (1.0 - 1e-9)
                } else {
                    r
                }
            })
            .collect()
    }

    /// Base angles are anchored at every point of `E`, so the grid turns with `E`.
    pub fn angles(&self, e: &PeripheralSet) -> Vec<f64> {
        let per = self.base_angles.div_ceil(e.len().max(1)).max(1);
        let mut a: Vec<f64> =
            e.args().iter().flat_map(|&x| (0..per).map(move |k| x + TAU * k as f64 / per as f64)).collect();
        let h = PI / self.base_angles as f64;
        for x in e.args() {
            a.push(x);
            for m in 0..self.vertex_refinements {
                let d = h * 0.5f64.powi(m as i32);
                a.push(x + d);
                a.push(x - d);
            }
        }
        let mut a: Vec<f64> = a.into_iter().map(|t| (t + PI).rem_euclid(TAU) - PI).collect();
        a.sort_by(f64::total_cmp);
        a.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
        a
    }

    /// Sample points in fixed order: radius-major, then angle.
    pub fn points(&self, e: &PeripheralSet) -> Vec<C64> {
        let angles = self.angles(e);
        self.radii()
            .iter()
            .flat_map(|&r| angles.iter().map(move |&a| C64::from_polar(r, a)))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResolventConstant {
    /// Sampled sup of `∏|ξⱼ − z|·‖R(z,T)‖_p`.
    pub c_hat: f64,
    pub argmax: C64,
    /// Log–log slope of `‖R(z,T)‖` against `|z − ξⱼ|` along the radial approach to each `ξⱼ`.
    pub growth_exponents: Vec<f64>,
    pub samples: usize,
}

fn weighted(t: &ComplexMatrix, e: &PeripheralSet, z: C64, norm: &NormConfig, p: f64) -> Result<f64> {
    let r = resolvent(t, z)?;
    Ok(e.vanishing_abs(z) * op_norm_with(&r, p, norm).value)
}

/// Sampled resolvent constant and per-vertex growth exponents.
pub fn resolvent_constant(t: &ComplexMatrix, e: &PeripheralSet, cfg: &SamplerConfig) -> Result<ResolventConstant> {
    let norm = NormConfig { seed: cfg.seed, ..NormConfig::default() };
    let pts = cfg.points(e);
    let vals: Vec<Result<f64>> = pts.par_iter().map(|&z| weighted(t, e, z, &norm, cfg.p)).collect();
    let mut c_hat = 0.0;
    let mut argmax = pts[0];
    for (z, v) in pts.iter().zip(vals) {
        let v = v?;
        if v > c_hat {
            c_hat = v;
            argmax = *z;
        }
    }
    let growth_exponents = e
        .points()
        .iter()
        .map(|&xi| growth_exponent(t, xi, cfg, &norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolventConstant { c_hat, argmax, growth_exponents, samples: pts.len() })
}

/// Slope of `log‖R(ξ(1 + d), T)‖` against `−log d` over the finest half of the dyadic radii.
pub fn growth_exponent(t: &ComplexMatrix, xi: C64, cfg: &SamplerConfig, norm: &NormConfig) -> Result<f64> {
    let k_max = cfg.levels.max(4);
    let mut y = vec![0.0; k_max + 1];
    for (k, yk) in y.iter_mut().enumerate().skip(1) {
        let d = 0.5f64.powi(k as i32);
        let r = resolvent(t, xi * (1.0 + d))?;
        *yk = op_norm_with(&r, cfg.p, norm).value;
    }
    // y[k] against n = 2^k: slope in log2 units equals the exponent in d
    let pts: Vec<(f64, f64)> = (k_max / 2..=k_max).map(|k| (k as f64, y[k].log2())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(num / den)
}
