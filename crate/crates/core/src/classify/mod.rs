//! Ritt_E certification: the spectral oracle, sampled resolvent constants, the type `r`,
//! sectoriality of `A_j = I − ξ̄ⱼT`, the power-bound constant chain and `Γₙ` reconstruction.

mod oracle;
mod reconstruct;
mod resolvent;
pub mod samples;
mod sectorial;
mod power;

pub use oracle::{is_ritt_e_fd, peripheral_points, OracleCertificate};
pub use reconstruct::{gamma_n_reconstruction, GammaResidual};
pub use resolvent::{growth_exponent, resolvent_constant, ResolventConstant, SamplerConfig};
pub use samples::{certified_samples, ritt_sample, RittSample, SampleConfig};
pub use sectorial::{
    a_j, ray_samples, sectorial_constant, transfer1_residual, transfer3_residual, SectorialConfig, SectorialReport,
    TRANSFER_TOL,
};
pub use power::{c_q, power_certificate, power_certificate_with, PowerCertificate, GROWTH_SLOPE};

use serde::{Deserialize, Serialize};

use crate::domains::{build_stolz, region_contains, PeripheralSet};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Floor returned by the type bisection when every `r` works.
pub const TYPE_FLOOR: f64 = 1e-6;

/// Exponent above which a vertex counts as a higher-order resolvent pole.
pub const GROWTH_TOLERANCE: f64 = 0.1;

/// Smallest `r` (to `10⁻⁶`) with `σ(T) ⊂ closure(E_r)`; eigenvalues tied to `E` by the
/// oracle are skipped.
pub fn ritt_type(t: &ComplexMatrix, e: &PeripheralSet, tol: f64) -> Result<f64> {
    let cert = is_ritt_e_fd(t, e, tol)?;
    if !cert.is_ritt {
        return Err(Error::NotRittE(cert.reasons.join("; ")));
    }
    let inner: Vec<C64> = cert.spectrum.values().into_iter().filter(|l| l.norm() < 1.0 - tol).collect();
    type_of_points(&inner, e)
}

/// Bisection for the least `r` whose closed Stolz domain holds every point.
pub fn type_of_points(points: &[C64], e: &PeripheralSet) -> Result<f64> {
    let inside = |r: f64| -> Result<bool> {
        let d = build_stolz(e, r)?;
        Ok(points.iter().all(|&z| region_contains(&d, z, true)))
    };
    if inside(TYPE_FLOOR)? {
        return Ok(TYPE_FLOOR);
    }
    let mut hi = points.iter().map(|z| z.norm()).fold(0.0, f64::max).max(TYPE_FLOOR);
    if !inside(hi)? {
        hi = (hi + 1e-9).min(1.0 - 1e-12);
    }
    let mut lo = TYPE_FLOOR;
    while hi - lo > 0.25 * TYPE_FLOOR {
        let mid = 0.5 * (lo + hi);
        if inside(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthDiagnostic {
    pub xi: C64,
    pub exponent: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RittReport {
    /// Resolvent diagnostics: spectral inclusion and every growth exponent `≤ 1 + 0.1`.
    pub is_ritt: bool,
    pub c_hat: f64,
    pub c_hat_argmax: C64,
    /// `c_hat` over `1 < |z| < 1.5`.
    pub c_hat_inner: f64,
    pub r_star: Option<f64>,
    pub oracle_verdict: bool,
    pub agreement: bool,
    pub growth_diagnostics: Vec<GrowthDiagnostic>,
    pub spectral_radius: f64,
    pub reasons: Vec<String>,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub tol: f64,
    pub sampler: SamplerConfig,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self { tol: 1e-6, sampler: SamplerConfig::default() }
    }
}

pub fn classify(t: &ComplexMatrix, e: &PeripheralSet, cfg: &ClassifyConfig) -> Result<RittReport> {
    let cert = is_ritt_e_fd(t, e, cfg.tol)?;
    let inclusion = cert.spectrum.eigenvalues.iter().all(|ev| {
        let m = ev.value.norm();
        m <= 1.0 + cfg.tol && (m < 1.0 - cfg.tol || e.nearest(ev.value).1 <= cfg.tol)
    });
    let rc = resolvent_constant(t, e, &cfg.sampler)?;
    let inner = resolvent_constant(t, e, &SamplerConfig { outer_radius: 1.5, ..cfg.sampler })?;
    let growth_ok = rc.growth_exponents.iter().all(|&x| x <= 1.0 + GROWTH_TOLERANCE);
    let is_ritt = inclusion && growth_ok;
    let r_star = if cert.is_ritt { Some(ritt_type(t, e, cfg.tol)?) } else { None };
    let mut reasons = cert.reasons.clone();
    for (xi, x) in e.points().iter().zip(&rc.growth_exponents) {
        if *x > 1.0 + GROWTH_TOLERANCE {
            reasons.push(format!("resolvent grows like |z − ξ|^(−{x:.3}) at ξ = {xi}"));
        }
    }
    Ok(RittReport {
        is_ritt,
        c_hat: rc.c_hat,
        c_hat_argmax: rc.argmax,
        c_hat_inner: inner.c_hat,
        r_star,
        oracle_verdict: cert.is_ritt,
        agreement: is_ritt == cert.is_ritt,
        growth_diagnostics: e
            .points()
            .iter()
            .zip(&rc.growth_exponents)
            .map(|(&xi, &exponent)| GrowthDiagnostic { xi, exponent })
            .collect(),
        spectral_radius: cert.spectral_radius,
        reasons,
        samples: rc.samples,
    })
}
