use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{op_norm_with, resolvent, spectrum, ComplexMatrix, NormConfig};
use crate::{Error, Result, C64};

/// Transfer identities must hold to this relative accuracy.
pub const TRANSFER_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectorialConfig {
    pub nu_grid: Vec<f64>,
    /// Samples per ray, log-spaced in `[min_modulus, max_modulus]`.
    pub samples_per_ray: usize,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub p: f64,
    /// `K_ν` above this is reported as not finite.
    pub finite_cap: f64,
    pub seed: u64,
}

impl Default for SectorialConfig {
    fn default() -> Self {
        Self {
            nu_grid: (1..24).map(|k| k as f64 * PI / 24.0).collect(),
            samples_per_ray: 200,
            min_modulus: 1e-4,
            max_modulus: 1e3,
            p: 2.0,
            finite_cap: 1e10,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectorialReport {
    pub j: usize,
    /// Smallest `ν` in the grid whose sector holds `σ(A_j) \ {0}` and for which `K_ν' < cap`
    /// for every grid angle `ν' ≥ ν`.
    pub omega_hat: f64,
    /// `max |arg μ|` over the nonzero eigenvalues of `A_j`.
    pub omega_spectral: f64,
    /// `ν ↦ K_ν`, keyed by `ν` in the grid order.
    pub k_nu: BTreeMap<String, f64>,
    pub nu: Vec<f64>,
    pub k: Vec<f64>,
    pub max_transfer_residual: f64,
}

/// `A_j = I − ξ̄ⱼT`.
pub fn a_j(t: &ComplexMatrix, xi: C64) -> ComplexMatrix {
    t.scale(-xi.conj()).shift(C64::new(1.0, 0.0))
}

/// Relative residual of `λR(λ,A) = −λξR(ξ(1−λ),T)` at one `λ`, and `‖λR(λ,A)‖₂`.
pub fn transfer1_residual(t: &ComplexMatrix, a: &ComplexMatrix, xi: C64, lambda: C64) -> Result<(f64, ComplexMatrix)> {
    let lhs = resolvent(a, lambda)?.scale(lambda);
    let rhs = resolvent(t, xi * (1.0 - lambda))?.scale(-lambda * xi);
    let scale = lhs.norm_fro().max(rhs.norm_fro()).max(f64::MIN_POSITIVE);
    Ok(((&lhs - &rhs).norm_fro() / scale, lhs))
}

/// Relative residual of `(ξ−z)R(z,T) = −ξ̄(ξ−z)R(ξ̄(ξ−z), A)`.
pub fn transfer3_residual(t: &ComplexMatrix, a: &ComplexMatrix, xi: C64, z: C64) -> Result<f64> {
    let lhs = resolvent(t, z)?.scale(xi - z);
    let rhs = resolvent(a, xi.conj() * (xi - z))?.scale(-xi.conj() * (xi - z));
    let scale = lhs.norm_fro().max(rhs.norm_fro()).max(f64::MIN_POSITIVE);
    Ok((&lhs - &rhs).norm_fro() / scale)
}

/// Points `|λ|e^{±iν}` with `|λ|` log-spaced.
pub fn ray_samples(nu: f64, cfg: &SectorialConfig) -> Vec<C64> {
    let m = cfg.samples_per_ray.max(2);
    let (lo, hi) = (cfg.min_modulus.ln(), cfg.max_modulus.ln());
    let mut out = Vec::with_capacity(2 * m);
    for sign in [1.0, -1.0] {
        for k in 0..m {
            let r = (lo + (hi - lo) * k as f64 / (m - 1) as f64).exp();
            out.push(C64::from_polar(r, sign * nu));
        }
    }
    out
}

/// Sectoriality constants of `A_j = I − ξ̄ⱼT`, each sample checked against the transfer identity.
pub fn sectorial_constant(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    j: usize,
    cfg: &SectorialConfig,
) -> Result<SectorialReport> {
    let xi = *e.points().get(j).ok_or_else(|| Error::InvalidInput(format!("index {j} out of range")))?;
    let spectrum = spectrum(t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    let a = a_j(t, xi);
    let norm = NormConfig { seed: cfg.seed, ..NormConfig::default() };
    let scale = 1.0f64.max(t.norm_fro());
    let omega_spectral = spectrum
        .values()
        .iter()
        .map(|&l| 1.0 - xi.conj() * l)
        .filter(|mu| mu.norm() > 1e-6 * scale)
        .map(|mu| mu.arg().abs())
        .fold(0.0, f64::max);
    let mut nu = cfg.nu_grid.clone();
    nu.sort_by(f64::total_cmp);
    let mut k = Vec::with_capacity(nu.len());
    let mut worst: f64 = 0.0;
    for &v in &nu {
        let pts = ray_samples(v, cfg);
        let vals: Vec<Result<(f64, f64)>> = pts
            .par_iter()
            .map(|&l| {
                let (res, lr) = transfer1_residual(t, &a, xi, l)?;
                Ok((res, op_norm_with(&lr, cfg.p, &norm).value))
            })
            .collect();
        let mut kv: f64 = 0.0;
        for r in vals {
            match r {
                Ok((res, val)) => {
                    if res > TRANSFER_TOL {
                        return Err(Error::TransferViolation(res));
                    }
                    worst = worst.max(res);
                    kv = kv.max(val);
                }
                Err(Error::Singular { .. }) => kv = f64::INFINITY,
                Err(e) => return Err(e),
            }
        }
        k.push(kv);
    }
    let mut omega_hat = PI;
    for i in (0..nu.len()).rev() {
        if nu[i] > omega_spectral && k[i] < cfg.finite_cap {
            omega_hat = nu[i];
        } else {
            break;
        }
    }
    let k_nu = nu.iter().zip(&k).map(|(v, kv)| (format!("{v:.6}"), *kv)).collect();
    Ok(SectorialReport { j, omega_hat, omega_spectral, k_nu, nu, k, max_transfer_residual: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn zero_operator_closed_form() {
        let t = ComplexMatrix::zeros(2);
        let xi = c64(1.0, 0.0);
        let cfg = SectorialConfig { samples_per_ray: 400, ..Default::default() };
        let e = PeripheralSet::new(vec![xi]).unwrap();
        let rep = sectorial_constant(&t, &e, 0, &cfg).unwrap();
        for (&v, &kv) in rep.nu.iter().zip(&rep.k) {
            let want = ray_samples(v, &cfg).iter().map(|&l| (l / (l - 1.0)).norm()).fold(0.0, f64::max);
            assert!((kv - want).abs() <= 1e-12 * want, "{v} {kv} {want}");
        }
        assert_eq!(rep.omega_spectral, 0.0);
        assert!(rep.omega_hat <= PI / 24.0 + 1e-12);
    }

    #[test]
    fn transfer3_on_random() {
        let t = crate::linalg::random_matrix(5, 3, 0.15);
        let xi = C64::from_polar(1.0, 0.7);
        let a = a_j(&t, xi);
        for k in 0..50 {
            let z = C64::from_polar(1.0 + 0.02 * (k + 1) as f64, 0.3 * k as f64);
            assert!(transfer3_residual(&t, &a, xi, z).unwrap() < TRANSFER_TOL);
        }
    }
}
