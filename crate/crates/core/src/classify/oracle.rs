use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{spectrum, ComplexMatrix, Spectrum};
use crate::{Error, Result, C64};

/// Spectral certificate for the finite-dimensional Ritt_E test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleCertificate {
    pub is_ritt: bool,
    pub spectrum: Spectrum,
    pub spectral_radius: f64,
    /// An eigenvalue sits in `1 − tol ≤ |λ|` without being tied to a point of `E`.
    pub near_boundary: bool,
    pub reasons: Vec<String>,
}

/// `σ(T) ⊂ 𝔻 ∪ E` with every peripheral eigenvalue semisimple.
///
/// In finite dimensions a Jordan block of size `m` at `ξ` makes `‖R(z,T)‖` grow like
/// `|z − ξ|^{−m}`, so the resolvent estimate forces `m = 1`; this sharpening is what the
/// semisimplicity test checks.
pub fn is_ritt_e_fd(t: &ComplexMatrix, e: &PeripheralSet, tol: f64) -> Result<OracleCertificate> {
    let spectrum = spectrum(t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    let mut reasons = Vec::new();
    let mut near_boundary = false;
    for ev in &spectrum.eigenvalues {
        let m = ev.value.norm();
        if m > 1.0 + tol {
            reasons.push(format!("eigenvalue {} outside the closed disc", ev.value));
            continue;
        }
        if m >= 1.0 - tol {
            let (_, d) = e.nearest(ev.value);
            if d > tol {
                near_boundary = true;
                reasons.push(format!("eigenvalue {} on or near the circle but not in E", ev.value));
            } else if !ev.semisimple {
                reasons.push(format!("peripheral eigenvalue {} is not semisimple", ev.value));
            }
        }
    }
    Ok(OracleCertificate {
        is_ritt: reasons.is_empty(),
        spectral_radius: spectrum.spectral_radius(),
        spectrum,
        near_boundary,
        reasons,
    })
}

/// The points of the circle carried by `σ(T)`: eigenvalues with `||λ| − 1| ≤ tol`, merged
/// within `tol` and projected onto `𝕋`.
pub fn peripheral_points(t: &ComplexMatrix, tol: f64) -> Result<PeripheralSet> {
    let spectrum = spectrum(t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    let mut pts: Vec<C64> = Vec::new();
    for ev in &spectrum.eigenvalues {
        let z = ev.value;
        if (z.norm() - 1.0).abs() <= tol && !pts.iter().any(|p| (p - z).norm() <= tol) {
            pts.push(z / z.norm());
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidInput("no eigenvalue on the unit circle; E cannot be inferred".into()));
    }
    PeripheralSet::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn infers_peripheral_points() {
        let t = ComplexMatrix::from_diag(&[c64(1.0, 0.0), c64(-1.0, 0.0), c64(-1.0, 0.0), c64(0.5, 0.0)]);
        let e = peripheral_points(&t, 1e-6).unwrap();
        assert_eq!(e.len(), 2);
        assert!(peripheral_points(&ComplexMatrix::from_diag(&[c64(0.5, 0.0)]), 1e-6).is_err());
    }

    fn e1() -> PeripheralSet {
        PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn averaged_cycle() {
        let t = &ComplexMatrix::identity(4) + &ComplexMatrix::cyclic_permutation(4);
        let t = t.scale_real(0.5);
        let cert = is_ritt_e_fd(&t, &e1(), 1e-6).unwrap();
        assert!(cert.is_ritt, "{:?}", cert.reasons);
        let vals = cert.spectrum.values();
        assert_eq!(vals.len(), 4);
        for w in [c64(0.0, 0.0), c64(0.5, -0.5), c64(0.5, 0.5), c64(1.0, 0.0)] {
            let d = vals.iter().map(|v| (v - w).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-12, "{w}: {d:e}");
        }
    }

    #[test]
    fn defective_peripheral() {
        let xi = c64(0.6, 0.8);
        let e = PeripheralSet::new(vec![xi]).unwrap();
        let cert = is_ritt_e_fd(&ComplexMatrix::jordan(xi, 2), &e, 1e-6).unwrap();
        assert!(!cert.is_ritt);
    }

    #[test]
    fn outside_disc() {
        let t = ComplexMatrix::from_diag(&[c64(1.01, 0.0)]);
        assert!(!is_ritt_e_fd(&t, &e1(), 1e-6).unwrap().is_ritt);
    }

    #[test]
    fn unimodular_outside_e() {
        let t = ComplexMatrix::from_diag(&[c64(-1.0, 0.0), c64(0.2, 0.0)]);
        let cert = is_ritt_e_fd(&t, &e1(), 1e-6).unwrap();
        assert!(!cert.is_ritt && cert.near_boundary);
    }
}
