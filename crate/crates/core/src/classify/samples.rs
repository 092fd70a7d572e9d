use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::is_ritt_e_fd;
use crate::domains::{build_stolz, region_contains, PeripheralSet};
use crate::linalg::random::{diagonalizable_with, normal_with, random_in_disc};
use crate::linalg::ComplexMatrix;
use crate::{seeded_rng, Error, Result, C64};

/// Recipe for random matrices that are Ritt_E by construction: diagonalizable, every `ξⱼ`
/// an eigenvalue, the remaining eigenvalues inside `E_{inner_r}` with modulus at most
/// `max_inner_modulus`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleConfig {
    pub dim: usize,
    pub inner_r: f64,
    pub max_inner_modulus: f64,
    pub similarity_strength: f64,
    /// Unitary similarity instead of a general one.
    pub normal: bool,
    /// Probability that a point of `E` is a double eigenvalue.
    pub double_probability: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            dim: 8,
            inner_r: 0.5,
            max_inner_modulus: 0.97,
            similarity_strength: 0.5,
            normal: false,
            double_probability: 0.25,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RittSample {
    pub t: ComplexMatrix,
    pub eigenvalues: Vec<C64>,
    pub seed: u64,
}

pub fn sample_eigenvalues<R: Rng>(rng: &mut R, e: &PeripheralSet, cfg: &SampleConfig) -> Result<Vec<C64>> {
    if cfg.dim < e.len() {
        return Err(Error::InvalidInput(format!("dimension {} is below |E| = {}", cfg.dim, e.len())));
    }
    let stolz = build_stolz(e, cfg.inner_r)?;
    let mut vals = Vec::with_capacity(cfg.dim);
    for &xi in e.points() {
        vals.push(xi);
        if vals.len() < cfg.dim && rng.random::<f64>() < cfg.double_probability {
            vals.push(xi);
        }
    }
    let mut tries = 0usize;
    while vals.len() < cfg.dim {
        let z = random_in_disc(rng, cfg.max_inner_modulus);
        if region_contains(&stolz, z, false) {
            vals.push(z);
        }
        tries += 1;
        if tries > 100_000 {
            return Err(Error::InvalidInput("inner region too small to sample".into()));
        }
    }
    Ok(vals)
}

pub fn ritt_sample(e: &PeripheralSet, cfg: &SampleConfig, seed: u64) -> Result<RittSample> {
    let mut rng = seeded_rng(seed);
    let eigenvalues = sample_eigenvalues(&mut rng, e, cfg)?;
    let t = if cfg.normal {
        normal_with(&mut rng, &eigenvalues)
    } else {
        diagonalizable_with(&mut rng, &eigenvalues, cfg.similarity_strength)
    };
    Ok(RittSample { t, eigenvalues, seed })
}

/// `count` samples that also pass the spectral oracle; seeds run upward from `seed`.
pub fn certified_samples(e: &PeripheralSet, cfg: &SampleConfig, count: usize, seed: u64) -> Result<Vec<RittSample>> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        if s - seed > 10 * count as u64 + 10 {
            return Err(Error::InvalidInput("too many generated samples failed certification".into()));
        }
        let sample = ritt_sample(e, cfg, s)?;
        s += 1;
        if is_ritt_e_fd(&sample.t, e, 1e-6)?.is_ritt {
            out.push(sample);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_certify() {
        let e = PeripheralSet::roots_of_unity(3).unwrap();
        let v = certified_samples(&e, &SampleConfig::default(), 5, 11).unwrap();
        assert_eq!(v.len(), 5);
        for s in &v {
            assert!(s.eigenvalues.iter().filter(|l| l.norm() < 1.0 - 1e-9).all(|l| l.norm() <= 0.97));
        }
    }

    #[test]
    fn reproducible() {
        let e = PeripheralSet::roots_of_unity(2).unwrap();
        let a = ritt_sample(&e, &SampleConfig::default(), 4).unwrap();
        let b = ritt_sample(&e, &SampleConfig::default(), 4).unwrap();
        assert_eq!(a.t, b.t);
    }
}
