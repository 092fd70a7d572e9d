//! Rademacher averages on discrete ℓᵖ and lower estimates of R-bounds.

mod rademacher;

pub use rademacher::{exact_mean_square, rademacher_norm, RadMode, RadNorm, RadSample, MAX_EXACT};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{is_ritt_e_fd, SamplerConfig};
use crate::domains::PeripheralSet;
use crate::linalg::{norm_maximizer, resolvent, vec_norm_p, ComplexMatrix, NormConfig};
use crate::{seeded_rng, Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_max: usize,
    pub restarts: usize,
    /// Coordinate-ascent sweeps per restart.
    pub sweeps: usize,
    /// Operators drawn for `n ≥ 2` come from the largest-norm members of the family.
    pub candidate_pool: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { n_max: 8, restarts: 4, sweeps: 6, candidate_pool: 8, seed: 0 }
    }
}

/// Data that reproduces an evaluated ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub operators: Vec<usize>,
    pub vectors: Vec<Vec<C64>>,
    /// `2ⁿ⁻¹` sign patterns enumerated.
    pub sign_patterns: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RBoundEstimate {
    pub value: f64,
    pub witness: Witness,
    pub mode: RadMode,
    pub family_size: usize,
}

/// `‖Σεᵢ Sᵢxᵢ‖_Rad / ‖Σεᵢxᵢ‖_Rad` with exact enumeration.
pub fn rad_ratio(family: &[ComplexMatrix], ops: &[usize], vectors: &[Vec<C64>], p: f64) -> f64 {
    let images: Vec<Vec<C64>> = ops.iter().zip(vectors).map(|(&i, x)| family[i].matvec(x)).collect();
    let den = exact_mean_square(vectors, p);
    if den == 0.0 {
        return 0.0;
    }
    (exact_mean_square(&images, p) / den).sqrt()
}

pub fn evaluate_witness(family: &[ComplexMatrix], p: f64, w: &Witness) -> f64 {
    rad_ratio(family, &w.operators, &w.vectors, p)
}

fn ascend(family: &[ComplexMatrix], ops: &[usize], mut x: Vec<Vec<C64>>, p: f64, sweeps: usize) -> (f64, Vec<Vec<C64>>) {
    let mut best = rad_ratio(family, ops, &x, p);
    let dirs = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
    let mut step = 0.5;
    for _ in 0..sweeps {
        let mut improved = false;
        for i in 0..x.len() {
            let scale = vec_norm_p(&x[i], p).max(1e-300);
            for k in 0..x[i].len() {
                for d in dirs {
                    let old = x[i][k];
                    x[i][k] = old + d * (step * scale);
                    let r = rad_ratio(family, ops, &x, p);
                    if r > best {
                        best = r;
                        improved = true;
                    } else {
                        x[i][k] = old;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best, x)
}

/// Lower estimate of the R-bound of a finite family by searching over selections
/// `(S_{i₁}x₁, …, S_{iₙ}xₙ)`; every reported value is an evaluated ratio.
pub fn rbound_lower(family: &[ComplexMatrix], p: f64, cfg: &SearchConfig) -> Result<RBoundEstimate> {
    if family.is_empty() {
        return Err(Error::InvalidInput("empty family".into()));
    }
    let d = family[0].dim();
    if family.iter().any(|m| m.dim() != d) {
        return Err(Error::InvalidInput("family members differ in dimension".into()));
    }
    let norm = NormConfig { seed: cfg.seed, ..NormConfig::default() };
    // n = 1: the ratio is ‖Sx‖/‖x‖, so each member's norm maximizer is the natural witness
    let singles: Vec<(f64, Vec<C64>)> = family.par_iter().map(|m| norm_maximizer(m, p, &norm)).collect();
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| singles[b].0.total_cmp(&singles[a].0).then(a.cmp(&b)));
    let top = order[0];
    let mut best = Witness { operators: vec![top], vectors: vec![singles[top].1.clone()], sign_patterns: 1, seed: cfg.seed };
    let mut best_value = rad_ratio(family, &best.operators, &best.vectors, p);
    let pool: Vec<usize> = order.iter().copied().take(cfg.candidate_pool.max(1)).collect();
    let tasks: Vec<(usize, usize)> = (2..=cfg.n_max.min(MAX_EXACT)).flat_map(|n| (0..cfg.restarts).map(move |r| (n, r))).collect();
    let results: Vec<(f64, Witness)> = tasks
        .par_iter()
        .map(|&(n, r)| {
            let seed = cfg.seed ^ ((n as u64) << 40) ^ r as u64;
            let mut rng = seeded_rng(seed);
            let ops: Vec<usize> = (0..n).map(|_| pool[rng.random_range(0..pool.len())]).collect();
            let x: Vec<Vec<C64>> = ops
                .iter()
                .map(|&i| {
                    singles[i]
                        .1
                        .iter()
                        .map(|z| z + C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * 0.3)
                        .collect()
                })
                .collect();
            let (v, x) = ascend(family, &ops, x, p, cfg.sweeps);
            (v, Witness { operators: ops, vectors: x, sign_patterns: 1 << (n - 1), seed })
        })
        .collect();
    for (v, w) in results {
        if v > best_value {
            best_value = v;
            best = w;
        }
    }
    Ok(RBoundEstimate { value: best_value, witness: best, mode: RadMode::Exact, family_size: family.len() })
}

/// `{∏(ξⱼ − z)R(z,T)}` over the sampler's points.
pub fn ritt_family(t: &ComplexMatrix, e: &PeripheralSet, sampler: &SamplerConfig) -> Result<(Vec<C64>, Vec<ComplexMatrix>)> {
    let z = sampler.points(e);
    let fam = z
        .par_iter()
        .map(|&z| Ok(resolvent(t, z)?.scale(e.vanishing(z))))
        .collect::<Result<Vec<_>>>()?;
    Ok((z, fam))
}

/// R-bound lower estimate of the sampled R-Ritt_E family.
pub fn r_ritt_lower(t: &ComplexMatrix, e: &PeripheralSet, p: f64, sampler: &SamplerConfig, cfg: &SearchConfig) -> Result<RBoundEstimate> {
    let cert = is_ritt_e_fd(t, e, 1e-6)?;
    if !cert.is_ritt {
        return Err(Error::NotRittE(cert.reasons.join("; ")));
    }
    let (_, fam) = ritt_family(t, e, sampler)?;
    rbound_lower(&fam, p, cfg)
}
