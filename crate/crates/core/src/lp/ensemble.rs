use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::is_ritt_e_fd;
use crate::domains::PeripheralSet;
use crate::linalg::{op_norm, spectrum, ComplexMatrix};
use crate::lp::regular::{RegularOperator, CONTRACTIVE_TOL};
use crate::{seeded_rng, Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub dim: usize,
    pub p: f64,
    /// Orders `k` of the cyclic permutation blocks; `E` is the union of their root groups.
    pub orders: Vec<usize>,
    /// Spectral radius of the random block is at most `1 − spectral_gap`.
    pub spectral_gap: f64,
    pub count: usize,
    pub seed: u64,
    /// Symmetric random blocks, so that every sample is normal.
    pub symmetric: bool,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self { dim: 8, p: 2.0, orders: vec![1], spectral_gap: 0.2, count: 20, seed: 0, symmetric: false }
    }
}

impl EnsembleConfig {
    /// Orders realizing `E`, or `UnrealizableE`.
    pub fn orders_for(e: &PeripheralSet) -> Result<Vec<usize>> {
        e.root_of_unity_orders()
            .ok_or_else(|| Error::UnrealizableE(format!("{:?} is not a union of groups of roots of unity", e.points())))
    }

    pub fn peripheral_set(&self) -> Result<PeripheralSet> {
        let mut pts: Vec<C64> = Vec::new();
        for &k in &self.orders {
            for j in 0..k {
                let z = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64);
                if !pts.iter().any(|x| (x - z).norm() < 1e-9) {
                    pts.push(z);
                }
            }
        }
        PeripheralSet::new(pts)
    }

    fn validate(&self) -> Result<()> {
        if !(self.spectral_gap > 0.0 && self.spectral_gap < 1.0) {
            return Err(Error::InvalidInput(format!("gap {} outside (0, 1)", self.spectral_gap)));
        }
        if self.orders.is_empty() || self.orders.contains(&0) {
            return Err(Error::UnrealizableE("no cyclic blocks requested".into()));
        }
        let used: usize = self.orders.iter().sum();
        if used > self.dim {
            return Err(Error::InvalidInput(format!("cyclic blocks need dimension {used} > {}", self.dim)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PositiveSample {
    pub operator: RegularOperator,
    pub e: PeripheralSet,
    pub seed: u64,
    pub spectral_radius_inner: f64,
}

/// Random block with entries of modulus in `[0, 1)`, scaled to spectral radius at most
/// `1 − gap` and ℓᵖ norm at most 1. `phase` multiplies each entry by a random unimodular.
fn random_block(rng: &mut impl Rng, m: usize, p: f64, gap: f64, symmetric: bool, phase: bool) -> Result<ComplexMatrix> {
    let mut rows = vec![vec![C64::new(0.0, 0.0); m]; m];
    for i in 0..m {
        for j in 0..m {
            if symmetric && j < i {
                rows[i][j] = rows[j][i];
                continue;
            }
            // a sparse pattern keeps the spectra varied
            let v: f64 = if rng.random_bool(0.6) { rng.random_range(0.0..1.0) } else { 0.0 };
            rows[i][j] = if phase { C64::from_polar(v, rng.random_range(0.0..std::f64::consts::TAU)) } else { C64::new(v, 0.0) };
        }
    }
    let b = ComplexMatrix::from_rows(&rows)?;
    let rho = spectrum(&b.modulus())
        .map_err(|err| Error::SpectrumFailed(err.to_string()))?
        .values()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let norm = op_norm(&b.modulus(), p).value;
    if norm == 0.0 {
        return Ok(b);
    }
    // the factor (1 − gap) also keeps the norm a little below 1 for the Ritt estimate
    let c = ((1.0 - gap) / rho.max(1e-300)).min((1.0 - gap) / norm);
    Ok(b.scale_real(c))
}

fn assemble(cfg: &EnsembleConfig, rng: &mut impl Rng, phase: bool) -> Result<ComplexMatrix> {
    let mut blocks: Vec<ComplexMatrix> = cfg.orders.iter().map(|&k| ComplexMatrix::cyclic_permutation(k)).collect();
    let rest = cfg.dim - cfg.orders.iter().sum::<usize>();
    if rest > 0 {
        blocks.push(random_block(rng, rest, cfg.p, cfg.spectral_gap, cfg.symmetric, phase)?);
    }
    Ok(ComplexMatrix::direct_sum(&blocks))
}

fn certify(t: ComplexMatrix, e: &PeripheralSet, p: f64, seed: u64) -> Result<Option<PositiveSample>> {
    let cert = is_ritt_e_fd(&t, e, 1e-6)?;
    let op = RegularOperator::new(t, p);
    if !cert.is_ritt || !op.contractively_regular {
        return Ok(None);
    }
    let inner = cert
        .spectrum
        .values()
        .into_iter()
        .filter(|l| e.nearest(*l).1 > 1e-6)
        .map(|l| l.norm())
        .fold(0.0, f64::max);
    Ok(Some(PositiveSample { operator: op, e: e.clone(), seed, spectral_radius_inner: inner }))
}

/// Positive Ritt_E contractions: cyclic permutation blocks for the requested root groups
/// plus a random nonnegative block. Only samples passing both certificates are emitted.
pub fn ensemble_positive_ritt(cfg: &EnsembleConfig) -> Result<Vec<PositiveSample>> {
    cfg.validate()?;
    let e = cfg.peripheral_set()?;
    let mut out = Vec::with_capacity(cfg.count);
    let mut k = 0u64;
    while out.len() < cfg.count {
        if k > 100 * cfg.count as u64 + 100 {
            return Err(Error::NoConvergence(format!("only {} of {} samples certified", out.len(), cfg.count)));
        }
        let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k);
        k += 1;
        let mut rng = seeded_rng(seed);
        let t = assemble(cfg, &mut rng, false)?;
        if let Some(s) = certify(t, &e, cfg.p, seed)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Contractively regular but not positive: a `1×1` block `[ξ]` per point of an arbitrary `E`
/// plus a random block with complex phases whose modulus is substochastic-scaled.
pub fn ensemble_phased(e: &PeripheralSet, cfg: &EnsembleConfig) -> Result<Vec<PositiveSample>> {
    if e.len() > cfg.dim {
        return Err(Error::InvalidInput(format!("|E| = {} exceeds dimension {}", e.len(), cfg.dim)));
    }
    let mut out = Vec::with_capacity(cfg.count);
    let mut k = 0u64;
    while out.len() < cfg.count {
        if k > 100 * cfg.count as u64 + 100 {
            return Err(Error::NoConvergence(format!("only {} of {} samples certified", out.len(), cfg.count)));
        }
        let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k);
        k += 1;
        let mut rng = seeded_rng(seed);
        let mut blocks: Vec<ComplexMatrix> = e.points().iter().map(|&x| ComplexMatrix::from_diag(&[x])).collect();
        let rest = cfg.dim - e.len();
        if rest > 0 {
            blocks.push(random_block(&mut rng, rest, cfg.p, cfg.spectral_gap, false, true)?);
        }
        if let Some(s) = certify(ComplexMatrix::direct_sum(&blocks), e, cfg.p, seed)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// `PTPᵀ` for the permutation sending index `i` to `perm[i]`.
pub fn permute(t: &ComplexMatrix, perm: &[usize]) -> ComplexMatrix {
    let n = t.dim();
    let mut rows = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[perm[i]][perm[j]] = t[(i, j)];
        }
    }
    ComplexMatrix::from_rows(&rows).expect("square")
}

/// Whether the regular-norm certificate holds with the stated tolerance.
pub fn is_contractively_regular(t: &ComplexMatrix, p: f64) -> bool {
    RegularOperator::new(t.clone(), p).regular_norm.value <= 1.0 + CONTRACTIVE_TOL
}
