use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::calculus::{admissible_contour, boundary_grid, boundary_sup, integrate_resolvent, Holomorphic};
use crate::classify::ritt_type;
use crate::domains::{build_stolz, Orientation, PeripheralSet};
use crate::linalg::{mat_poly, norm2, vec_norm2, vec_norm_p, ComplexMatrix, Polynomial};
use crate::quad::QuadConfig;
use crate::rbound::{rademacher_norm, rbound_lower, RadMode, RadSample, SearchConfig, MAX_EXACT};
use crate::unity::family::SectorFamily;
use crate::unity::multipoint::{compose_multipoint, multi_indices_by_scale};
use crate::{seeded_rng, Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingConfig {
    /// `h` is measured on `E_s`; the integration contour is `∂E_u` for an admissible `u ≥ s`.
    /// `None` takes the midpoint between the Ritt type of `T` and 1.
    pub s: Option<f64>,
    /// Sampled `(x, y)` pairs.
    pub samples: usize,
    pub mc_trials: usize,
    pub quad: QuadConfig,
    pub search: SearchConfig,
    pub seed: u64,
}

impl Default for PairingConfig {
    fn default() -> Self {
        Self {
            s: None,
            samples: 8,
            mc_trials: 4000,
            quad: QuadConfig::default(),
            search: SearchConfig { n_max: 4, restarts: 2, sweeps: 3, candidate_pool: 6, seed: 0 },
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingSample {
    /// `|⟨hₙ(T)x, y⟩|`.
    pub pairing: f64,
    /// `|⟨hₙ(T)x, y⟩ − Σ_ι⟨(hθ_ιφ_ι)(T)x, ψ_ι(T)*y⟩|`.
    pub expansion_residual: f64,
    /// `‖Σεᵢ⊗φᵢ(T)x‖`.
    pub rad_phi: f64,
    /// `‖Σεᵢ⊗ψᵢ(T)*y‖` in the dual space.
    pub rad_psi: f64,
    /// `‖Σεᵢ⊗(hθᵢφᵢ)(T)x‖`.
    pub rad_h_theta_phi: f64,
    /// `rad_h_theta_phi · rad_psi`: the Cauchy–Schwarz step, every factor computed.
    pub chain_bound: f64,
    /// `R · rad_phi · rad_psi` with the R-bound lower estimate.
    pub pairing_bound: f64,
    pub chain_holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingReport {
    pub n_terms: usize,
    pub iotas: Vec<Vec<i64>>,
    /// `(n, ‖hₙ(T) − h(T)‖₂)` at `n = 1, 2, 4, …` and `n_terms`.
    pub truncation_errors: Vec<(usize, f64)>,
    /// Lower estimate of `R{(hθᵢ)(T)}`.
    pub r_lower: f64,
    /// `‖h‖_{∞,E_s}` on a refined boundary grid.
    pub h_sup: f64,
    pub samples: Vec<PairingSample>,
    /// `max pairing_bound / ‖h‖_{∞,E_s}` over unit `x`, `y`.
    pub bound_ratio: f64,
    pub chain_holds: bool,
    pub rad_mode: RadMode,
    pub u: f64,
    pub quadrature_converged: bool,
    pub quadrature_error: f64,
}

fn rad(vectors: Vec<Vec<C64>>, p: f64, trials: usize, seed: u64) -> Result<(f64, RadMode)> {
    if (p - 2.0).abs() < 1e-15 {
        // orthogonality of the Rademacher functions
        return Ok((vectors.iter().map(|v| vec_norm2(v).powi(2)).sum::<f64>().sqrt(), RadMode::Exact));
    }
    let mode = if vectors.len() <= MAX_EXACT { RadMode::Exact } else { RadMode::MonteCarlo };
    let r = rademacher_norm(&RadSample { vectors, p, mode, mc_trials: trials, seed })?;
    Ok((r.value, mode))
}

fn bilinear(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gaussian_unit(dim: usize, p: f64, rng: &mut impl rand::Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(StandardNormal.sample(&mut *rng), StandardNormal.sample(&mut *rng)))
        .collect();
    let n = vec_norm_p(&v, p);
    v.into_iter().map(|z| z / n).collect()
}

type Boxed = Box<dyn Fn(C64) -> C64 + Sync>;

pub fn pairing_estimate(
    h: &Polynomial,
    t: &ComplexMatrix,
    family: &SectorFamily,
    e: &PeripheralSet,
    n_terms: usize,
    p: f64,
) -> Result<PairingReport> {
    pairing_estimate_with(h, t, family, e, n_terms, p, &PairingConfig::default())
}

/// Expands `h(T) = Σ_ι (hθ_ιφ_ιψ_ι)(T)` over the first `n_terms` multi-indices (by scale)
/// and evaluates each factor of the pairing estimate, reading the pairing as
/// `⟨hₙ(T)x, y⟩ = Σ_ι ⟨(hθ_ιφ_ι)(T)x, ψ_ι(T)*y⟩`.
pub fn pairing_estimate_with(
    h: &Polynomial,
    t: &ComplexMatrix,
    family: &SectorFamily,
    e: &PeripheralSet,
    n_terms: usize,
    p: f64,
    cfg: &PairingConfig,
) -> Result<PairingReport> {
    if !family.valid {
        return Err(Error::FamilyInvalid(format!("inf |h| = {:e} below floor {:e}", family.min_h, family.floor)));
    }
    Holomorphic::Poly(h.clone()).check_h0(e)?;
    let iotas: Vec<Vec<i64>> = multi_indices_by_scale(e.len(), family.m).into_iter().take(n_terms).collect();
    let n = iotas.len();
    if n == 0 {
        return Err(Error::InvalidInput("n_terms must be positive".into()));
    }
    let s = match cfg.s {
        Some(s) => s,
        None => 0.5 * (ritt_type(t, e, 1e-6)? + 1.0),
    };
    let (u, contour) = admissible_contour(t, e, s, &cfg.quad)?;

    // per ι: hθφψ, hθφ, hθ, φ, ψ
    let mut fs: Vec<Boxed> = Vec::with_capacity(5 * n);
    for iota in &iotas {
        let term = compose_multipoint(family, e, iota);
        let (a, b, c, d, f) = (term.clone(), term.clone(), term.clone(), term.clone(), term);
        let (h1, h2, h3) = (h.clone(), h.clone(), h.clone());
        fs.push(Box::new(move |z| h1.eval(z) * a.unity_term(z)));
        fs.push(Box::new(move |z| h2.eval(z) * b.theta(z) * b.phi(z)));
        fs.push(Box::new(move |z| h3.eval(z) * c.theta(z)));
        fs.push(Box::new(move |z| d.phi(z)));
        fs.push(Box::new(move |z| f.psi(z)));
    }
    let refs: Vec<&(dyn Fn(C64) -> C64 + Sync)> = fs.iter().map(|b| b.as_ref()).collect();
    let integral = integrate_resolvent(&contour, t, &refs, &cfg.quad)?;
    let vals = &integral.values;
    let full = |i: usize| &vals[5 * i];
    let htp = |i: usize| &vals[5 * i + 1];
    let ht = |i: usize| &vals[5 * i + 2];
    let ph = |i: usize| &vals[5 * i + 3];
    let ps = |i: usize| &vals[5 * i + 4];

    let direct = mat_poly(h, t);
    let mut hn = ComplexMatrix::zeros(t.dim());
    let mut truncation_errors = Vec::new();
    for i in 0..n {
        hn = &hn + full(i);
        let k = i + 1;
        if k.is_power_of_two() || k == n {
            truncation_errors.push((k, norm2(&(&hn - &direct))));
        }
    }

    let family_ht: Vec<ComplexMatrix> = (0..n).map(|i| ht(i).clone()).collect();
    let r_lower = rbound_lower(&family_ht, p, &cfg.search)?.value;

    let q = if p.is_infinite() { 1.0 } else if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
    let mut rng = seeded_rng(cfg.seed);
    let mut samples = Vec::with_capacity(cfg.samples);
    let mut rad_mode = RadMode::Exact;
    let mut chain_holds = true;
    let mut bound_ratio = 0.0f64;
    let domain = build_stolz(e, s)?;
    let boundary = domain.boundary_contour(Orientation::Ccw);
    let h_sup = boundary_sup(h, &boundary.pieces, &boundary_grid(&boundary, 4096));
    for k in 0..cfg.samples {
        let x = gaussian_unit(t.dim(), p, &mut rng);
        let y = gaussian_unit(t.dim(), q, &mut rng);
        let pairing_c = bilinear(&hn.matvec(&x), &y);
        let fx: Vec<Vec<C64>> = (0..n).map(|i| htp(i).matvec(&x)).collect();
        let gy: Vec<Vec<C64>> = (0..n).map(|i| ps(i).transpose().matvec(&y)).collect();
        let expanded: C64 = fx.iter().zip(&gy).map(|(a, b)| bilinear(a, b)).sum();
        let seed = cfg.seed.wrapping_add(1 + 3 * k as u64);
        let (rad_phi, m1) = rad((0..n).map(|i| ph(i).matvec(&x)).collect(), p, cfg.mc_trials, seed)?;
        let (rad_psi, m2) = rad(gy, q, cfg.mc_trials, seed + 1)?;
        let (rad_htp, m3) = rad(fx, p, cfg.mc_trials, seed + 2)?;
        if [m1, m2, m3].contains(&RadMode::MonteCarlo) {
            rad_mode = RadMode::MonteCarlo;
        }
        let chain_bound = rad_htp * rad_psi;
        let pairing = pairing_c.norm();
        let expansion_residual = (pairing_c - expanded).norm();
        // the expansion holds to quadrature accuracy, so allow that much slack
        let slack = expansion_residual + 10.0 * cfg.quad.target_tol * (1.0 + chain_bound);
        let holds = pairing <= chain_bound + slack;
        chain_holds &= holds;
        let pairing_bound = r_lower * rad_phi * rad_psi;
        bound_ratio = bound_ratio.max(pairing_bound / h_sup);
        samples.push(PairingSample {
            pairing,
            expansion_residual,
            rad_phi,
            rad_psi,
            rad_h_theta_phi: rad_htp,
            chain_bound,
            pairing_bound,
            chain_holds: holds,
        });
    }

    Ok(PairingReport {
        n_terms: n,
        iotas,
        truncation_errors,
        r_lower,
        h_sup,
        samples,
        bound_ratio,
        chain_holds,
        rad_mode,
        u,
        quadrature_converged: integral.converged,
        quadrature_error: integral.error_estimates.iter().copied().fold(0.0, f64::max),
    })
}
