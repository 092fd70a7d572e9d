use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{calculus_constant, CalcRegion, EnsembleConfig as PolyEnsemble};
use crate::classify::ritt_type;
use crate::domains::{build_polygon, build_stolz, PolygonConfig};
use crate::lp::ensemble::PositiveSample;
use crate::lp::regular::{semigroup_regular_check, DEFAULT_T_GRID};
use crate::Result;

/// Relative growth of `K_lower` between the two largest degrees still counted as stable.
pub const STABILITY_TOL: f64 = 0.1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularExperimentConfig {
    pub s_grid: Vec<f64>,
    /// Polynomial degree caps; stability compares the last two.
    pub degrees: Vec<usize>,
    pub boundary_samples: usize,
    pub theta: f64,
    pub theta_prime: f64,
    pub t_grid: Vec<f64>,
    pub seed: u64,
}

impl Default for RegularExperimentConfig {
    fn default() -> Self {
        Self {
            s_grid: vec![0.6, 0.75, 0.9],
            degrees: vec![25, 50],
            boundary_samples: 2048,
            theta: std::f64::consts::FRAC_PI_4,
            theta_prime: std::f64::consts::FRAC_PI_3,
            t_grid: DEFAULT_T_GRID.to_vec(),
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeSeries {
    /// `(degree cap, K_lower)`.
    pub k_by_degree: Vec<(usize, f64)>,
    pub relative_growth: f64,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StolzRecord {
    pub s: f64,
    pub series: DegreeSeries,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub r_star: f64,
    pub stolz: Vec<StolzRecord>,
    pub polygon: Option<DegreeSeries>,
    pub polygon_error: Option<String>,
    pub semigroup_max: f64,
    pub semigroup_ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularExperimentReport {
    pub p: f64,
    pub records: Vec<SampleRecord>,
    pub all_finite: bool,
    pub all_stable: bool,
    pub all_semigroups_ok: bool,
}

fn series(sample: &PositiveSample, region: &CalcRegion, cfg: &RegularExperimentConfig) -> Result<DegreeSeries> {
    let p = sample.operator.p;
    let mut k_by_degree = Vec::with_capacity(cfg.degrees.len());
    for &d in &cfg.degrees {
        let ens = PolyEnsemble {
            max_degree: d,
            random_degrees: PolyEnsemble::default().random_degrees.into_iter().filter(|&k| k <= d).collect(),
            boundary_samples: cfg.boundary_samples,
            p,
            seed: cfg.seed,
            vanishing_points: sample.e.points().to_vec(),
            ..PolyEnsemble::default()
        };
        k_by_degree.push((d, calculus_constant(&sample.operator.t, region, &ens)?.k_lower));
    }
    let relative_growth = match k_by_degree.len() {
        0 | 1 => 0.0,
        n => (k_by_degree[n - 1].1 - k_by_degree[n - 2].1) / k_by_degree[n - 2].1,
    };
    let stable = k_by_degree.iter().all(|k| k.1.is_finite()) && relative_growth < STABILITY_TOL;
    Ok(DegreeSeries { k_by_degree, relative_growth, stable })
}

fn run_sample(index: usize, sample: &PositiveSample, cfg: &RegularExperimentConfig) -> Result<SampleRecord> {
    let t = &sample.operator.t;
    let r_star = ritt_type(t, &sample.e, 1e-6)?;
    let mut stolz = Vec::new();
    for &s in cfg.s_grid.iter().filter(|&&s| s > r_star && s < 1.0) {
        let region = CalcRegion::Stolz(build_stolz(&sample.e, s)?);
        stolz.push(StolzRecord { s, series: series(sample, &region, cfg)? });
    }
    let (polygon, polygon_error) = match build_polygon(t, &sample.e, cfg.theta, cfg.theta_prime, &PolygonConfig::default()) {
        Ok(c) => (Some(series(sample, &CalcRegion::Polygon(c.delta), cfg)?), None),
        Err(err) => (None, Some(err.to_string())),
    };
    let sg = semigroup_regular_check(t, &sample.e, sample.operator.p, &cfg.t_grid)?;
    Ok(SampleRecord {
        index,
        seed: sample.seed,
        r_star,
        stolz,
        polygon,
        polygon_error,
        semigroup_max: sg.max_regular_norm,
        semigroup_ok: sg.all_ok,
    })
}

/// For each sample: its type, `K_lower` over `E_s` for every admissible `s` of the grid, the
/// polygon `Δ` with its constant, and the semigroup regular norms.
pub fn regular_experiment(samples: &[PositiveSample], cfg: &RegularExperimentConfig) -> Result<RegularExperimentReport> {
    let records = samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| run_sample(i, s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let all_series = || {
        records
            .iter()
            .flat_map(|r| r.stolz.iter().map(|s| &s.series).chain(r.polygon.iter()))
    };
    let all_finite = all_series().all(|s| s.k_by_degree.iter().all(|k| k.1.is_finite()))
        && records.iter().all(|r| r.polygon.is_some());
    let all_stable = all_series().all(|s| s.stable);
    let all_semigroups_ok = records.iter().all(|r| r.semigroup_ok);
    Ok(RegularExperimentReport {
        p: samples.first().map(|s| s.operator.p).unwrap_or(f64::NAN),
        records,
        all_finite,
        all_stable,
        all_semigroups_ok,
    })
}
