//! Seeded residual suites for `ritt verify`.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use ritt_core::calculus::{fc_contour, seifert_identity_residual, seifert_q, Holomorphic};
use ritt_core::classify::{a_j, gamma_n_reconstruction, ritt_sample, ritt_type, transfer1_residual, transfer3_residual, SampleConfig};
use ritt_core::domains::gamma_n0;
use ritt_core::linalg::{mat_poly, norm2, random_matrix, resolvent_identity_residual};
use ritt_core::quad::QuadConfig;
use ritt_core::{seeded_rng, ComplexMatrix, Error, PeripheralSet, Polynomial, Result, C64};

pub const SUITES: [&str; 5] = ["seifert", "resolvent", "transfer", "calculus", "gamma"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Row {
    pub case: usize,
    pub detail: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub max_residual: f64,
    pub all_pass: bool,
    pub rows: Vec<Row>,
}

fn row(case: usize, detail: String, residual: f64, tolerance: f64) -> Row {
    Row { case, detail, residual, tolerance, pass: residual <= tolerance }
}

/// `n` points of the circle, pairwise at least `0.5` apart in angle.
fn random_e(rng: &mut impl Rng, n: usize) -> PeripheralSet {
    loop {
        let mut a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        a.sort_by(f64::total_cmp);
        let wrap = a[0] + TAU - a[n - 1];
        if n == 1 || (a.windows(2).all(|w| w[1] - w[0] >= 0.5) && wrap >= 0.5) {
            if let Ok(e) = PeripheralSet::from_angles(&a) {
                return e;
            }
        }
    }
}

fn in_annulus(rng: &mut impl Rng) -> C64 {
    C64::from_polar(rng.random_range(1.0 + 1e-3..2.0), rng.random_range(0.0..TAU))
}

struct Input {
    e: PeripheralSet,
    t: ComplexMatrix,
    detail: String,
}

fn certified_inputs(rng: &mut impl Rng, count: usize, max_points: usize, dim: usize) -> Result<Vec<Input>> {
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_points);
            let e = random_e(rng, n);
            let seed = rng.random::<u32>() as u64;
            let s = ritt_sample(&e, &SampleConfig { dim, ..SampleConfig::default() }, seed)?;
            Ok(Input { e, t: s.t, detail: format!("N={n} dim={dim} sample_seed={seed}") })
        })
        .collect()
}

fn seifert(seed: u64) -> Result<Vec<Row>> {
    let mut rng = seeded_rng(seed);
    let mut rows = Vec::with_capacity(1000);
    for case in 0..1000 {
        let n_points = rng.random_range(1..=4);
        let e = random_e(&mut rng, n_points);
        let dim = rng.random_range(1..=6);
        let t = random_matrix(dim, rng.random(), 1.0);
        let lambda = C64::from_polar(rng.random_range(0.0..2.0), rng.random_range(0.0..TAU));
        let n = rng.random_range(0..=30);
        let (res, scale) = seifert_identity_residual(&t, &e, &seifert_q(&e).q, lambda, n);
        rows.push(row(case, format!("N={n_points} dim={dim} n={n} lambda={lambda}"), res / scale.max(1.0), 1e-9));
    }
    Ok(rows)
}

fn resolvent_suite(seed: u64) -> Result<Vec<Row>> {
    let mut rng = seeded_rng(seed);
    let inputs = certified_inputs(&mut rng, 100, 4, 8)?;
    let mut rows = Vec::new();
    for (case, inp) in inputs.iter().enumerate() {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (z, w) = (in_annulus(&mut rng), in_annulus(&mut rng));
            worst = worst.max(resolvent_identity_residual(&inp.t, z, w)?);
        }
        rows.push(row(case, inp.detail.clone(), worst, 1e-9));
    }
    Ok(rows)
}

fn transfer(seed: u64) -> Result<Vec<Row>> {
    let mut rng = seeded_rng(seed);
    let inputs = certified_inputs(&mut rng, 100, 4, 8)?;
    let mut rows = Vec::new();
    for (case, inp) in inputs.iter().enumerate() {
        let mut worst: f64 = 0.0;
        for k in 0..1000 {
            let xi = inp.e.points()[k % inp.e.len()];
            let a = a_j(&inp.t, xi);
            // Re λ < 0 keeps λ off σ(A) and ξ(1 − λ) outside the closed disc
            let lambda = C64::new(-rng.random_range(1e-3..3.0), rng.random_range(-3.0..3.0));
            worst = worst.max(transfer1_residual(&inp.t, &a, xi, lambda)?.0);
            worst = worst.max(transfer3_residual(&inp.t, &a, xi, in_annulus(&mut rng))?);
        }
        rows.push(row(case, inp.detail.clone(), worst, 1e-9));
    }
    Ok(rows)
}

fn stolz_radius(t: &ComplexMatrix, e: &PeripheralSet) -> Result<f64> {
    let r = ritt_type(t, e, 1e-6)?;
    let gap = if e.len() > 1 { (0.5 * e.min_gap()).cos() } else { 0.0 };
    Ok(0.5 * (1.0 + r.max(gap)))
}

fn calculus(seed: u64) -> Result<Vec<Row>> {
    let mut rng = seeded_rng(seed);
    let inputs = certified_inputs(&mut rng, 20, 3, 6)?;
    let mut rows = Vec::new();
    for (case, inp) in inputs.iter().enumerate() {
        let v = Polynomial::vanishing(inp.e.points());
        let extra = rng.random_range(0..=10 - v.degree());
        let g = Polynomial::new((0..=extra).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect());
        let phi = &v * &g;
        let s = stolz_radius(&inp.t, &inp.e)?;
        let fc = fc_contour(&Holomorphic::Poly(phi.clone()), &inp.t, &inp.e, s, &QuadConfig::default())?;
        let exact = mat_poly(&phi, &inp.t);
        let res = norm2(&(&fc.value - &exact)) / norm2(&exact).max(1.0);
        rows.push(row(case, format!("{} degree={}", inp.detail, phi.degree()), res, 1e-8));
    }
    Ok(rows)
}

fn gamma(seed: u64) -> Result<Vec<Row>> {
    let mut rng = seeded_rng(seed);
    let inputs = certified_inputs(&mut rng, 10, 3, 6)?;
    let mut rows = Vec::new();
    for (case, inp) in inputs.iter().enumerate() {
        let s = stolz_radius(&inp.t, &inp.e)?;
        let n0 = gamma_n0(&inp.e, s)?;
        let mut ns = vec![n0, 2 * n0, 50.max(n0)];
        ns.dedup();
        for g in gamma_n_reconstruction(&inp.t, &inp.e, s, &ns, &QuadConfig::default())? {
            rows.push(row(case, format!("{} s={s} n={}", inp.detail, g.n), g.relative_residual, 1e-7));
        }
    }
    Ok(rows)
}

pub fn run_suite(name: &str, seed: u64) -> Result<VerifyReport> {
    let rows = match name {
        "seifert" => seifert(seed)?,
        "resolvent" => resolvent_suite(seed)?,
        "transfer" => transfer(seed)?,
        "calculus" => calculus(seed)?,
        "gamma" => gamma(seed)?,
        _ => return Err(Error::InvalidInput(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(VerifyReport {
        suite: name.into(),
        seed,
        cases: rows.iter().map(|r| r.case).max().map_or(0, |c| c + 1),
        max_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
        all_pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spread_points() {
        let mut rng = seeded_rng(3);
        for n in 1..=4 {
            let e = random_e(&mut rng, n);
            assert_eq!(e.len(), n);
            if n > 1 {
                assert!(e.min_gap() >= 0.5 - 1e-12);
            }
        }
    }

    #[test]
    fn seifert_suite_passes() {
        let rep = run_suite("seifert", 7).unwrap();
        assert_eq!(rep.rows.len(), 1000);
        assert!(rep.all_pass, "{:e}", rep.max_residual);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", 0), Err(Error::InvalidInput(_))));
    }
}
