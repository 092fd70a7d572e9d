use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::domains::{unit_circle, ConvexPolygon, Orientation, Piece, PiecewiseContour, Region, StolzDomain, UnitDisc};
use crate::linalg::{mat_poly, op_norm_with, spectrum, ComplexMatrix, NormConfig, Polynomial};
use crate::{seeded_rng, Error, Result, C64};

/// Region over which the calculus constant is measured.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CalcRegion {
    Stolz(StolzDomain),
    Polygon(ConvexPolygon),
    UnitDisc,
}

impl CalcRegion {
    pub fn boundary(&self) -> PiecewiseContour {
        match self {
            Self::Stolz(d) => d.boundary_contour(Orientation::Ccw),
            Self::Polygon(p) => p.boundary_contour(Orientation::Ccw),
            Self::UnitDisc => unit_circle(),
        }
    }

    pub fn contains(&self, z: C64, closure: bool) -> bool {
        match self {
            Self::Stolz(d) => d.contains(z, closure),
            Self::Polygon(p) => p.contains(z, closure),
            Self::UnitDisc => UnitDisc.contains(z, closure),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub max_degree: usize,
    /// Random polynomials per degree in `random_degrees`.
    pub random_per_degree: usize,
    pub random_degrees: Vec<usize>,
    /// Unit directions `w` for the peak polynomials `((1 + w̄z)/2)ⁿ`.
    pub peak_directions: usize,
    /// Boundary points per function for the sup norm.
    pub boundary_samples: usize,
    pub p: f64,
    pub seed: u64,
    /// Points of `E` for the members `zⁿ∏(ξⱼ − z)`; empty to omit them.
    pub vanishing_points: Vec<C64>,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        Self {
            max_degree: 50,
            random_per_degree: 2,
            random_degrees: vec![2, 3, 5, 8, 12, 17, 25, 35, 50],
            peak_directions: 16,
            boundary_samples: 4096,
            p: 2.0,
            seed: 0,
            vanishing_points: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleMember {
    pub label: String,
    pub poly: Polynomial,
}

/// Powers of two, the listed caps and `max` itself, so a larger cap extends a smaller one.
fn peak_degrees(max: usize, caps: &[usize]) -> Vec<usize> {
    let mut d: Vec<usize> = std::iter::successors(Some(1usize), |k| Some(k * 2)).take_while(|&k| k <= max).collect();
    d.extend(caps.iter().copied().filter(|&k| k >= 1 && k <= max));
    if max > 0 {
        d.push(max);
    }
    d.sort_unstable();
    d.dedup();
    d
}

/// Members with degree at most `max_degree`; raising `max_degree` only adds members.
pub fn ensemble(cfg: &EnsembleConfig) -> Vec<EnsembleMember> {
    let mut out = Vec::new();
    for n in 0..=cfg.max_degree {
        out.push(EnsembleMember { label: format!("z^{n}"), poly: Polynomial::monomial(n) });
    }
    if !cfg.vanishing_points.is_empty() {
        let v = Polynomial::vanishing(&cfg.vanishing_points);
        for n in 0..=cfg.max_degree.saturating_sub(v.degree()) {
            out.push(EnsembleMember { label: format!("z^{n}·v"), poly: &Polynomial::monomial(n) * &v });
        }
    }
    let half = C64::new(0.5, 0.0);
    // peak directions include the points of E, where boundary and circle touch
    let mut dirs: Vec<C64> = cfg.vanishing_points.clone();
    dirs.extend((0..cfg.peak_directions).map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / cfg.peak_directions as f64)));
    for w in dirs {
        let base = Polynomial::new(vec![half, half * w.conj()]);
        let mut pw = Polynomial::one();
        let mut deg = 0;
        for n in peak_degrees(cfg.max_degree, &cfg.random_degrees) {
            while deg < n {
                pw = &pw * &base;
                deg += 1;
            }
            out.push(EnsembleMember { label: format!("peak({:.4},{n})", w.arg()), poly: pw.clone() });
        }
    }
    for &d in cfg.random_degrees.iter().filter(|&&d| d <= cfg.max_degree) {
        for k in 0..cfg.random_per_degree {
            let mut rng = seeded_rng(cfg.seed ^ ((d as u64) << 32) ^ k as u64);
            let coeffs = (0..=d)
                .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)))
                .collect();
            out.push(EnsembleMember { label: format!("random({d},{k})"), poly: Polynomial::new(coeffs) });
        }
    }
    out
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > f2 {
        (f1, x1)
    } else {
        (f2, x2)
    }
}

/// Boundary parametrization shared by the sup computations: `(piece, t)` samples spread by
/// arclength, with every piece endpoint included.
pub fn boundary_grid(contour: &PiecewiseContour, samples: usize) -> Vec<(usize, f64)> {
    let total = contour.length();
    let mut out = Vec::with_capacity(samples + 2 * contour.len());
    for (i, p) in contour.pieces.iter().enumerate() {
        let m = ((samples as f64 * p.length() / total).ceil() as usize).max(2);
        out.extend((0..=m).map(|k| (i, k as f64 / m as f64)));
    }
    out
}

/// `sup_{∂Ω}|φ|`: grid maximum refined by golden-section search around every grid local
/// maximum within 10% of the largest.
pub fn boundary_sup(phi: &Polynomial, pieces: &[Piece], grid: &[(usize, f64)]) -> f64 {
    let vals: Vec<f64> = grid.iter().map(|&(i, t)| phi.eval(pieces[i].point(t)).norm()).collect();
    let top = vals.iter().copied().fold(0.0, f64::max);
    let mut best = top;
    for k in 0..grid.len() {
        let (i, t) = grid[k];
        let left = if k > 0 && grid[k - 1].0 == i { vals[k - 1] } else { 0.0 };
        let right = if k + 1 < grid.len() && grid[k + 1].0 == i { vals[k + 1] } else { 0.0 };
        if vals[k] < 0.9 * top || vals[k] < left || vals[k] < right {
            continue;
        }
        let lo = if k > 0 && grid[k - 1].0 == i { grid[k - 1].1 } else { t };
        let hi = if k + 1 < grid.len() && grid[k + 1].0 == i { grid[k + 1].1 } else { t };
        if hi > lo {
            let f = |s: f64| phi.eval(pieces[i].point(s)).norm();
            best = best.max(golden_max(&f, lo, hi).0);
        }
    }
    best
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalculusConstant {
    /// `max ‖φ(T)‖_p / sup_{∂Ω}|φ|` over the ensemble: a lower bound for the true constant.
    pub k_lower: f64,
    pub best: String,
    pub members: usize,
}

/// Ratio for each member, in ensemble order.
pub fn member_ratios(t: &ComplexMatrix, region: &CalcRegion, members: &[EnsembleMember], cfg: &EnsembleConfig) -> Vec<f64> {
    use rayon::prelude::*;
    let contour = region.boundary();
    let grid = boundary_grid(&contour, cfg.boundary_samples);
    let norm = NormConfig { seed: cfg.seed, ..NormConfig::default() };
    members
        .par_iter()
        .map(|m| {
            let sup = boundary_sup(&m.poly, &contour.pieces, &grid);
            if sup == 0.0 {
                return 0.0;
            }
            op_norm_with(&mat_poly(&m.poly, t), cfg.p, &norm).value / sup
        })
        .collect()
}

pub fn calculus_constant(t: &ComplexMatrix, region: &CalcRegion, cfg: &EnsembleConfig) -> Result<CalculusConstant> {
    let sp = spectrum(t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    for l in sp.values() {
        if !region.contains(l, true) && !region.contains(l * (1.0 - 1e-9), true) {
            return Err(Error::SpectrumNotEnclosed(format!("eigenvalue {l} lies outside the closed region")));
        }
    }
    let members = ensemble(cfg);
    let ratios = member_ratios(t, region, &members, cfg);
    let (mut k_lower, mut best) = (0.0, 0);
    for (i, &r) in ratios.iter().enumerate() {
        if r > k_lower {
            k_lower = r;
            best = i;
        }
    }
    Ok(CalculusConstant { k_lower, best: members[best].label.clone(), members: members.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::domains::{build_stolz, PeripheralSet};
    use crate::linalg::random::normal_with;

    fn small() -> EnsembleConfig {
        EnsembleConfig { max_degree: 20, random_degrees: vec![3, 10, 20], boundary_samples: 2048, ..Default::default() }
    }

    #[test]
    fn zero_operator_on_disc() {
        let c = calculus_constant(&ComplexMatrix::zeros(3), &CalcRegion::UnitDisc, &small()).unwrap();
        assert!((c.k_lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normal_with_boundary_eigenvalue() {
        let e = PeripheralSet::roots_of_unity(3).unwrap();
        let region = CalcRegion::Stolz(build_stolz(&e, 0.5).unwrap());
        let mut rng = crate::seeded_rng(2);
        let t = normal_with(&mut rng, &[c64(1.0, 0.0), c64(0.1, 0.2), c64(-0.2, -0.1)]);
        let c = calculus_constant(&t, &region, &small()).unwrap();
        assert!(c.k_lower <= 1.0 + 1e-6 && c.k_lower >= 1.0 - 1e-3, "{}", c.k_lower);
    }

    #[test]
    fn superset_ensembles() {
        let a = ensemble(&EnsembleConfig { max_degree: 25, ..Default::default() });
        let b = ensemble(&EnsembleConfig::default());
        for m in &a {
            assert!(b.iter().any(|x| x.label == m.label && x.poly == m.poly), "{}", m.label);
        }
    }

    #[test]
    fn sup_of_peak() {
        let base = Polynomial::new(vec![c64(0.5, 0.0), c64(0.0, -0.5)]);
        let phi = (0..17).fold(Polynomial::one(), |acc, _| &acc * &base);
        let c = unit_circle();
        let s = boundary_sup(&phi, &c.pieces, &boundary_grid(&c, 512));
        assert!((s - 1.0).abs() < 1e-12, "{s}");
    }

    #[test]
    fn larger_region_smaller_constant() {
        let e = PeripheralSet::roots_of_unity(2).unwrap();
        let t = ComplexMatrix::from_rows(&[vec![c64(0.2, 0.0), c64(0.5, 0.0)], vec![c64(0.0, 0.0), c64(-0.3, 0.0)]]).unwrap();
        let k1 = calculus_constant(&t, &CalcRegion::Stolz(build_stolz(&e, 0.4).unwrap()), &small()).unwrap().k_lower;
        let k2 = calculus_constant(&t, &CalcRegion::Stolz(build_stolz(&e, 0.7).unwrap()), &small()).unwrap().k_lower;
        let k3 = calculus_constant(&t, &CalcRegion::UnitDisc, &small()).unwrap().k_lower;
        assert!(k2 <= k1 * (1.0 + 1e-6) && k3 <= k2 * (1.0 + 1e-6));
    }
}
