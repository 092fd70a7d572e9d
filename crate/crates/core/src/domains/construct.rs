use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::classify::is_ritt_e_fd;
use crate::domains::polygon::{halfline_intersection, lift_vertex};
use crate::domains::{build_stolz, ConvexPolygon, PeripheralSet, Region, Sector};
use crate::linalg::random::random_in_disc;
use crate::linalg::ComplexMatrix;
use crate::{seeded_rng, Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonConfig {
    /// Cap on intermediate points per gap.
    pub p_cap: usize,
    /// Uniform samples of 𝔻 used to compare `Δ₀` with the intersection of sectors.
    pub membership_samples: usize,
    pub seed: u64,
    /// Clustering tolerance tying eigenvalues to points of `E`.
    pub peripheral_tol: f64,
}

impl Default for PolygonConfig {
    fn default() -> Self {
        Self { p_cap: 64, membership_samples: 2000, seed: 0, peripheral_tol: 1e-6 }
    }
}

/// Construction data for the polygons `Δ₀ ⊂ Δ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonMeta {
    pub theta: f64,
    pub theta_prime: f64,
    /// Radius of the circle carrying the intermediate points.
    pub r: f64,
    /// Largest modulus of an eigenvalue not tied to `E`.
    pub rho_inner: f64,
    pub points_per_gap: Vec<usize>,
    /// Vertices `ζᵢ` counterclockwise, with their angles `μᵢ`.
    pub zeta: Vec<C64>,
    pub mu: Vec<f64>,
    pub c: Vec<C64>,
    pub d: Vec<C64>,
    /// Radius of the vertex neighbourhoods `Vᵢ = Δ₀ ∩ D(ζᵢ, ε)`: a third of the least vertex distance.
    pub epsilon: f64,
    /// Largest sampled `s` with `E_s ⊆ Δ̄`.
    pub s_inner: f64,
    /// `Δ ⊆ Ē_s` for this `s`.
    pub s_outer: f64,
    pub membership_samples: usize,
    pub membership_disagreements: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonConstruction {
    pub delta: ConvexPolygon,
    pub delta0: ConvexPolygon,
    pub meta: PolygonMeta,
}

impl PolygonConstruction {
    pub fn sectors(&self) -> Vec<Sector> {
        self.meta
            .zeta
            .iter()
            .zip(&self.meta.mu)
            .map(|(&z, &m)| Sector { vertex: z, half_angle: m })
            .collect()
    }
}

fn theta_grid(first: f64) -> Vec<f64> {
    let mut g = vec![first];
    g.extend((2..=10).map(|k| FRAC_PI_2 - 0.5f64.powi(k)).filter(|&t| t > first));
    g
}

fn theta_prime_grid(first: f64) -> Vec<f64> {
    let mut g = vec![first];
    g.extend((1..=8).map(|k| FRAC_PI_2 - 0.5f64.powi(k)));
    g.extend((2..=10).rev().map(|k| k as f64 * PI / 24.0));
    g.dedup();
    g
}

/// Checks the conditions imposed on the angle at the points of `E`.
fn theta_admissible(e: &PeripheralSet, others: &[C64], theta: f64) -> bool {
    let n = e.len();
    for j in 0..n {
        let s = Sector { vertex: e.points()[j], half_angle: theta };
        let clear = e.points().iter().enumerate().filter(|(k, _)| *k != j).all(|(_, &x)| s.contains(x, false))
            && others.iter().all(|&l| s.contains(l, false));
        if !clear {
            return false;
        }
        if n > 1 {
            let next = Sector { vertex: e.points()[(j + 1) % n], half_angle: theta };
            if let Ok(c) = halfline_intersection(&s, &next) {
                if c.norm() <= 1.0 {
                    return false;
                }
            }
        }
    }
    true
}

struct Attempt {
    zeta: Vec<C64>,
    mu: Vec<f64>,
    per_gap: Vec<usize>,
}

fn gap_points(e: &PeripheralSet, j: usize, theta: f64, r: f64, p: usize) -> Vec<C64> {
    let off = PI - 2.0 * theta;
    let a = e.points()[j].arg();
    let (phi0, phi1) = (a + off, a + e.gap(j) - off);
    (0..p).map(|i| C64::from_polar(r, phi0 + (i as f64 + 0.5) * (phi1 - phi0) / p as f64)).collect()
}

fn intermediate_points(e: &PeripheralSet, theta: f64, r: f64, per_gap: &[usize]) -> Attempt {
    let mut zeta = Vec::new();
    let mut mu = Vec::new();
    for (j, &p) in per_gap.iter().enumerate() {
        zeta.push(e.points()[j]);
        mu.push(theta);
        zeta.extend(gap_points(e, j, theta, r, p));
        mu.extend(std::iter::repeat_n(f64::NAN, p));
    }
    Attempt { zeta, mu, per_gap: per_gap.to_vec() }
}

/// Least normalized turn along an open chain of vertices.
fn chain_turn(v: &[C64]) -> f64 {
    v.windows(3)
        .map(|w| {
            let (e1, e2) = (w[1] - w[0], w[2] - w[1]);
            (e1.re * e2.im - e1.im * e2.re) / (e1.norm() * e2.norm()).max(f64::MIN_POSITIVE)
        })
        .fold(f64::INFINITY, f64::min)
}

/// The checks of one gap with `p` intermediate points, on its own stretch of the boundary.
fn gap_ok(
    e: &PeripheralSet,
    inner: &[C64],
    j: usize,
    (theta, theta_prime, r): (f64, f64, f64),
    p: usize,
) -> std::result::Result<(), String> {
    let n = e.len();
    let z = gap_points(e, j, theta, r, p);
    let mut sectors = vec![Sector { vertex: e.points()[j], half_angle: theta }];
    for &zi in &z {
        let s = Sector { vertex: zi, half_angle: theta_prime };
        if let Some(l) = inner.iter().chain(e.points()).find(|&&l| !s.contains(l, false)) {
            return Err(format!("gap {j}: eigenvalue {l} not inside Σ({zi}, {theta_prime})"));
        }
        sectors.push(s);
    }
    sectors.push(Sector { vertex: e.points()[(j + 1) % n], half_angle: theta });
    let (mut lower, mut lifted) = (vec![sectors[0].vertex], vec![sectors[0].vertex]);
    for w in sectors.windows(2) {
        let c = halfline_intersection(&w[0], &w[1]).map_err(|err| format!("gap {j}: {err}"))?;
        if !(c.norm() < 1.0 - 1e-12 && c.norm() > 1e-12) {
            return Err(format!("gap {j}: half-lines meet at {c}, outside 𝔻 ∖ {{0}}"));
        }
        lower.extend([c, w[1].vertex]);
        lifted.extend([lift_vertex(c).expect("nonzero"), w[1].vertex]);
    }
    if chain_turn(&lower) <= 1e-13 || chain_turn(&lifted) <= 1e-13 {
        return Err(format!("gap {j}: boundary not strictly convex with {p} points"));
    }
    Ok(())
}

/// Constructs `Δ₀ = ⋂ Σ(ζᵢ, μᵢ)` and the lifted polygon `Δ` with `σ(T) ⊂ Δ̄` and `Δ̄ ∩ 𝕋 = E`.
///
/// The angle at the points of `E` is raised along `π/2 − 2⁻ᵏ` until admissible. Intermediate
/// points are spread evenly over `r·Γⱼ,ⱼ₊₁`, starting from `r = (1 + ρ_inner)/2`; each gap
/// doubles its own number of points, up to the cap, until its stretch of the boundary passes. The lifted polygon is not automatically convex, so the search
/// also varies `θ′` and `r` and keeps the first configuration whose `Δ` is strictly convex.
pub fn build_polygon(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    theta: f64,
    theta_prime: f64,
    cfg: &PolygonConfig,
) -> Result<PolygonConstruction> {
    for a in [theta, theta_prime] {
        if !(a > 0.0 && a < FRAC_PI_2) {
            return Err(Error::InvalidInput(format!("angle {a} outside (0, π/2)")));
        }
    }
    let cert = is_ritt_e_fd(t, e, cfg.peripheral_tol)?;
    if !cert.is_ritt {
        return Err(Error::NotRittE(cert.reasons.join("; ")));
    }
    let inner: Vec<C64> = cert
        .spectrum
        .eigenvalues
        .iter()
        .map(|ev| ev.value)
        .filter(|&v| e.nearest(v).1 > cfg.peripheral_tol)
        .collect();
    let rho_inner = inner.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let theta = theta_grid(theta)
        .into_iter()
        .find(|&th| theta_admissible(e, &inner, th))
        .ok_or(Error::NoAdmissibleTheta)?;

    let mut last_reason = String::from("no configuration tried");
    let mut last_gap = 0;
    for frac in [0.5, 0.25, 0.75, 0.125, 0.0625] {
        let r = 1.0 - (1.0 - rho_inner) * frac;
        for &tp in &theta_prime_grid(theta_prime) {
            let mut per_gap = Vec::with_capacity(e.len());
            for j in 0..e.len() {
                let mut p = 1;
                let found = loop {
                    match gap_ok(e, &inner, j, (theta, tp, r), p) {
                        Ok(()) => break Some(p),
                        Err(reason) => last_reason = reason,
                    }
                    p *= 2;
                    if p > cfg.p_cap {
                        break None;
                    }
                };
                match found {
                    Some(p) => per_gap.push(p),
                    None => {
                        last_gap = j;
                        break;
                    }
                }
            }
            if per_gap.len() < e.len() {
                continue;
            }
            match try_configuration(e, &inner, theta, tp, r, &per_gap, cfg) {
                Ok(mut built) => {
                    built.meta.rho_inner = rho_inner;
                    return Ok(built);
                }
                Err(reason) => last_reason = reason,
            }
        }
    }
    Err(Error::CoverageFailure { gap: last_gap, reason: last_reason })
}

fn try_configuration(
    e: &PeripheralSet,
    inner: &[C64],
    theta: f64,
    theta_prime: f64,
    r: f64,
    per_gap: &[usize],
    cfg: &PolygonConfig,
) -> std::result::Result<PolygonConstruction, String> {
    let mut att = intermediate_points(e, theta, r, per_gap);
    att.mu.iter_mut().filter(|m| m.is_nan()).for_each(|m| *m = theta_prime);
    let m = att.zeta.len();
    let sectors: Vec<Sector> =
        att.zeta.iter().zip(&att.mu).map(|(&z, &mu)| Sector { vertex: z, half_angle: mu }).collect();

    for (s, z) in sectors.iter().zip(&att.zeta) {
        if e.nearest(*z).1 > 1e-12 {
            if let Some(l) = inner.iter().chain(e.points()).find(|&&l| !s.contains(l, false)) {
                return Err(format!("eigenvalue {l} not inside Σ({z}, {theta_prime})"));
            }
        }
    }
    let mut c = Vec::with_capacity(m);
    for i in 0..m {
        let ci = halfline_intersection(&sectors[i], &sectors[(i + 1) % m]).map_err(|err| err.to_string())?;
        if !(ci.norm() < 1.0 - 1e-12 && ci.norm() > 1e-12) {
            return Err(format!("half-lines meet at {ci}, outside 𝔻 ∖ {{0}}"));
        }
        c.push(ci);
    }
    let d: Vec<C64> = c.iter().map(|&ci| lift_vertex(ci).expect("nonzero")).collect();
    let interleave = |w: &[C64]| -> Vec<C64> { att.zeta.iter().zip(w).flat_map(|(&z, &x)| [z, x]).collect() };
    let delta0 = ConvexPolygon::new(interleave(&c)).map_err(|err| format!("Δ₀: {err}"))?;
    let delta = ConvexPolygon::new(interleave(&d)).map_err(|err| format!("Δ: {err}"))?;
    if let Some(l) = inner.iter().find(|&&l| !delta.contains(l, true)) {
        return Err(format!("eigenvalue {l} outside Δ̄"));
    }

    let mut rng = seeded_rng(cfg.seed);
    let mut disagreements = 0;
    for _ in 0..cfg.membership_samples {
        let z = random_in_disc(&mut rng, 1.0);
        let a = delta0.contains(z, false);
        let b = sectors.iter().all(|s| s.contains(z, false));
        if a != b {
            disagreements += 1;
        }
    }
    if disagreements > 0 {
        return Err(format!("Δ₀ differs from the sector intersection at {disagreements} samples"));
    }

    let mut min_dist = f64::INFINITY;
    for i in 0..m {
        for k in i + 1..m {
            min_dist = min_dist.min((att.zeta[i] - att.zeta[k]).norm());
        }
    }
    let s_outer = delta
        .vertices()
        .iter()
        .filter(|v| (v.norm() - 1.0).abs() > 1e-12)
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let s_inner = inscribed_stolz_radius(e, &delta);
    Ok(PolygonConstruction {
        delta,
        delta0,
        meta: PolygonMeta {
            theta,
            theta_prime,
            r,
            rho_inner: 0.0,
            points_per_gap: att.per_gap,
            zeta: att.zeta,
            mu: att.mu,
            c,
            d,
            epsilon: min_dist / 3.0,
            s_inner,
            s_outer,
            membership_samples: cfg.membership_samples,
            membership_disagreements: disagreements,
        },
    })
}

/// Largest `s` (to 10⁻⁶) whose sampled `∂E_s` lies in `Δ̄`.
pub fn inscribed_stolz_radius(e: &PeripheralSet, delta: &ConvexPolygon) -> f64 {
    let fits = |s: f64| -> bool {
        match build_stolz(e, s) {
            Ok(d) => d
                .boundary_contour(crate::domains::Orientation::Ccw)
                .sample(64)
                .iter()
                .all(|&z| delta.contains(z, true)),
            Err(_) => false,
        }
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if !fits(1e-6) {
        return 0.0;
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    use super::*;
    use crate::c64;

    fn diag_sample() -> (ComplexMatrix, PeripheralSet) {
        let e = PeripheralSet::roots_of_unity(2).unwrap();
        let t = ComplexMatrix::from_diag(&[c64(1.0, 0.0), c64(-1.0, 0.0), c64(0.3, 0.2), c64(-0.1, -0.5)]);
        (t, e)
    }

    #[test]
    fn polygon_encloses_spectrum() {
        let (t, e) = diag_sample();
        let built = build_polygon(&t, &e, FRAC_PI_4, FRAC_PI_4 * 4.0 / 3.0, &PolygonConfig::default()).unwrap();
        assert_eq!(built.meta.membership_disagreements, 0);
        for l in [c64(0.3, 0.2), c64(-0.1, -0.5)] {
            assert!(built.delta.contains(l, false));
        }
        // Δ̄ meets the circle exactly at E
        let on_circle: Vec<C64> = built.delta.vertices().iter().copied().filter(|v| (v.norm() - 1.0).abs() < 1e-12).collect();
        assert_eq!(on_circle.len(), 2);
        assert!(built.meta.s_inner > 0.0 && built.meta.s_inner < 1.0);
        assert!(built.meta.s_outer < 1.0);
    }

    #[test]
    fn delta0_inside_delta() {
        let (t, e) = diag_sample();
        let built = build_polygon(&t, &e, FRAC_PI_4, PI / 3.0, &PolygonConfig::default()).unwrap();
        for &v in built.delta0.vertices() {
            assert!(built.delta.contains(v, true));
        }
    }

    #[test]
    fn rejects_bad_angles_and_non_ritt() {
        let (t, e) = diag_sample();
        assert!(matches!(build_polygon(&t, &e, 0.0, 1.0, &PolygonConfig::default()), Err(Error::InvalidInput(_))));
        let j = ComplexMatrix::jordan(c64(1.0, 0.0), 2);
        assert!(matches!(
            build_polygon(&j, &e, FRAC_PI_4, PI / 3.0, &PolygonConfig::default()),
            Err(Error::NotRittE(_))
        ));
    }

    #[test]
    fn unequal_gaps() {
        // square and cube roots of unity together: two gaps of 2π/3 and two of π/3
        let e = PeripheralSet::from_angles(&[0.0, 2.0 * PI / 3.0, PI, 4.0 * PI / 3.0]).unwrap();
        let mut d = e.points().to_vec();
        d.extend([c64(0.76, 0.0), c64(-0.4, 0.0), c64(-0.02, 0.0)]);
        let t = ComplexMatrix::from_diag(&d);
        let built = build_polygon(&t, &e, FRAC_PI_4, PI / 3.0, &PolygonConfig::default()).unwrap();
        assert_eq!(built.meta.membership_disagreements, 0);
        for &l in &d[4..] {
            assert!(built.delta.contains(l, false));
        }
        let on_circle = built.delta.vertices().iter().filter(|v| (v.norm() - 1.0).abs() < 1e-12).count();
        assert_eq!(on_circle, 4);
    }

    #[test]
    fn inscribed_radius_of_hull() {
        // the square with vertices at the fourth roots of unity is E_s for s = 1/√2
        let e = PeripheralSet::roots_of_unity(4).unwrap();
        let sq = ConvexPolygon::new(e.points().to_vec()).unwrap();
        let s = inscribed_stolz_radius(&e, &sq);
        assert!((s - FRAC_1_SQRT_2).abs() < 1e-5, "{s}");
    }
}
