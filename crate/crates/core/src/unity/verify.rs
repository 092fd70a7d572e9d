use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{build_stolz, BoundaryPiece, PeripheralSet, StolzDomain};
use crate::quad::{adaptive, gauss16};
use crate::unity::family::SectorFamily;
use crate::unity::multipoint::multi_indices;
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnityConfig {
    /// Boundary integrals are evaluated for at most this many multi-indices.
    pub max_integrals: usize,
    /// Multi-indices whose vertex portion is recomputed on the pulled-back sector rays.
    pub pullback_checks: usize,
}

impl Default for UnityConfig {
    fn default() -> Self {
        Self { max_integrals: 512, pullback_checks: 6 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundaryIntegral {
    pub iota: Vec<i64>,
    pub value: f64,
    /// Portion within `delta` of each point of `E`.
    pub vertex_parts: Vec<f64>,
}

/// Properties (i)–(iv) of the truncated multi-point decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnityReport {
    pub truncation: usize,
    pub multi_indices: usize,
    /// (i) `sup_z Σ_ι|φ_ι(z)|`, `sup_z Σ_ι|ψ_ι(z)|`.
    pub sum_phi_sup: f64,
    pub sum_psi_sup: f64,
    /// (ii) `sup_z sup_ι |θ_ι(z)|`.
    pub theta_sup: f64,
    /// (iii) `∫_{∂E_r}|θ_ι|/∏|ξₖ−z| |dz|` for the evaluated multi-indices.
    pub integrals: Vec<BoundaryIntegral>,
    pub integral_max: f64,
    pub integral_median: f64,
    pub uniformity_ratio: f64,
    /// Relative change of the integrals under one panel refinement.
    pub quadrature_error: f64,
    /// Integrals exclude `|z − ξⱼ| < excluded_radius`, outside the family's validity zone.
    pub excluded_radius: f64,
    pub delta: f64,
    /// Largest relative gap between vertex portions and the pulled-back sector integrals.
    pub pullback_residual: f64,
    /// (iv) `max_z |1 − Σ_ι θ_ιφ_ιψ_ι(z)|`.
    pub unity_defect: f64,
}

/// Per-point data at `λ = 1 − ξ̄z`: `|σₙ(λ)|` over the truncation, `Σσₙ³/h`, and `|h|`.
struct PointData {
    abs_sigma: Vec<f64>,
    unity: C64,
    abs_h: f64,
}

fn point_data(family: &SectorFamily, l: C64, k: usize) -> PointData {
    let (h, sig) = family.table(l);
    let lo = family.m - k;
    let kept = &sig[lo..lo + 2 * k + 1];
    let unity = kept.iter().map(|s| s * s * s).sum::<C64>() / h;
    PointData { abs_sigma: kept.iter().map(|s| s.norm()).collect(), unity, abs_h: h.norm() }
}

/// A boundary node with arclength weight; `vertex` marks nodes within `delta` of `ξⱼ`.
#[derive(Clone, Copy, Debug)]
struct BoundaryNode {
    z: C64,
    w: f64,
    vertex: Option<usize>,
    /// `(j, z − ξⱼ)` on edges leaving `ξⱼ`, so `1 − ξ̄ⱼz` is formed without cancellation.
    anchor: Option<(usize, C64)>,
}

/// Panel nodes in `u = ln|z − v|` along the segment from `v` toward `toward`.
fn log_segment(v: C64, j: usize, toward: C64, eps: f64, delta: f64, level: usize, out: &mut Vec<BoundaryNode>) {
    let g = gauss16();
    let len = (toward - v).norm();
    let dir = (toward - v) / len;
    let width = 1.0 / (1usize << level) as f64;
    for (a, b, near) in [(eps.ln(), delta.ln(), true), (delta.ln(), len.ln(), false)] {
        if b <= a {
            continue;
        }
        let m = ((b - a) / width).ceil() as usize;
        let h = (b - a) / m as f64;
        for p in 0..m {
            let (pa, pb) = (a + p as f64 * h, a + (p + 1) as f64 * h);
            let (half, mid) = (0.5 * (pb - pa), 0.5 * (pa + pb));
            for (x, w) in g.nodes.iter().zip(&g.weights) {
                let u = mid + half * x;
                let d = u.exp();
                out.push(BoundaryNode {
                    z: v + dir * d,
                    w: w * half * d,
                    vertex: near.then_some(j),
                    anchor: Some((j, dir * d)),
                });
            }
        }
    }
}

fn boundary_nodes(d: &StolzDomain, eps: f64, delta: f64, level: usize) -> Vec<BoundaryNode> {
    let g = gauss16();
    let pts = d.e.points();
    let vertex_of = |z: C64| pts.iter().position(|x| (x - z).norm() < 1e-12);
    let mut out = Vec::new();
    for piece in &d.boundary {
        match *piece {
            BoundaryPiece::Segment { a, b } => match (vertex_of(a), vertex_of(b)) {
                (Some(j), _) => log_segment(a, j, b, eps, delta, level, &mut out),
                (_, Some(j)) => log_segment(b, j, a, eps, delta, level, &mut out),
                _ => unreachable!("tangent segments end at a point of E"),
            },
            BoundaryPiece::Chord { a, b } => {
                let mid = 0.5 * (a + b);
                log_segment(a, vertex_of(a).expect("chord endpoint"), mid, eps, delta, level, &mut out);
                log_segment(b, vertex_of(b).expect("chord endpoint"), mid, eps, delta, level, &mut out);
            }
            BoundaryPiece::Arc { radius, theta_start, theta_end } => {
                let m = 8usize << level;
                let h = (theta_end - theta_start) / m as f64;
                for p in 0..m {
                    let mid = theta_start + (p as f64 + 0.5) * h;
                    for (x, w) in g.nodes.iter().zip(&g.weights) {
                        let th = mid + 0.5 * h * x;
                        out.push(BoundaryNode { z: C64::from_polar(radius, th), w: w * 0.5 * h * radius, vertex: None, anchor: None });
                    }
                }
            }
        }
    }
    out
}

/// `|Θₙ(λₖ)|/|λₖ|` for every node, point `k` and index `n` in the truncation.
fn node_table(family: &SectorFamily, xi: &[C64], nodes: &[BoundaryNode], k: usize) -> Vec<Vec<Vec<f64>>> {
    nodes
        .par_iter()
        .map(|node| {
            xi.iter()
                .enumerate()
                .map(|(i, x)| {
                    let l = match node.anchor {
                        Some((j, off)) if j == i => -x.conj() * off,
                        _ => C64::new(1.0, 0.0) - x.conj() * node.z,
                    };
                    let pd = point_data(family, l, k);
                    let scale = 1.0 / (pd.abs_h * l.norm());
                    pd.abs_sigma.iter().map(|s| s * scale).collect()
                })
                .collect()
        })
        .collect()
}

fn integrate(table: &[Vec<Vec<f64>>], nodes: &[BoundaryNode], iota: &[i64], k: usize, n_points: usize) -> (f64, Vec<f64>) {
    let mut total = 0.0;
    let mut parts = vec![0.0; n_points];
    for (row, node) in table.iter().zip(nodes) {
        let v: f64 = row.iter().zip(iota).map(|(a, &n)| a[(n + k as i64) as usize]).product::<f64>() * node.w;
        total += v;
        if let Some(j) = node.vertex {
            parts[j] += v;
        }
    }
    (total, parts)
}

/// Vertex portion at `ξⱼ` recomputed as `∫|G(λ)||dλ|` over the two rays of the sector
/// that `λ = 1 − ξ̄ⱼz` maps the adjacent boundary edges to, with `|λ| ∈ [eps, delta]`.
fn pullback_vertex_integral(
    family: &SectorFamily,
    xi: &[C64],
    j: usize,
    directions: &[C64],
    iota: &[i64],
    eps: f64,
    delta: f64,
) -> f64 {
    let one = C64::new(1.0, 0.0);
    let g = |l: C64| -> f64 {
        let z = xi[j] * (one - l);
        xi.iter()
            .zip(iota)
            .enumerate()
            .map(|(k, (x, &n))| {
                let lk = if k == j { l } else { one - x.conj() * z };
                family.theta(n, lk).norm() / lk.norm()
            })
            .product()
    };
    let mut total = 0.0;
    for &dir in directions {
        // λ runs along −ξ̄ⱼ·dir
        let ray = -xi[j].conj() * dir;
        let mut a = eps;
        while a < delta {
            let b = (2.0 * a).min(delta);
            let f = |r: f64| C64::new(g(ray * r), 0.0);
            let rough = adaptive(&f, a, b, 1e-6 * (b - a)).0.re;
            total += adaptive(&f, a, b, 1e-13 * rough.abs().max(1e-300)).0.re;
            a = b;
        }
    }
    total
}

/// Directions leaving each `ξⱼ` along the boundary edges that meet it.
fn vertex_directions(d: &StolzDomain) -> Vec<Vec<C64>> {
    let pts = d.e.points();
    let mut out = vec![Vec::new(); pts.len()];
    for piece in &d.boundary {
        let (a, b) = (piece.start(), piece.end());
        for (v, w) in [(a, b), (b, a)] {
            if let Some(j) = pts.iter().position(|x| (x - v).norm() < 1e-12) {
                if !matches!(piece, BoundaryPiece::Arc { .. }) {
                    out[j].push((w - v) / (w - v).norm());
                }
            }
        }
    }
    out
}

fn vertex_delta(d: &StolzDomain) -> f64 {
    d.boundary
        .iter()
        .filter_map(|p| match *p {
            BoundaryPiece::Segment { a, b } => Some((a - b).norm()),
            BoundaryPiece::Chord { a, b } => Some(0.5 * (a - b).norm()),
            BoundaryPiece::Arc { .. } => None,
        })
        .fold(f64::INFINITY, f64::min)
        * 0.5
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn verify_unity(family: &SectorFamily, e: &PeripheralSet, r: f64, z_grid: &[C64], truncation: usize) -> Result<UnityReport> {
    verify_unity_with(family, e, r, z_grid, truncation, &UnityConfig::default())
}

pub fn verify_unity_with(
    family: &SectorFamily,
    e: &PeripheralSet,
    r: f64,
    z_grid: &[C64],
    truncation: usize,
    cfg: &UnityConfig,
) -> Result<UnityReport> {
    if !family.valid {
        return Err(Error::FamilyInvalid(format!("inf |h| = {:e} below floor {:e}", family.min_h, family.floor)));
    }
    if truncation > family.m {
        return Err(Error::InvalidInput(format!("truncation {truncation} exceeds M = {}", family.m)));
    }
    if let Some(z) = z_grid.iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::InvalidInput(format!("grid point {z} is outside the open disc")));
    }
    let k = truncation;
    let xi = e.points();
    let one = C64::new(1.0, 0.0);

    // (i), (ii), (iv) factor over the points of E
    let per_z: Vec<(f64, f64, f64)> = z_grid
        .par_iter()
        .map(|&z| {
            let mut sum_phi = 1.0;
            let mut theta = 1.0;
            let mut unity = one;
            for x in xi {
                let pd = point_data(family, one - x.conj() * z, k);
                sum_phi *= pd.abs_sigma.iter().sum::<f64>();
                theta *= pd.abs_sigma.iter().copied().fold(0.0, f64::max) / pd.abs_h;
                unity *= pd.unity;
            }
            (sum_phi, theta, (one - unity).norm())
        })
        .collect();
    let sum_phi_sup = per_z.iter().map(|v| v.0).fold(0.0, f64::max);
    let theta_sup = per_z.iter().map(|v| v.1).fold(0.0, f64::max);
    let unity_defect = per_z.iter().map(|v| v.2).fold(0.0, f64::max);

    // (iii)
    let domain = build_stolz(e, r)?;
    let eps = family.validity_min_modulus;
    let delta = vertex_delta(&domain);
    let all = multi_indices(e.len(), k);
    let stride = all.len().div_ceil(cfg.max_integrals.max(1));
    let chosen: Vec<Vec<i64>> = all.iter().step_by(stride).cloned().collect();
    let levels: Vec<Vec<(f64, Vec<f64>)>> = (0..2)
        .map(|level| {
            let nodes = boundary_nodes(&domain, eps, delta, level);
            let table = node_table(family, xi, &nodes, k);
            chosen.par_iter().map(|iota| integrate(&table, &nodes, iota, k, xi.len())).collect()
        })
        .collect();
    let quadrature_error = levels[0]
        .iter()
        .zip(&levels[1])
        .map(|(a, b)| (a.0 - b.0).abs() / b.0.abs().max(1e-300))
        .fold(0.0, f64::max);
    let integrals: Vec<BoundaryIntegral> = chosen
        .iter()
        .zip(&levels[1])
        .map(|(iota, (v, parts))| BoundaryIntegral { iota: iota.clone(), value: *v, vertex_parts: parts.clone() })
        .collect();
    let integral_max = integrals.iter().map(|b| b.value).fold(0.0, f64::max);
    let integral_median = median(integrals.iter().map(|b| b.value).collect());

    let dirs = vertex_directions(&domain);
    let check_stride = integrals.len().div_ceil(cfg.pullback_checks.max(1)).max(1);
    let pullback_residual = integrals
        .par_iter()
        .step_by(check_stride)
        .map(|b| {
            (0..xi.len())
                .map(|j| {
                    let p = pullback_vertex_integral(family, xi, j, &dirs[j], &b.iota, eps, delta);
                    (p - b.vertex_parts[j]).abs() / p.abs().max(1e-300)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);

    Ok(UnityReport {
        truncation: k,
        multi_indices: all.len(),
        sum_phi_sup,
        sum_psi_sup: sum_phi_sup,
        theta_sup,
        integrals,
        integral_max,
        integral_median,
        uniformity_ratio: integral_max / integral_median,
        quadrature_error,
        excluded_radius: eps,
        delta,
        pullback_residual,
        unity_defect,
    })
}

/// `count` points of `𝔻` on a polar grid of radii up to `rmax`, plus the origin.
pub fn disc_grid(count: usize, rmax: f64) -> Vec<C64> {
    let rings = ((count as f64).sqrt() / 2.0).ceil().max(1.0) as usize;
    let per_ring = (count - 1).div_ceil(rings);
    let mut out = vec![C64::new(0.0, 0.0)];
    for i in 1..=rings {
        let r = rmax * i as f64 / rings as f64;
        for k in 0..per_ring {
            if out.len() == count {
                break;
            }
            let th = std::f64::consts::TAU * (k as f64 + 0.5 * (i % 2) as f64) / per_ring as f64;
            out.push(C64::from_polar(r, th));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::unity::family::default_family;

    #[test]
    fn grid_size() {
        let g = disc_grid(1000, 0.99);
        assert_eq!(g.len(), 1000);
        assert!(g.iter().all(|z| z.norm() <= 0.99 + 1e-15));
    }

    #[test]
    fn unity_at_own_truncation() {
        let f = default_family(12).unwrap();
        let e = PeripheralSet::new(vec![c64(1.0, 0.0), c64(-1.0, 0.0)]).unwrap();
        let rep = verify_unity(&f, &e, 0.5, &disc_grid(200, 0.99), 12).unwrap();
        assert!(rep.unity_defect < 1e-10, "{}", rep.unity_defect);
        assert!(rep.quadrature_error < 1e-8, "{}", rep.quadrature_error);
        assert!(rep.pullback_residual < 1e-6, "{}", rep.pullback_residual);
    }

    #[test]
    fn single_point_vertex_part_is_sector_integral() {
        // N = 1: |θ(z)|/|1−z| |dz| = |Θ(λ)| |dλ|/|λ| exactly
        let f = default_family(8).unwrap();
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let rep = verify_unity(&f, &e, 0.6, &disc_grid(50, 0.9), 8).unwrap();
        assert!(rep.pullback_residual < 1e-6, "{}", rep.pullback_residual);
        assert_eq!(rep.multi_indices, 17);
        assert_eq!(rep.integrals.len(), 17);
    }

    #[test]
    fn sums_plateau_in_m() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let grid = disc_grid(300, 0.99);
        let a = verify_unity(&default_family(24).unwrap(), &e, 0.5, &grid, 24).unwrap();
        let b = verify_unity(&default_family(28).unwrap(), &e, 0.5, &grid, 28).unwrap();
        assert!(b.sum_phi_sup >= a.sum_phi_sup);
        assert!((b.sum_phi_sup - a.sum_phi_sup) / a.sum_phi_sup < 0.01);
    }

    #[test]
    fn rejects_invalid_family() {
        let mut f = default_family(4).unwrap();
        f.valid = false;
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        assert!(matches!(verify_unity(&f, &e, 0.5, &[c64(0.0, 0.0)], 4), Err(Error::FamilyInvalid(_))));
    }
}
