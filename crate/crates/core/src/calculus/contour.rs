use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::Holomorphic;
use crate::classify::{is_ritt_e_fd, ritt_type};
use crate::domains::{build_stolz, ConvexPolygon, Orientation, PeripheralSet, PiecewiseContour};
use crate::linalg::{norm2, spectrum, ComplexMatrix, Lu};
use crate::quad::{contour_nodes, ContourNode, QuadConfig};
use crate::{Error, Result, C64};

/// Nodes closer than this to a unimodular vertex are dropped; the integrand is bounded
/// there, so the omitted mass is below rounding.
const VERTEX_SKIP: f64 = 1e-12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResolventIntegral {
    pub values: Vec<ComplexMatrix>,
    /// `‖Vₗ − Vₗ₋₁‖₂` per function.
    pub error_estimates: Vec<f64>,
    pub converged: bool,
    pub level: usize,
    pub nodes: usize,
}

type Scalar<'a> = &'a (dyn Fn(C64) -> C64 + Sync);

fn level_sums(nodes: &[ContourNode], t: &ComplexMatrix, fs: &[Scalar<'_>], vertices: &[C64]) -> Result<Vec<ComplexMatrix>> {
    let dim = t.dim();
    let k = C64::new(0.0, -0.5 / PI);
    let partial: Vec<Result<Vec<ComplexMatrix>>> = nodes
        .par_chunks(32)
        .map(|chunk| {
            let mut acc = vec![ComplexMatrix::zeros(dim); fs.len()];
            for node in chunk {
                if vertices.iter().any(|v| (node.z - v).norm() < VERTEX_SKIP) {
                    continue;
                }
                let m = t.scale_real(-1.0).shift(node.z);
                let lu = Lu::factor(&m).map_err(|_| Error::Singular { re: node.z.re, im: node.z.im })?;
                let r = lu.inverse();
                for (a, f) in acc.iter_mut().zip(fs) {
                    *a = &*a + &r.scale(node.w * f(node.z) * k);
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = vec![ComplexMatrix::zeros(dim); fs.len()];
    for p in partial {
        for (tt, a) in total.iter_mut().zip(p?) {
            *tt = &*tt + &a;
        }
    }
    Ok(total)
}

/// `(1/2πi)∮ f(λ)R(λ,T)dλ` for several `f` at once, sharing every resolvent.
///
/// Refinement levels double the panels until each value moves by at most
/// `target_tol·max(1, ‖V‖₂)` in `‖·‖₂`.
pub fn integrate_resolvent(
    contour: &PiecewiseContour,
    t: &ComplexMatrix,
    fs: &[Scalar<'_>],
    cfg: &QuadConfig,
) -> Result<ResolventIntegral> {
    let vertices = contour.unimodular_vertices();
    let mut prev: Option<Vec<ComplexMatrix>> = None;
    let mut errs = vec![f64::INFINITY; fs.len()];
    let mut nodes_used = 0;
    for level in 0..=cfg.max_refinements {
        let nodes = contour_nodes(contour, level, cfg);
        nodes_used = nodes.len();
        let cur = level_sums(&nodes, t, fs, &vertices)?;
        if let Some(p) = &prev {
            errs = cur.iter().zip(p).map(|(a, b)| norm2(&(a - b))).collect();
            let ok = cur.iter().zip(&errs).all(|(v, e)| *e <= cfg.target_tol * norm2(v).max(1.0));
            if ok {
                return Ok(ResolventIntegral { values: cur, error_estimates: errs, converged: true, level, nodes: nodes_used });
            }
        }
        prev = Some(cur);
    }
    Ok(ResolventIntegral {
        values: prev.unwrap_or_default(),
        error_estimates: errs,
        converged: false,
        level: cfg.max_refinements,
        nodes: nodes_used,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FCResult {
    pub value: ComplexMatrix,
    pub error_estimate: f64,
    pub contour_used: PiecewiseContour,
    pub u: f64,
    pub converged: bool,
    pub level: usize,
    /// The integrand came from a black box whose vanishing on `E` was only sampled.
    pub membership_sampled: bool,
}

impl FCResult {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NoConvergence(format!("error estimate {:e} after level {}", self.error_estimate, self.level)))
        }
    }
}

/// Candidate contour radii in `(r, s)`, midpoint first.
fn u_candidates(r: f64, s: f64) -> Vec<f64> {
    let mut fr = vec![0.5];
    for k in 2..=6 {
        let m = 1usize << k;
        fr.extend((1..m).step_by(2).map(|i| i as f64 / m as f64));
    }
    fr.into_iter().map(|f| r + (s - r) * f).collect()
}

/// Inner eigenvalues: those not tied to a point of `E`.
fn inner_eigenvalues(t: &ComplexMatrix, e: &PeripheralSet, tol: f64) -> Result<Vec<C64>> {
    let sp = spectrum(t).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    Ok(sp.values().into_iter().filter(|l| l.norm() < 1.0 - tol || e.nearest(*l).1 > tol).collect())
}

/// Picks `u` and the counterclockwise `∂E_u` with clearance from the inner spectrum.
pub fn admissible_contour(t: &ComplexMatrix, e: &PeripheralSet, s: f64, cfg: &QuadConfig) -> Result<(f64, PiecewiseContour)> {
    let cert = is_ritt_e_fd(t, e, 1e-6)?;
    if !cert.is_ritt {
        return Err(Error::NotRittE(cert.reasons.join("; ")));
    }
    let r = ritt_type(t, e, 1e-6)?;
    if r >= s {
        return Err(Error::NotRittE(format!("type {r} is not below s = {s}")));
    }
    let inner = inner_eigenvalues(t, e, 1e-6)?;
    for u in u_candidates(r, s) {
        let c = build_stolz(e, u)?.boundary_contour(Orientation::Ccw);
        if inner.iter().all(|&l| c.distance(l) >= cfg.min_spectral_clearance) {
            return Ok((u, c));
        }
    }
    Err(Error::SpectralClearance)
}

/// `φ(T) = (1/2πi)∫_{∂E_u} φ(λ)R(λ,T)dλ` for `φ` vanishing on `E`.
pub fn fc_contour(phi: &Holomorphic, t: &ComplexMatrix, e: &PeripheralSet, s: f64, cfg: &QuadConfig) -> Result<FCResult> {
    phi.check_h0(e)?;
    let (u, contour) = admissible_contour(t, e, s, cfg)?;
    fc_on_contour(phi, t, contour, u, cfg)
}

/// Same as [`fc_contour`] on a fixed `u`.
pub fn fc_contour_at(phi: &Holomorphic, t: &ComplexMatrix, e: &PeripheralSet, u: f64, cfg: &QuadConfig) -> Result<FCResult> {
    phi.check_h0(e)?;
    let inner = inner_eigenvalues(t, e, 1e-6)?;
    let contour = build_stolz(e, u)?.boundary_contour(Orientation::Ccw);
    if inner.iter().any(|&l| contour.distance(l) < cfg.min_spectral_clearance) {
        return Err(Error::SpectralClearance);
    }
    fc_on_contour(phi, t, contour, u, cfg)
}

fn fc_on_contour(phi: &Holomorphic, t: &ComplexMatrix, contour: PiecewiseContour, u: f64, cfg: &QuadConfig) -> Result<FCResult> {
    let f = |z: C64| phi.eval(z);
    let res = integrate_resolvent(&contour, t, &[&f], cfg)?;
    Ok(FCResult {
        value: res.values[0].clone(),
        error_estimate: res.error_estimates[0],
        contour_used: contour,
        u,
        converged: res.converged,
        level: res.level,
        membership_sampled: phi.is_sampled(),
    })
}

/// Dunford–Riesz integral over `∂Δ` for `S` with spectrum inside `Δ`.
pub fn fc_dunford_polygon(phi: &Holomorphic, s: &ComplexMatrix, delta: &ConvexPolygon, cfg: &QuadConfig) -> Result<FCResult> {
    let sp = spectrum(s).map_err(|err| Error::SpectrumFailed(err.to_string()))?;
    for l in sp.values() {
        if delta.signed_distance(l) < cfg.min_spectral_clearance {
            return Err(Error::SpectrumNotEnclosed(format!("eigenvalue {l} within {} of ∂Δ or outside", cfg.min_spectral_clearance)));
        }
    }
    let contour = delta.boundary_contour(Orientation::Ccw);
    fc_on_contour(phi, s, contour, 0.0, cfg)
}
