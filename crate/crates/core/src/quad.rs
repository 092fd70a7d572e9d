//! Gauss–Legendre rules, graded composite panels on contours, and adaptive scalar quadrature.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::domains::{Piece, PiecewiseContour};
use crate::domains::peripheral::UNIMODULAR_TOL;
use crate::C64;

/// Quadrature settings shared by the contour functional calculus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub gauss_order: usize,
    pub max_refinements: usize,
    pub target_tol: f64,
    pub vertex_grading_ratio: f64,
    pub min_spectral_clearance: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            gauss_order: 16,
            max_refinements: 12,
            target_tol: 1e-9,
            vertex_grading_ratio: 0.5,
            min_spectral_clearance: 1e-4,
        }
    }
}

/// Nodes and weights on `[−1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss–Legendre rule of order `n` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

pub fn gauss16() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

fn rule(order: usize) -> GaussRule {
    if order == 16 {
        gauss16().clone()
    } else {
        gauss_legendre(order)
    }
}

/// Parameter panels of `[0, 1]` at refinement `level`: `2^level` uniform panels, with the
/// panels touching a graded endpoint split geometrically toward it. Each geometric panel is
/// cut into `level + 2` equal parts so that no panel survives unchanged into the next level.
pub fn panels(grade_start: bool, grade_end: bool, level: usize, ratio: f64) -> Vec<(f64, f64)> {
    let m = 1usize << level;
    let h = 1.0 / m as f64;
    let depth = 16 + 4 * level;
    let mut out = Vec::new();
    for k in 0..m {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        let gs = grade_start && k == 0;
        let ge = grade_end && k == m - 1;
        match (gs, ge) {
            (false, false) => out.push((a, b)),
            (true, false) => out.extend(split(graded(a, b, depth, ratio, true), level + 2)),
            (false, true) => out.extend(split(graded(a, b, depth, ratio, false), level + 2)),
            (true, true) => {
                let mid = 0.5 * (a + b);
                out.extend(split(graded(a, mid, depth, ratio, true), level + 2));
                out.extend(split(graded(mid, b, depth, ratio, false), level + 2));
            }
        }
    }
    out
}

fn split(panels: Vec<(f64, f64)>, parts: usize) -> impl Iterator<Item = (f64, f64)> {
    panels.into_iter().flat_map(move |(a, b)| {
        let h = (b - a) / parts as f64;
        (0..parts).map(move |i| (a + i as f64 * h, if i + 1 == parts { b } else { a + (i + 1) as f64 * h }))
    })
}

fn graded(a: f64, b: f64, depth: usize, ratio: f64, toward_a: bool) -> Vec<(f64, f64)> {
    let len = b - a;
    // breakpoints at distances len·ratio^k from the graded end
    let mut d: Vec<f64> = (0..=depth).map(|k| len * ratio.powi(k as i32)).collect();
    d.push(0.0);
    let mut out: Vec<(f64, f64)> = d.windows(2).map(|w| (w[1], w[0])).collect();
    if toward_a {
        out.iter_mut().for_each(|p| *p = (a + p.0, a + p.1));
        out.reverse();
    } else {
        out.iter_mut().for_each(|p| *p = (b - p.1, b - p.0));
    }
    out
}

/// A quadrature node on a contour: position `λ` and weight `w·λ′(t)`.
#[derive(Clone, Copy, Debug)]
pub struct ContourNode {
    pub z: C64,
    pub w: C64,
}

fn unimodular(z: C64) -> bool {
    (z.norm() - 1.0).abs() <= UNIMODULAR_TOL
}

/// Nodes for `∮ f(λ) dλ` at a refinement level, in fixed piece order.
pub fn contour_nodes(contour: &PiecewiseContour, level: usize, cfg: &QuadConfig) -> Vec<ContourNode> {
    let g = rule(cfg.gauss_order);
    let mut out = Vec::new();
    for piece in &contour.pieces {
        let (gs, ge) = if contour.graded {
            (unimodular(piece.start()), unimodular(piece.end()))
        } else {
            (false, false)
        };
        piece_nodes(piece, &panels(gs, ge, level, cfg.vertex_grading_ratio), &g, &mut out);
    }
    out
}

/// Nodes for a single piece over the given panels.
pub fn piece_nodes(piece: &Piece, panels: &[(f64, f64)], g: &GaussRule, out: &mut Vec<ContourNode>) {
    for &(a, b) in panels {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            let t = mid + half * x;
            out.push(ContourNode { z: piece.point(t), w: piece.derivative(t) * (w * half) });
        }
    }
}

/// Adaptive Gauss–Legendre for a complex integrand on `[a, b]`: a panel is accepted when
/// the one-panel and two-half-panel values agree to `tol` (scaled by the panel share).
pub fn adaptive<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, tol: f64) -> (C64, f64) {
    fn gl<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> C64 {
        let g = gauss16();
        let (h, m) = (0.5 * (b - a), 0.5 * (a + b));
        g.nodes.iter().zip(&g.weights).map(|(x, w)| f(m + h * x) * *w).sum::<C64>() * h
    }
    fn rec<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, whole: C64, tol: f64, depth: usize) -> (C64, f64) {
        let m = 0.5 * (a + b);
        let (l, r) = (gl(f, a, m), gl(f, m, b));
        let err = (l + r - whole).norm();
        // stop once the two estimates agree to rounding
        let floor = 64.0 * f64::EPSILON * (l.norm() + r.norm());
        if err <= tol || err <= floor || !err.is_finite() || depth >= 50 {
            return (l + r, err);
        }
        let (vl, el) = rec(f, a, m, l, 0.5 * tol, depth + 1);
        let (vr, er) = rec(f, m, b, r, 0.5 * tol, depth + 1);
        (vl + vr, el + er)
    }
    rec(f, a, b, gl(f, a, b), tol, 0)
}

/// `∫_piece f(λ) dλ` adaptively.
pub fn adaptive_piece<F: Fn(C64) -> C64>(piece: &Piece, f: &F, tol: f64) -> (C64, f64) {
    adaptive(&|t| f(piece.point(t)) * piece.derivative(t), 0.0, 1.0, tol)
}

/// `∫_piece f(λ) |dλ|` adaptively, for real integrands.
pub fn adaptive_piece_abs<F: Fn(C64) -> f64>(piece: &Piece, f: &F, tol: f64) -> (f64, f64) {
    let (v, e) = adaptive(&|t| C64::new(f(piece.point(t)) * piece.derivative(t).norm(), 0.0), 0.0, 1.0, tol);
    (v.re, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::domains::unit_circle;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let g = gauss16();
        assert!((g.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        for k in 0..32usize {
            let v: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((v - exact).abs() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn other_orders() {
        for n in [1, 2, 5, 7] {
            let g = gauss_legendre(n);
            let v: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(2 * n as i32 - 2)).sum();
            assert!((v - 2.0 / (2.0 * n as f64 - 1.0)).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn graded_panels_tile_interval() {
        for (gs, ge) in [(false, false), (true, false), (false, true), (true, true)] {
            for level in 0..4 {
                let p = panels(gs, ge, level, 0.5);
                assert_eq!(p[0].0, 0.0);
                assert_eq!(p.last().unwrap().1, 1.0);
                for w in p.windows(2) {
                    assert_eq!(w[0].1, w[1].0);
                    assert!(w[0].0 < w[0].1);
                }
            }
        }
    }

    #[test]
    fn cauchy_on_circle() {
        let nodes = contour_nodes(&unit_circle(), 2, &QuadConfig::default());
        let z0 = c64(0.3, -0.2);
        let v: C64 = nodes.iter().map(|n| n.w / (n.z - z0)).sum();
        assert!((v - c64(0.0, std::f64::consts::TAU)).norm() < 1e-12);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let (v, _) = adaptive(&|t: f64| c64(t.powf(-0.5), 0.0), 0.0, 1.0, 1e-12);
        // the depth cap leaves a panel of width 2⁻⁵⁰ at the singularity, worth about 2⁻²⁵ of mass
        assert!((v.re - 2.0).abs() < 1e-8, "{}", v.re - 2.0);
    }
}
