use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Oriented segment or circular arc, parametrized over `t ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Piece {
    Segment { a: C64, b: C64 },
    /// Arc of the circle `|z − center| = radius` from angle `start`, turning by the signed `sweep`.
    Arc { center: C64, radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    pub fn point(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { a, b } => a + (b - a) * t,
            Piece::Arc { center, radius, start, sweep } => center + C64::from_polar(radius, start + sweep * t),
        }
    }

    /// `dz/dt`.
    pub fn derivative(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { a, b } => b - a,
            Piece::Arc { radius, start, sweep, .. } => {
                C64::from_polar(radius * sweep, start + sweep * t) * C64::new(0.0, 1.0)
            }
        }
    }

    pub fn start(&self) -> C64 {
        match *self {
            Piece::Segment { a, .. } => a,
            _ => self.point(0.0),
        }
    }

    pub fn end(&self) -> C64 {
        match *self {
            Piece::Segment { b, .. } => b,
            _ => self.point(1.0),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { a, b } => (b - a).norm(),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment { a: b, b: a },
            Piece::Arc { center, radius, start, sweep } => {
                Piece::Arc { center, radius, start: start + sweep, sweep: -sweep }
            }
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64 + Copy, rotation: f64) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment { a: f(a), b: f(b) },
            Piece::Arc { center, radius, start, sweep } => {
                Piece::Arc { center: f(center), radius, start: start + rotation, sweep }
            }
        }
    }

    /// Distance from `z` to the piece.
    pub fn distance(&self, z: C64) -> f64 {
        match *self {
            Piece::Segment { a, b } => {
                let d = b - a;
                let l2 = d.norm_sqr();
                let t = if l2 == 0.0 { 0.0 } else { ((z - a) * d.conj()).re / l2 };
                (z - self.point(t.clamp(0.0, 1.0))).norm()
            }
            Piece::Arc { center, radius, start, sweep } => {
                let w = z - center;
                let phi = w.arg();
                let rel = if sweep >= 0.0 {
                    (phi - start).rem_euclid(TAU)
                } else {
                    (start - phi).rem_euclid(TAU)
                };
                if rel <= sweep.abs() {
                    (w.norm() - radius).abs()
                } else {
                    (z - self.start()).norm().min((z - self.end()).norm())
                }
            }
        }
    }

    fn turning(&self) -> f64 {
        match *self {
            Piece::Segment { .. } => 0.0,
            Piece::Arc { sweep, .. } => sweep,
        }
    }
}

/// Closed oriented path made of segments and arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseContour {
    pub pieces: Vec<Piece>,
    /// Set when some piece endpoint lies on the unit circle; quadrature grades toward those points.
    pub graded: bool,
}

impl PiecewiseContour {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput("contour needs at least one piece".into()));
        }
        let scale = pieces.iter().map(|p| p.start().norm()).fold(1.0, f64::max);
        for (i, p) in pieces.iter().enumerate() {
            let next = &pieces[(i + 1) % pieces.len()];
            let gap = (p.end() - next.start()).norm();
            if gap > 1e-12 * scale {
                return Err(Error::InvalidInput(format!("contour not closed after piece {i} (gap {gap:e})")));
            }
        }
        let graded = pieces.iter().any(|p| is_unimodular(p.start()) || is_unimodular(p.end()));
        Ok(Self { pieces, graded })
    }

    pub fn reversed(&self) -> Self {
        Self { pieces: self.pieces.iter().rev().map(|p| p.reversed()).collect(), graded: self.graded }
    }

    pub fn oriented(self, o: Orientation) -> Self {
        match o {
            Orientation::Ccw => self,
            Orientation::Cw => self.reversed(),
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.pieces.iter().map(|p| p.distance(z)).fold(f64::INFINITY, f64::min)
    }

    /// Piece endpoints lying on the unit circle.
    pub fn unimodular_vertices(&self) -> Vec<C64> {
        let mut v: Vec<C64> = Vec::new();
        for p in &self.pieces {
            for z in [p.start(), p.end()] {
                if is_unimodular(z) && !v.iter().any(|w| (w - z).norm() < 1e-12) {
                    v.push(z);
                }
            }
        }
        v
    }

    /// Total turning of the tangent: arc sweeps plus exterior angles at the joins.
    pub fn total_turning(&self) -> f64 {
        let n = self.pieces.len();
        let mut total = 0.0;
        for i in 0..n {
            let p = &self.pieces[i];
            let q = &self.pieces[(i + 1) % n];
            total += p.turning();
            let a = p.derivative(1.0);
            let b = q.derivative(0.0);
            if a.norm() > 0.0 && b.norm() > 0.0 {
                total += (b / a).arg();
            }
        }
        total
    }

    /// Winding number about `z`, by accumulating argument increments on a path
    /// subdivision fine enough relative to the distance to `z`.
    pub fn winding_number(&self, z: C64) -> f64 {
        fn walk(p: &Piece, z: C64, t0: f64, t1: f64, depth: usize) -> f64 {
            let (a, b) = (p.point(t0) - z, p.point(t1) - z);
            let step = (b - a).norm();
            if depth < 40 && step > 0.25 * a.norm().min(b.norm()) {
                let m = 0.5 * (t0 + t1);
                return walk(p, z, t0, m, depth + 1) + walk(p, z, m, t1, depth + 1);
            }
            (b / a).arg()
        }
        let total: f64 = self
            .pieces
            .iter()
            .map(|p| (0..16).map(|k| walk(p, z, k as f64 / 16.0, (k + 1) as f64 / 16.0, 0)).sum::<f64>())
            .sum();
        total / TAU
    }

    /// Polyline approximation with `per_piece` points per piece.
    pub fn sample(&self, per_piece: usize) -> Vec<C64> {
        self.pieces
            .iter()
            .flat_map(|p| (0..per_piece).map(move |k| p.point(k as f64 / per_piece as f64)))
            .collect()
    }

    /// No two non-adjacent chords of the sampled polyline cross.
    pub fn is_simple(&self, per_piece: usize) -> bool {
        let pts = self.sample(per_piece);
        let m = pts.len();
        for i in 0..m {
            for j in i + 2..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                if segments_cross(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m]) {
                    return false;
                }
            }
        }
        true
    }
}

fn cross(u: C64, v: C64) -> f64 {
    u.re * v.im - u.im * v.re
}

fn segments_cross(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

pub(crate) fn is_unimodular(z: C64) -> bool {
    (z.norm() - 1.0).abs() <= 1e-12
}

/// Counterclockwise angle from `a` to `b`, in `[0, 2π)`.
pub(crate) fn ccw_angle(a: f64, b: f64) -> f64 {
    (b - a).rem_euclid(TAU)
}

/// Unit circle as a single counterclockwise arc.
pub fn unit_circle() -> PiecewiseContour {
    PiecewiseContour::new(vec![Piece::Arc { center: C64::new(0.0, 0.0), radius: 1.0, start: -PI, sweep: TAU }])
        .expect("closed")
}
