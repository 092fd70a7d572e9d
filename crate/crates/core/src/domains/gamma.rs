use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::domains::contour::{Piece, PiecewiseContour};
use crate::domains::PeripheralSet;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaPieceKind {
    /// `γⱼ₋`: segment from the outer circle in toward `ξⱼ`.
    SegmentIn(usize),
    /// `γⱼ`: arc of radius `cos α / n` around `ξⱼ`.
    SmallArc(usize),
    /// `γⱼ₊`: segment from near `ξⱼ` back out to the outer circle.
    SegmentOut(usize),
    /// `γⱼ,ⱼ₊₁`: arc of `|z| = s` between the two touch points.
    OuterArc(usize),
}

/// The contour `Γₙ` with its piece labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaN {
    pub contour: PiecewiseContour,
    pub kinds: Vec<GammaPieceKind>,
    pub n: usize,
    pub n0: usize,
    /// `α = arcsin s`.
    pub alpha: f64,
    /// Radius `cos α / n` of the small arcs.
    pub small_radius: f64,
}

fn check(e: &PeripheralSet, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidInput(format!("s = {s} must lie in (0, 1)")));
    }
    let beta = s.acos();
    if e.len() > 1 && e.min_gap() <= 2.0 * beta {
        return Err(Error::Degenerate(format!(
            "angular gap {:.6} does not exceed 2·arccos s = {:.6}; no outer arc exists",
            e.min_gap(),
            2.0 * beta
        )));
    }
    Ok(beta)
}

/// Least `n ≥ 2` for which the small discs `D(ξⱼ, cos α/n)` are pairwise disjoint and
/// stay angularly clear of the neighbouring segment pairs, so the `4N` pieces do not cross.
pub fn gamma_n0(e: &PeripheralSet, s: f64) -> Result<usize> {
    let beta = check(e, s)?;
    let cos_a = s.asin().cos();
    let mut bound: f64 = 1.0;
    if e.len() > 1 {
        bound = bound.min(0.5 * e.min_separation());
        let clearance = e.min_gap() - beta;
        if clearance < FRAC_PI_2 {
            bound = bound.min(clearance.sin());
        }
    }
    let n = (cos_a / bound).floor() as usize + 1;
    Ok(n.max(2))
}

/// Builds `Γₙ`: per point `ξⱼ` the segments `γⱼ±` with endpoints
/// `ξⱼ(1 − (cos α/n)e^{∓iα})` and `ξⱼ(1 − cos α·e^{∓iα})`, the small arc around `ξⱼ`
/// swept counterclockwise by `2π − 2α`, and the outer arc on `|z| = s`.
pub fn gamma_n(e: &PeripheralSet, s: f64, n: usize) -> Result<GammaN> {
    let beta = check(e, s)?;
    let n0 = gamma_n0(e, s)?;
    if n < n0 {
        return Err(Error::NTooSmall { n, n0 });
    }
    let alpha = s.asin();
    let cos_a = alpha.cos();
    let rho = cos_a / n as f64;
    let one = C64::new(1.0, 0.0);
    let mut pieces = Vec::with_capacity(4 * e.len());
    let mut kinds = Vec::with_capacity(4 * e.len());
    for (j, &xi) in e.points().iter().enumerate() {
        let aj = xi.arg();
        let outer_in = C64::from_polar(s, aj - beta);
        let inner_in = xi * (one - C64::from_polar(rho, alpha));
        let inner_out = xi * (one - C64::from_polar(rho, -alpha));
        let outer_out = C64::from_polar(s, aj + beta);
        pieces.push(Piece::Segment { a: outer_in, b: inner_in });
        kinds.push(GammaPieceKind::SegmentIn(j));
        pieces.push(Piece::Arc {
            center: xi,
            radius: rho,
            start: aj + std::f64::consts::PI + alpha,
            sweep: std::f64::consts::TAU - 2.0 * alpha,
        });
        kinds.push(GammaPieceKind::SmallArc(j));
        pieces.push(Piece::Segment { a: inner_out, b: outer_out });
        kinds.push(GammaPieceKind::SegmentOut(j));
        pieces.push(Piece::Arc {
            center: C64::new(0.0, 0.0),
            radius: s,
            start: aj + beta,
            sweep: e.gap(j) - 2.0 * beta,
        });
        kinds.push(GammaPieceKind::OuterArc(j));
    }
    let contour = PiecewiseContour::new(pieces)?;
    Ok(GammaN { contour, kinds, n, n0, alpha, small_radius: rho })
}
