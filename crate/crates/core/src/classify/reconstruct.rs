use serde::{Deserialize, Serialize};

use crate::calculus::integrate_resolvent;
use crate::domains::{gamma_n, GammaPieceKind, PeripheralSet};
use crate::linalg::{norm2, ComplexMatrix};
use crate::quad::{adaptive_piece_abs, QuadConfig};
use crate::{Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaResidual {
    pub n: usize,
    pub n0: usize,
    /// `‖(1/2πi)∮ λⁿR(λ,T)dλ − Tⁿ‖₂ / max(1, ‖Tⁿ‖₂)`.
    pub relative_residual: f64,
    pub error_estimate: f64,
    pub converged: bool,
    /// `∫_{Γₙ} |λ|ⁿ/∏|λ−ξⱼ| |dλ|`.
    pub weighted_integral: f64,
    /// `max_j n∫_{γⱼ} |λ|ⁿ⁻¹ |dλ|` over the small arcs.
    pub small_arc_quantity: f64,
    /// `n∫ |λ|ⁿ⁻¹ |dλ|` summed over the outer arcs.
    pub outer_arc_quantity: f64,
}

/// Recovers `Tⁿ` from the Cauchy integral over `Γₙ` and reports the two path integrals that
/// stay bounded in `n`.
pub fn gamma_n_reconstruction(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    s: f64,
    n_list: &[usize],
    cfg: &QuadConfig,
) -> Result<Vec<GammaResidual>> {
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let g = gamma_n(e, s, n)?;
        let f = move |z: C64| z.powi(n as i32);
        let res = integrate_resolvent(&g.contour, t, &[&f], cfg)?;
        let tn = t.powi(n as u32);
        let scale = 1f64.max(norm2(&tn));
        let relative_residual = norm2(&(&res.values[0] - &tn)) / scale;
        let mut weighted_integral = 0.0;
        let mut small_arc_quantity: f64 = 0.0;
        let mut outer_arc_quantity = 0.0;
        let nf = n as f64;
        for (piece, kind) in g.contour.pieces.iter().zip(&g.kinds) {
            let w = adaptive_piece_abs(piece, &|z: C64| z.norm().powi(n as i32) / e.vanishing_abs(z), 1e-12).0;
            weighted_integral += w;
            let q = || nf * adaptive_piece_abs(piece, &|z: C64| z.norm().powi(n as i32 - 1), 1e-12).0;
            match kind {
                GammaPieceKind::SmallArc(_) => small_arc_quantity = small_arc_quantity.max(q()),
                GammaPieceKind::OuterArc(_) => outer_arc_quantity += q(),
                _ => {}
            }
        }
        out.push(GammaResidual {
            n,
            n0: g.n0,
            relative_residual,
            error_estimate: res.error_estimates[0],
            converged: res.converged,
            weighted_integral,
            small_arc_quantity,
            outer_arc_quantity,
        });
    }
    Ok(out)
}
