use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::domains::{ConvexPolygon, PeripheralSet, Piece};
use crate::linalg::Polynomial;
use crate::quad::adaptive_piece;
use crate::{Error, Result, C64};

/// Samples closer than this to a path are rejected.
pub const PATH_CLEARANCE: f64 = 1e-3;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CauchySplit {
    /// `values[i][k] = φᵢ(z_k)`.
    pub values: Vec<Vec<C64>>,
    pub paths: Vec<Vec<Piece>>,
}

impl CauchySplit {
    pub fn sum_at(&self, k: usize) -> C64 {
        self.values.iter().map(|v| v[k]).sum()
    }
}

/// `γᵢ = [dᵢ₋₁, ζᵢ] ∪ [ζᵢ, dᵢ]` for a polygon whose vertices alternate `ζ₁, d₁, ζ₂, d₂, …`.
pub fn split_paths(delta: &ConvexPolygon) -> Result<Vec<Vec<Piece>>> {
    let v = delta.vertices();
    if !v.len().is_multiple_of(2) {
        return Err(Error::InvalidInput("vertices must alternate between ζᵢ and dᵢ".into()));
    }
    let m = v.len() / 2;
    Ok((0..m)
        .map(|i| {
            let zeta = v[2 * i];
            let prev = v[(2 * i + v.len() - 1) % v.len()];
            let next = v[2 * i + 1];
            vec![Piece::Segment { a: prev, b: zeta }, Piece::Segment { a: zeta, b: next }]
        })
        .collect())
}

/// `φᵢ(z) = (1/2πi)∫_{γᵢ} φ(λ)/(λ − z) dλ` on arbitrary paths.
pub fn cauchy_split_paths(phi: &Polynomial, paths: Vec<Vec<Piece>>, z_samples: &[C64]) -> Result<CauchySplit> {
    for &z in z_samples {
        if paths.iter().flatten().any(|p| p.distance(z) < PATH_CLEARANCE) {
            return Err(Error::SampleOnPath);
        }
    }
    let k = C64::new(0.0, -0.5 / PI);
    let tol = 1e-14 * phi.coeff_norm().max(1.0);
    let values = paths
        .iter()
        .map(|path| {
            z_samples
                .iter()
                .map(|&z| {
                    let f = |l: C64| phi.eval(l) / (l - z);
                    path.iter().map(|p| adaptive_piece(p, &f, tol).0).sum::<C64>() * k
                })
                .collect()
        })
        .collect();
    Ok(CauchySplit { values, paths })
}

/// Cauchy splitting of `φ` along the polygon `Δ` of the construction.
pub fn cauchy_split(phi: &Polynomial, delta: &ConvexPolygon, e: &PeripheralSet, z_samples: &[C64]) -> Result<CauchySplit> {
    for (i, v) in delta.vertices().iter().enumerate() {
        let on_circle = (v.norm() - 1.0).abs() <= 1e-12;
        if on_circle && (i % 2 != 0 || e.nearest(*v).1 > 1e-12) {
            return Err(Error::InvalidInput(format!("unimodular vertex {v} is not a ζ in E")));
        }
    }
    cauchy_split_paths(phi, split_paths(delta)?, z_samples)
}
