use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{mat_poly, op_norm_with, ComplexMatrix, NormConfig, Polynomial};
use crate::{Error, Result};

/// Power sequence ceiling; beyond it the sequence is treated as divergent.
pub const POWER_CAP: f64 = 1e15;

const ROUNDING_FACTOR: f64 = 64.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PowerBounds {
    /// `max_{0≤n≤N} ‖Tⁿ‖`.
    pub c0_hat: f64,
    /// `max_{1≤n≤N} n‖Tⁿ⁻¹∏(ξⱼ−T)‖`.
    pub c1_hat: f64,
    /// `‖Tⁿ‖` for `n = 0..=N`.
    pub power_norms: Vec<f64>,
    /// `n‖Tⁿ⁻¹∏(ξⱼ−T)‖` for `n = 1..=N` (index `n−1`).
    pub difference_norms: Vec<f64>,
}

impl PowerBounds {
    /// Log–log slope of `‖Tⁿ‖` over the upper half of the range.
    pub fn power_growth_slope(&self) -> f64 {
        let n = self.power_norms.len() - 1;
        log_log_slope(&self.power_norms, (n / 2).max(1), n)
    }
}

/// Least-squares slope of `log y[n]` against `log n` for `n ∈ [from, to]`.
pub fn log_log_slope(y: &[f64], from: usize, to: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (from.max(1)..=to.min(y.len() - 1))
        .filter(|&n| y[n] > 0.0)
        .map(|n| ((n as f64).ln(), y[n].ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn power_and_difference_bounds(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    p: f64,
    nmax: usize,
) -> Result<PowerBounds> {
    power_and_difference_bounds_with(t, e, p, nmax, &NormConfig::default())
}

/// Iterates `Tⁿ` by repeated multiplication, so defective `T` is handled correctly.
pub fn power_and_difference_bounds_with(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    p: f64,
    nmax: usize,
    cfg: &NormConfig,
) -> Result<PowerBounds> {
    if nmax < 1 {
        return Err(Error::InvalidInput("Nmax must be at least 1".into()));
    }
    let mut v = mat_poly(&Polynomial::vanishing(e.points()), t);
    // below the rounding level of its own evaluation, ∏(ξⱼ−T) is zero; otherwise the weight n
    // turns that rounding into a linearly growing c1
    let tn = t.norm_fro();
    let floor = ROUNDING_FACTOR * t.dim() as f64 * f64::EPSILON * e.points().iter().map(|_| tn + 1.0).product::<f64>();
    if v.norm_fro() <= floor {
        v = ComplexMatrix::zeros(t.dim());
    }
    let norm = |m: &ComplexMatrix| op_norm_with(m, p, cfg).value;
    let mut pw = ComplexMatrix::identity(t.dim());
    let mut power_norms = vec![norm(&pw)];
    let mut difference_norms = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        difference_norms.push(n as f64 * norm(&pw.matmul(&v)));
        pw = pw.matmul(t);
        let pn = norm(&pw);
        if !pn.is_finite() || pn > POWER_CAP {
            return Err(Error::Overflow(format!("‖T^{n}‖ = {pn:e} exceeds {POWER_CAP:e}")));
        }
        power_norms.push(pn);
    }
    let c0_hat = power_norms.iter().copied().fold(0.0, f64::max);
    let c1_hat = difference_norms.iter().copied().fold(0.0, f64::max);
    Ok(PowerBounds { c0_hat, c1_hat, power_norms, difference_norms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn vanishing_factor_kills_c1() {
        let xi = c64(0.6, 0.8);
        let e = PeripheralSet::new(vec![xi]).unwrap();
        let t = ComplexMatrix::identity(2).scale(xi);
        let b = power_and_difference_bounds(&t, &e, 2.0, 20).unwrap();
        assert_eq!(b.c1_hat, 0.0);
        assert!((b.c0_hat - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rounding_in_the_vanishing_factor_is_not_amplified() {
        // similar to diag(ξ₁, ξ₂) = E, so Tⁿ∏(ξⱼ−T) = 0 although the product rounds
        let e = PeripheralSet::from_angles(&[0.4, 2.9]).unwrap();
        let s = ComplexMatrix::from_rows(&[vec![c64(1.0, 0.0), c64(0.3, 0.1)], vec![c64(0.2, -0.7), c64(1.0, 0.0)]]).unwrap();
        let d = ComplexMatrix::from_diag(e.points());
        let t = s.matmul(&d).matmul(&crate::linalg::inverse(&s).unwrap());
        let a = power_and_difference_bounds(&t, &e, 2.0, 200).unwrap();
        let b = power_and_difference_bounds(&t, &e, 2.0, 400).unwrap();
        assert_eq!(a.c1_hat, 0.0);
        assert_eq!(b.c1_hat, 0.0);
    }

    #[test]
    fn identity_at_one() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let b = power_and_difference_bounds(&ComplexMatrix::identity(3), &e, 2.0, 10).unwrap();
        assert!((b.c0_hat - 1.0).abs() < 1e-12);
        assert_eq!(b.c1_hat, 0.0);
    }

    #[test]
    fn jordan_grows_linearly() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let j = ComplexMatrix::jordan(c64(1.0, 0.0), 2);
        let b = power_and_difference_bounds(&j, &e, 2.0, 200).unwrap();
        // ‖[[1,n],[0,1]]‖₂ = (n + √(n²+4))/2
        let closed = |n: f64| (n + (n * n + 4.0).sqrt()) / 2.0;
        for n in [1usize, 50, 200] {
            assert!((b.power_norms[n] - closed(n as f64)).abs() < 1e-8 * closed(n as f64));
        }
        assert!(b.c0_hat >= 100.0);
        assert!(b.power_growth_slope() > 0.9);
    }

    #[test]
    fn slope_of_pure_powers() {
        let y: Vec<f64> = (0..100).map(|n| (n as f64).powf(1.5)).collect();
        assert!((log_log_slope(&y, 10, 99) - 1.5).abs() < 1e-12);
    }
}
