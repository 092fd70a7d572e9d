use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::calculus::{seifert_q, BivariatePolynomial};
use crate::classify::resolvent::{resolvent_constant, SamplerConfig};
use crate::domains::PeripheralSet;
use crate::linalg::{op_norm_with, power_and_difference_bounds_with, ComplexMatrix, NormConfig, POWER_CAP};
use crate::{Error, Result, C64};

/// Constant chain for the resolvent bound recovered from power estimates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PowerCertificate {
    pub c0: f64,
    pub c1: f64,
    /// `sup_{|λ|≤2} ‖Q(λ,T)‖`.
    pub c_q: f64,
    pub c_q_argmax: C64,
    /// `2c₀(2c₁ + 3ᴺ + c_Q)`.
    pub apriori_bound: f64,
    pub c_hat: f64,
    pub nmax: usize,
    /// Log–log slope of `‖Tⁿ‖` over the upper half of `0..=Nmax`.
    pub c0_slope: f64,
    /// `‖Tⁿ‖` grows at least linearly.
    pub growth_flag: bool,
    pub bound_holds: bool,
}

/// Slope at which power growth is flagged.
pub const GROWTH_SLOPE: f64 = 0.9;

pub fn q_norm(q: &BivariatePolynomial, t: &ComplexMatrix, lambda: C64, p: f64, cfg: &NormConfig) -> f64 {
    op_norm_with(&q.eval_matrix(lambda, t), p, cfg).value
}

/// Maximizes `‖Q(λ,T)‖` over a polar grid of about 10³ points on `D(0,2)` and refines the
/// best point by golden-section search along the circle through it.
pub fn c_q(q: &BivariatePolynomial, t: &ComplexMatrix, p: f64, cfg: &NormConfig) -> (f64, C64) {
    let (nr, na) = (10, 100);
    let mut best = (q_norm(q, t, C64::new(0.0, 0.0), p, cfg), C64::new(0.0, 0.0));
    for i in 1..=nr {
        let r = 2.0 * i as f64 / nr as f64;
        for k in 0..na {
            let z = C64::from_polar(r, -PI + TAU * k as f64 / na as f64);
            let v = q_norm(q, t, z, p, cfg);
            if v > best.0 {
                best = (v, z);
            }
        }
    }
    let r = best.1.norm();
    if r == 0.0 {
        return best;
    }
    let h = TAU / na as f64;
    let f = |a: f64| q_norm(q, t, C64::from_polar(r, a), p, cfg);
    let (mut a, mut b) = (best.1.arg() - h, best.1.arg() + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..40 {
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
    for (v, x) in [(f1, x1), (f2, x2)] {
        if v > best.0 {
            best = (v, C64::from_polar(r, x));
        }
    }
    best
}

pub fn power_certificate(t: &ComplexMatrix, e: &PeripheralSet, p: f64, nmax: usize) -> Result<PowerCertificate> {
    power_certificate_with(t, e, p, nmax, &SamplerConfig { p, ..SamplerConfig::default() })
}

pub fn power_certificate_with(
    t: &ComplexMatrix,
    e: &PeripheralSet,
    p: f64,
    nmax: usize,
    sampler: &SamplerConfig,
) -> Result<PowerCertificate> {
    let norm = NormConfig { seed: sampler.seed, ..NormConfig::default() };
    let bounds = match power_and_difference_bounds_with(t, e, p, nmax, &norm) {
        Ok(b) => b,
        Err(Error::Overflow(msg)) => return Err(Error::DivergentSequences(msg)),
        Err(err) => return Err(err),
    };
    if bounds.c0_hat > POWER_CAP || bounds.c1_hat > POWER_CAP {
        return Err(Error::DivergentSequences(format!(
            "c0 = {:e}, c1 = {:e} within Nmax = {nmax}",
            bounds.c0_hat, bounds.c1_hat
        )));
    }
    let q = seifert_q(e).q;
    let (cq, cq_at) = c_q(&q, t, p, &norm);
    let (c0, c1) = (bounds.c0_hat, bounds.c1_hat);
    let apriori_bound = 2.0 * c0 * (2.0 * c1 + 3f64.powi(e.len() as i32) + cq);
    let c_hat = resolvent_constant(t, e, &SamplerConfig { p, ..*sampler })?.c_hat;
    let c0_slope = bounds.power_growth_slope();
    Ok(PowerCertificate {
        c0,
        c1,
        c_q: cq,
        c_q_argmax: cq_at,
        apriori_bound,
        c_hat,
        nmax,
        c0_slope,
        growth_flag: c0_slope >= GROWTH_SLOPE,
        bound_holds: c_hat <= apriori_bound * (1.0 + 1e-2),
    })
}
