use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{singular_values, vec_norm2, vec_norm_p, ComplexMatrix};
use crate::{seeded_rng, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Exact,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug)]
pub struct NormConfig {
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        Self { restarts: 8, max_iter: 500, tol: 1e-12, seed: 0 }
    }
}

/// Spectral norm `‖T‖₂`.
///
/// Power iteration on `T*T`, stopped on the eigen-residual; falls back to a
/// Jacobi SVD when the top of the spectrum is too clustered to converge.
pub fn norm2(t: &ComplexMatrix) -> f64 {
    let n = t.dim();
    let mut v: Vec<C64> = (0..n)
        .map(|k| {
            let u = (k as f64 + 1.0) * 0.618_033_988_749_895;
            C64::from_polar(1.0 + u.fract(), 2.0 * std::f64::consts::PI * (u * 1.7).fract())
        })
        .collect();
    let nv = vec_norm2(&v);
    v.iter_mut().for_each(|z| *z /= nv);
    for _ in 0..500 {
        let w = t.matvec_adjoint(&t.matvec(&v));
        let lam: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        let nw = vec_norm2(&w);
        if nw == 0.0 {
            break;
        }
        let res = w.iter().zip(&v).map(|(a, b)| (a - b * lam).norm_sqr()).sum::<f64>().sqrt();
        if res <= 1e-11 * lam {
            let direct = vec_norm2(&t.matvec(&v));
            return direct.max(lam.max(0.0).sqrt());
        }
        v = w.into_iter().map(|z| z / nw).collect();
    }
    singular_values(t)[0]
}

pub fn op_norm(t: &ComplexMatrix, p: f64) -> NormEstimate {
    op_norm_with(t, p, &NormConfig::default())
}

/// Operator norm on ℓᵖ. Exact for `p ∈ {1, 2, ∞}` and for entrywise nonnegative
/// matrices; a lower bound from restarted nonlinear power iteration otherwise.
pub fn op_norm_with(t: &ComplexMatrix, p: f64, cfg: &NormConfig) -> NormEstimate {
    let exact = |value| NormEstimate { value, certificate: Certificate::Exact };
    if (p - 2.0).abs() < 1e-15 {
        return exact(norm2(t));
    }
    if p == 1.0 {
        return exact(t.norm_1());
    }
    if p.is_infinite() {
        return exact(t.norm_inf());
    }
    assert!(p > 1.0, "p must exceed 1");
    let n = t.dim();
    if t.is_nonnegative() {
        let starts: Vec<Vec<C64>> = std::iter::once(vec![C64::new(1.0, 0.0); n])
            .chain((0..cfg.restarts.min(4)).map(|k| {
                let mut rng = seeded_rng(cfg.seed.wrapping_add(k as u64));
                (0..n).map(|_| C64::new(rng.random_range(0.1..1.0), 0.0)).collect()
            }))
            .collect();
        let best = starts
            .into_par_iter()
            .map(|x| power_method(t, p, x, cfg))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max);
        return exact(best);
    }
    let mut starts: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0); n]];
    // columns with the largest ℓᵖ mass are natural seeds
    let mut col_mass: Vec<(usize, f64)> = (0..n)
        .map(|j| (j, vec_norm_p(&(0..n).map(|i| t[(i, j)]).collect::<Vec<_>>(), p)))
        .collect();
    col_mass.sort_by(|a, b| b.1.total_cmp(&a.1));
    for &(j, _) in col_mass.iter().take(2) {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        starts.push(e);
    }
    for k in 0..cfg.restarts {
        let mut rng = seeded_rng(cfg.seed.wrapping_add(1000 + k as u64));
        starts.push(
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    C64::new(re, im)
                })
                .collect(),
        );
    }
    let best = starts
        .into_par_iter()
        .map(|x| power_method(t, p, x, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    NormEstimate { value: best, certificate: Certificate::Lower }
}

/// Duality map: `w` with `‖w‖_{p'} = 1` and `⟨y, w⟩ = ‖y‖_p`.
fn dual(y: &[C64], p: f64) -> Vec<C64> {
    let m = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return vec![C64::new(0.0, 0.0); y.len()];
    }
    let q = p / (p - 1.0);
    let w: Vec<C64> = y
        .iter()
        .map(|z| {
            let a = z.norm();
            if a == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                z / a * (a / m).powf(p - 1.0)
            }
        })
        .collect();
    let nw = vec_norm_p(&w, q);
    w.into_iter().map(|z| z / nw).collect()
}

/// Higham's ℓᵖ power method: monotone ascent of `‖Tx‖_p/‖x‖_p`.
fn power_method(t: &ComplexMatrix, p: f64, x: Vec<C64>, cfg: &NormConfig) -> f64 {
    power_method_vec(t, p, x, cfg).0
}

/// As [`power_method`], also returning the unit vector that attained the value.
fn power_method_vec(t: &ComplexMatrix, p: f64, mut x: Vec<C64>, cfg: &NormConfig) -> (f64, Vec<C64>) {
    let q = p / (p - 1.0);
    let nx = vec_norm_p(&x, p);
    if nx == 0.0 {
        return (0.0, x);
    }
    x.iter_mut().for_each(|z| *z /= nx);
    let mut best = 0.0f64;
    let mut arg = x.clone();
    for _ in 0..cfg.max_iter {
        let y = t.matvec(&x);
        let gamma = vec_norm_p(&y, p);
        let prev = best;
        if gamma > best {
            best = gamma;
            arg = x.clone();
        }
        if gamma == 0.0 {
            break;
        }
        let z = t.matvec_adjoint(&dual(&y, p));
        let zq = vec_norm_p(&z, q);
        let zx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
        if zq <= zx * (1.0 + cfg.tol) || (gamma - prev).abs() <= cfg.tol * gamma && prev > 0.0 {
            break;
        }
        x = dual(&z, q);
    }
    (best, arg)
}

/// A unit vector `x` (in ℓᵖ) with `‖Tx‖_p` as large as the restarted power method finds.
pub fn norm_maximizer(t: &ComplexMatrix, p: f64, cfg: &NormConfig) -> (f64, Vec<C64>) {
    let n = t.dim();
    let mut starts: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0); n]];
    for k in 0..cfg.restarts {
        let mut rng = seeded_rng(cfg.seed.wrapping_add(1000 + k as u64));
        starts.push(
            (0..n)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    C64::new(re, im)
                })
                .collect(),
        );
    }
    let mut best = (0.0, starts[0].clone());
    for x in starts {
        let r = power_method_vec(t, p, x, cfg);
        if r.0 > best.0 {
            best = r;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::random_matrix;

    #[test]
    fn identity_every_p() {
        for p in [1.0001, 1.5, 2.0, 3.0, 7.0] {
            let e = op_norm(&ComplexMatrix::identity(4), p);
            assert!((e.value - 1.0).abs() < 1e-12);
            assert_eq!(e.certificate, Certificate::Exact);
        }
    }

    #[test]
    fn diagonal_attains_on_basis() {
        let d = ComplexMatrix::from_diag(&[c64(0.3, 0.4), c64(-0.9, 0.0), c64(0.0, 0.1)]);
        for p in [1.3, 2.0, 4.0] {
            let e = op_norm(&d, p);
            assert!((e.value - 0.9).abs() < 1e-9, "p = {p}: {}", e.value);
        }
    }

    #[test]
    fn near_one_limit_is_column_sum() {
        let t = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let e = op_norm(&t, 1.0001);
        assert!((e.value - 2.0).abs() < 1e-2, "{}", e.value);
        assert_eq!(e.certificate, Certificate::Exact);
    }

    #[test]
    fn norm2_matches_svd() {
        for seed in 0..10 {
            let a = random_matrix(8, seed, 1.0);
            let s = singular_values(&a)[0];
            assert!((norm2(&a) - s).abs() <= 1e-10 * s);
        }
    }

    #[test]
    fn general_p_is_lower_bound_of_exact_bound() {
        // Riesz–Thorin: ‖T‖_p ≤ ‖T‖₁^{1/p} ‖T‖_∞^{1−1/p}
        let a = random_matrix(6, 2, 1.0);
        for p in [1.5, 3.0] {
            let e = op_norm(&a, p);
            assert_eq!(e.certificate, Certificate::Lower);
            let rt = a.norm_1().powf(1.0 / p) * a.norm_inf().powf(1.0 - 1.0 / p);
            assert!(e.value <= rt * (1.0 + 1e-12));
            assert!(e.value >= a.max_abs() * (1.0 - 1e-12));
        }
    }

    #[test]
    fn nonnegative_matches_brute_force() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.2, 0.7], vec![0.5, 0.1]]).unwrap();
        let p = 3.0;
        let mut brute = 0.0f64;
        for k in 0..=20000 {
            let th = k as f64 / 20000.0 * std::f64::consts::FRAC_PI_2;
            let x = [c64(th.cos(), 0.0), c64(th.sin(), 0.0)];
            brute = brute.max(vec_norm_p(&a.matvec(&x), p) / vec_norm_p(&x, p));
        }
        let e = op_norm(&a, p);
        assert!((e.value - brute).abs() < 1e-7, "{} vs {}", e.value, brute);
    }
}
