use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::vec_norm_p;
use crate::{seeded_rng, Error, Result, C64};

/// Largest family size enumerated exactly.
pub const MAX_EXACT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadMode {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadSample {
    pub vectors: Vec<Vec<C64>>,
    pub p: f64,
    pub mode: RadMode,
    pub mc_trials: usize,
    pub seed: u64,
}

impl RadSample {
    pub fn exact(vectors: Vec<Vec<C64>>, p: f64) -> Self {
        Self { vectors, p, mode: RadMode::Exact, mc_trials: 0, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RadNorm {
    pub value: f64,
    /// Zero in exact mode.
    pub stderr: f64,
}

/// `(E‖Σ εᵢxᵢ‖_p²)^{1/2}`.
pub fn rademacher_norm(sample: &RadSample) -> Result<RadNorm> {
    let n = sample.vectors.len();
    if n == 0 {
        return Ok(RadNorm { value: 0.0, stderr: 0.0 });
    }
    let d = sample.vectors[0].len();
    if sample.vectors.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidInput("vectors differ in dimension".into()));
    }
    match sample.mode {
        RadMode::Exact => {
            if n > MAX_EXACT {
                return Err(Error::TooManyExact(n));
            }
            Ok(RadNorm { value: exact_mean_square(&sample.vectors, sample.p).sqrt(), stderr: 0.0 })
        }
        RadMode::MonteCarlo => {
            let trials = sample.mc_trials.max(2);
            let mut rng = seeded_rng(sample.seed);
            let mut s = vec![C64::new(0.0, 0.0); d];
            let (mut m, mut m2) = (0.0, 0.0);
            for _ in 0..trials {
                s.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                for v in &sample.vectors {
                    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                    for (a, b) in s.iter_mut().zip(v) {
                        *a += b * sign;
                    }
                }
                let q = vec_norm_p(&s, sample.p).powi(2);
                m += q;
                m2 += q * q;
            }
            let t = trials as f64;
            let mean = m / t;
            let var = ((m2 / t - mean * mean) * t / (t - 1.0)).max(0.0);
            let se_mean = (var / t).sqrt();
            let value = mean.sqrt();
            // delta method for the square root
            let stderr = if value > 0.0 { se_mean / (2.0 * value) } else { 0.0 };
            Ok(RadNorm { value, stderr })
        }
    }
}

/// Mean of `‖Σ±xᵢ‖_p²` over sign patterns with the first sign fixed, walked in Gray-code order.
pub fn exact_mean_square(vectors: &[Vec<C64>], p: f64) -> f64 {
    let n = vectors.len();
    let d = vectors[0].len();
    let mut signs = vec![1.0; n];
    let mut s: Vec<C64> = (0..d).map(|k| vectors.iter().map(|v| v[k]).sum()).collect();
    let mut total = vec_norm_p(&s, p).powi(2);
    let patterns = 1usize << (n - 1);
    for g in 1..patterns {
        // bit that flips between gray(g−1) and gray(g), applied to vectors 1..n
        let i = g.trailing_zeros() as usize + 1;
        signs[i] = -signs[i];
        let f = 2.0 * signs[i];
        for (a, b) in s.iter_mut().zip(&vectors[i]) {
            *a += b * f;
        }
        total += vec_norm_p(&s, p).powi(2);
    }
    total / patterns as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::random::random_in_disc;
    use crate::linalg::vec_norm2;

    fn vecs(n: usize, d: usize, seed: u64) -> Vec<Vec<C64>> {
        let mut rng = seeded_rng(seed);
        (0..n).map(|_| (0..d).map(|_| random_in_disc(&mut rng, 1.0)).collect()).collect()
    }

    /// Direct enumeration over all `2ⁿ` patterns.
    fn brute(v: &[Vec<C64>], p: f64) -> f64 {
        let n = v.len();
        let mut t = 0.0;
        for mask in 0..(1usize << n) {
            let s: Vec<C64> = (0..v[0].len())
                .map(|k| (0..n).map(|i| if mask >> i & 1 == 1 { v[i][k] } else { -v[i][k] }).sum())
                .collect();
            t += vec_norm_p(&s, p).powi(2);
        }
        (t / (1usize << n) as f64).sqrt()
    }

    #[test]
    fn single_vector() {
        let v = vecs(1, 5, 1);
        let r = rademacher_norm(&RadSample::exact(v.clone(), 3.0)).unwrap();
        assert!((r.value - vec_norm_p(&v[0], 3.0)).abs() < 1e-14);
    }

    #[test]
    fn hilbert_square_sum() {
        let v = vecs(8, 6, 2);
        let want = v.iter().map(|x| vec_norm2(x).powi(2)).sum::<f64>().sqrt();
        let r = rademacher_norm(&RadSample::exact(v.clone(), 2.0)).unwrap();
        assert!((r.value - want).abs() < 1e-12 * want);
        assert!((brute(&v, 2.0) - want).abs() < 1e-12 * want);
    }

    #[test]
    fn gray_code_matches_brute_force() {
        for p in [1.3, 3.0] {
            let v = vecs(7, 4, 3);
            let r = rademacher_norm(&RadSample::exact(v.clone(), p)).unwrap().value;
            assert!((r - brute(&v, p)).abs() < 1e-12 * r);
        }
    }

    #[test]
    fn opposite_pair() {
        let x = vec![c64(1.0, 0.5), c64(-0.2, 0.0)];
        let y: Vec<C64> = x.iter().map(|z| -z).collect();
        let r = rademacher_norm(&RadSample::exact(vec![x.clone(), y], 1.7)).unwrap();
        assert!((r.value - 2f64.sqrt() * vec_norm_p(&x, 1.7)).abs() < 1e-14);
    }

    #[test]
    fn too_many() {
        let v = vecs(21, 2, 4);
        assert_eq!(rademacher_norm(&RadSample::exact(v, 2.0)).unwrap_err(), Error::TooManyExact(21));
    }

    #[test]
    fn monte_carlo_within_three_stderr() {
        for (n, seed) in [(4, 1), (8, 2), (12, 3)] {
            let v = vecs(n, 5, seed);
            let exact = rademacher_norm(&RadSample::exact(v.clone(), 3.0)).unwrap().value;
            let mc = rademacher_norm(&RadSample { vectors: v, p: 3.0, mode: RadMode::MonteCarlo, mc_trials: 4000, seed }).unwrap();
            assert!((mc.value - exact).abs() <= 3.0 * mc.stderr, "{} {} {}", mc.value, exact, mc.stderr);
        }
    }
}
