//! Seeded random matrices used by tests, ensembles and benchmarks.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{inverse, ComplexMatrix};
use crate::{seeded_rng, C64};

/// Uniform point of the disc of the given radius.
pub fn random_in_disc<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Matrix with independent entries uniform in the disc of the given radius.
pub fn random_matrix(dim: usize, seed: u64, radius: f64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let data = (0..dim * dim).map(|_| random_in_disc(&mut rng, radius)).collect();
    ComplexMatrix::from_vec_unchecked(dim, data)
}

/// Complex Gaussian matrix.
pub fn gaussian_matrix<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect();
    ComplexMatrix::from_vec_unchecked(dim, data)
}

/// Haar-like unitary from Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<C64> = (0..dim).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for c in &cols {
                let d: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= d * y);
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Well-conditioned similarity `I + (κ/√d)·G` normalized; returns `(S, S⁻¹)`.
pub fn random_similarity<R: Rng>(rng: &mut R, dim: usize, strength: f64) -> (ComplexMatrix, ComplexMatrix) {
    loop {
        let g = gaussian_matrix(rng, dim).scale_real(strength / (dim as f64).sqrt());
        let s = g.shift(C64::new(1.0, 0.0));
        if let Ok(si) = inverse(&s) {
            if si.max_abs() < 1e3 {
                return (s, si);
            }
        }
    }
}

/// `S·diag(d)·S⁻¹` with a random well-conditioned `S`.
pub fn diagonalizable_with<R: Rng>(rng: &mut R, diag: &[C64], strength: f64) -> ComplexMatrix {
    let (s, si) = random_similarity(rng, diag.len(), strength);
    s.matmul(&ComplexMatrix::from_diag(diag)).matmul(&si)
}

/// Normal matrix `U·diag(d)·U*`.
pub fn normal_with<R: Rng>(rng: &mut R, diag: &[C64]) -> ComplexMatrix {
    let u = random_unitary(rng, diag.len());
    u.matmul(&ComplexMatrix::from_diag(diag)).matmul(&u.adjoint())
}
