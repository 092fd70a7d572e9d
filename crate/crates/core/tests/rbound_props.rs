use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ritt_core::linalg::{norm2, random_matrix};
use ritt_core::rbound::{evaluate_witness, rad_ratio, rademacher_norm, rbound_lower, RadMode, RadSample, SearchConfig};
use ritt_core::{c64, ComplexMatrix, C64};

fn vectors(n: usize, d: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..d).map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()).collect()
}

fn family(size: usize, d: usize, seed: u64) -> Vec<ComplexMatrix> {
    (0..size).map(|k| random_matrix(d, seed * 31 + k as u64, 1.0)).collect()
}

fn light() -> SearchConfig {
    SearchConfig { n_max: 4, restarts: 2, sweeps: 3, candidate_pool: 4, seed: 0 }
}

#[test]
fn monte_carlo_within_three_standard_errors() {
    for n in 1..=12usize {
        for p in [1.5, 2.0, 4.0] {
            let v = vectors(n, 4, 100 + n as u64);
            let exact = rademacher_norm(&RadSample::exact(v.clone(), p)).unwrap().value;
            let mc = rademacher_norm(&RadSample { vectors: v, p, mode: RadMode::MonteCarlo, mc_trials: 20_000, seed: n as u64 }).unwrap();
            assert!((mc.value - exact).abs() <= 3.0 * mc.stderr + 1e-12 * exact, "n = {n}, p = {p}: {} vs {exact} (se {})", mc.value, mc.stderr);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witnesses_reproduce(size in 1usize..6, d in 2usize..5, seed in 0u64..1000, p in prop::sample::select(vec![1.5, 2.0, 3.0])) {
        let fam = family(size, d, seed);
        let est = rbound_lower(&fam, p, &SearchConfig { seed, ..light() }).unwrap();
        let again = evaluate_witness(&fam, p, &est.witness);
        prop_assert!((again - est.value).abs() <= 1e-10 * est.value.max(1.0));
    }

    #[test]
    fn real_contraction(d in 2usize..5, seed in 0u64..1000, a in prop::collection::vec(-1.0..1.0f64, 2..6), p in prop::sample::select(vec![1.5, 2.0, 3.0])) {
        let s = random_matrix(d, seed, 1.0);
        let scaled: Vec<ComplexMatrix> = a.iter().map(|&x| s.scale_real(x)).collect();
        let amax = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let est = rbound_lower(&scaled, p, &SearchConfig { seed, ..light() }).unwrap();
        // the same vectors against the unscaled operator
        let plain = rad_ratio(&[s], &vec![0; est.witness.vectors.len()], &est.witness.vectors, p);
        prop_assert!(est.value <= amax * plain * (1.0 + 1e-6), "{} vs {}·{}", est.value, amax, plain);
    }

    #[test]
    fn hilbert_contraction_complex(d in 2usize..5, seed in 0u64..1000, a in prop::collection::vec((0.0..1.0f64, 0.0..6.3f64), 2..6)) {
        let s = random_matrix(d, seed, 1.0);
        let coeffs: Vec<C64> = a.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
        let scaled: Vec<ComplexMatrix> = coeffs.iter().map(|&c| s.scale(c)).collect();
        let amax = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        let est = rbound_lower(&scaled, 2.0, &SearchConfig { seed, ..light() }).unwrap();
        let plain = rad_ratio(&[s], &vec![0; est.witness.vectors.len()], &est.witness.vectors, 2.0);
        prop_assert!(est.value <= amax * plain * (1.0 + 1e-6));
    }

    #[test]
    fn hilbert_estimate_is_max_norm(size in 1usize..6, d in 2usize..5, seed in 0u64..1000) {
        let fam = family(size, d, seed);
        let top = fam.iter().map(norm2).fold(0.0, f64::max);
        let est = rbound_lower(&fam, 2.0, &SearchConfig { seed, ..light() }).unwrap();
        prop_assert!(est.value <= top + 1e-6);
        prop_assert!(est.value >= top * (1.0 - 1e-9));
    }
}
