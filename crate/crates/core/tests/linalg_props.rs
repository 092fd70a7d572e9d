use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ritt_core::linalg::random::random_similarity;
use ritt_core::linalg::{mat_poly, norm2, op_norm, random_matrix, resolvent, spectrum, Certificate};
use ritt_core::{c64, ComplexMatrix, Polynomial, C64};

fn poly(coeffs: &[(f64, f64)]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|&(a, b)| c64(a, b)).collect())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..max_len)
}

/// Greedy matching distance between two eigenvalue lists of equal length.
fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut rest: Vec<C64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = rest
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|u, v| u.1.total_cmp(&v.1))
            .unwrap();
        worst = worst.max(d);
        rest.swap_remove(k);
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolvent_identity(seed in 0u64..10_000, dim in 2usize..7, zr in 1.2..3.0f64, za in 0.0..6.3f64, wr in 1.2..3.0f64, wa in 0.0..6.3f64) {
        let t = random_matrix(dim, seed, 1.0);
        let (z, w) = (C64::from_polar(zr, za), C64::from_polar(wr, wa));
        let rz = resolvent(&t, z).unwrap();
        let rw = resolvent(&t, w).unwrap();
        let lhs = &rz - &rw;
        let rhs = rz.matmul(&rw).scale(w - z);
        let scale = norm2(&rz).max(norm2(&rw)).max(1.0);
        prop_assert!(norm2(&(&lhs - &rhs)) <= 1e-9 * scale);
    }

    #[test]
    fn spectrum_similarity_invariant(seed in 0u64..10_000, dim in 2usize..7) {
        let t = random_matrix(dim, seed, 0.9);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
        let (s, si) = random_similarity(&mut rng, dim, 0.3);
        let similar = si.matmul(&t).matmul(&s);
        let a = spectrum(&t).unwrap().values();
        let b = spectrum(&similar).unwrap().values();
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(multiset_distance(&a, &b) < 1e-6);
    }

    #[test]
    fn op_norm_submultiplicative(seed in 0u64..10_000, dim in 2usize..6, p in prop::sample::select(vec![1.0, 2.0, f64::INFINITY, 1.5, 3.0])) {
        let a = random_matrix(dim, seed, 1.0);
        let b = random_matrix(dim, seed + 7919, 1.0);
        let (na, nb, nab) = (op_norm(&a, p), op_norm(&b, p), op_norm(&a.matmul(&b), p));
        if [na, nb, nab].iter().all(|e| e.certificate == Certificate::Exact) {
            prop_assert!(nab.value <= na.value * nb.value * (1.0 + 1e-8));
        }
    }

    #[test]
    fn mat_poly_homomorphism(seed in 0u64..10_000, dim in 2usize..6, f in coeffs(6), g in coeffs(6)) {
        let t = random_matrix(dim, seed, 1.0);
        let (f, g) = (poly(&f), poly(&g));
        let lhs = mat_poly(&(&f * &g), &t);
        let rhs = mat_poly(&f, &t).matmul(&mat_poly(&g, &t));
        prop_assert!(norm2(&(&lhs - &rhs)) <= 1e-9 * norm2(&rhs).max(1.0));
    }

    #[test]
    fn nonnegative_norm_is_exact_and_bounded(seed in 0u64..10_000, dim in 2usize..6, p in 1.1..6.0f64) {
        let a = random_matrix(dim, seed, 1.0).modulus();
        let e = op_norm(&a, p);
        prop_assert_eq!(e.certificate, Certificate::Exact);
        let rt = a.norm_1().powf(1.0 / p) * a.norm_inf().powf(1.0 - 1.0 / p);
        prop_assert!(e.value <= rt * (1.0 + 1e-10));
    }
}

#[test]
fn jordan_block_power_norms_grow_linearly() {
    let j = ComplexMatrix::jordan(c64(1.0, 0.0), 2);
    for n in [1u32, 10, 100] {
        let want = ((n * n + 4) as f64).sqrt() / 2.0 + n as f64 / 2.0;
        assert!((norm2(&j.powi(n)) - want).abs() < 1e-9 * want);
    }
}
