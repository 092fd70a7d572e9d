use proptest::prelude::*;
use ritt_core::calculus::{
    calculus_constant, fc_contour, fc_contour_at, lagrange_split, seifert_identity_residual, seifert_q, CalcRegion,
    EnsembleConfig,
};
use ritt_core::classify::{ritt_sample, ritt_type, SampleConfig};
use ritt_core::linalg::{mat_poly, norm2, random_matrix};
use ritt_core::quad::QuadConfig;
use ritt_core::{c64, ComplexMatrix, Error, PeripheralSet, Polynomial, C64};

fn poly(coeffs: &[(f64, f64)]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|&(a, b)| c64(a, b)).collect())
}

fn sample(n_points: usize, seed: u64) -> (PeripheralSet, ComplexMatrix, f64) {
    let e = PeripheralSet::roots_of_unity(n_points).unwrap();
    let s = ritt_sample(&e, &SampleConfig { dim: 5, ..SampleConfig::default() }, seed).unwrap();
    let r = ritt_type(&s.t, &e, 1e-6).unwrap();
    (e, s.t, r)
}

fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    norm2(&(a - b)) / norm2(b).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fc_is_linear(n_points in 1usize..4, seed in 0u64..500, f in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..5),
                    g in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..5), a in (-2.0..2.0f64, -2.0..2.0f64), b in (-2.0..2.0f64, -2.0..2.0f64)) {
        let (e, t, r) = sample(n_points, seed);
        let v = Polynomial::vanishing(e.points());
        let (phi, psi) = (&v * &poly(&f), &v * &poly(&g));
        let (a, b) = (c64(a.0, a.1), c64(b.0, b.1));
        let s = 0.5 * (r + 1.0);
        let q = QuadConfig::default();
        let fp = fc_contour(&phi.clone().into(), &t, &e, s, &q).unwrap().value;
        let fq = fc_contour(&psi.clone().into(), &t, &e, s, &q).unwrap().value;
        let combo = &phi.scale(a) + &psi.scale(b);
        let lhs = fc_contour(&combo.into(), &t, &e, s, &q).unwrap().value;
        let rhs = &fp.scale(a) + &fq.scale(b);
        prop_assert!(rel(&lhs, &rhs) <= 1e-9);
    }

    #[test]
    fn fc_contour_independent(n_points in 1usize..4, seed in 0u64..500, f in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..6)) {
        let (e, t, r) = sample(n_points, seed);
        let phi: Polynomial = &Polynomial::vanishing(e.points()) * &poly(&f);
        let q = QuadConfig::default();
        let run = |u: f64| fc_contour_at(&phi.clone().into(), &t, &e, u, &q);
        let (a, b) = match (run(r + 0.3 * (1.0 - r)), run(r + 0.7 * (1.0 - r))) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::SpectralClearance), _) | (_, Err(Error::SpectralClearance)) => return Ok(()),
            (x, y) => panic!("{:?} {:?}", x.err(), y.err()),
        };
        let scale = norm2(&a.value).max(1.0);
        // twice the larger estimate, above a rounding floor
        let allowed = 2.0 * a.error_estimate.max(b.error_estimate) + 1e-11 * scale;
        prop_assert!(norm2(&(&a.value - &b.value)) <= allowed);
    }

    #[test]
    fn lagrange_consistency(n_points in 1usize..4, seed in 0u64..500, f in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..8)) {
        let (e, t, r) = sample(n_points, seed);
        let psi = poly(&f);
        let split = lagrange_split(&psi, &e).unwrap();
        let s = 0.5 * (r + 1.0);
        let mut rhs = fc_contour(&split.psi1.clone().into(), &t, &e, s, &QuadConfig::default()).unwrap().value;
        for (l, &x) in split.basis.iter().zip(e.points()) {
            rhs = &rhs + &mat_poly(l, &t).scale(psi.eval(x));
        }
        prop_assert!(rel(&rhs, &mat_poly(&psi, &t)) <= 1e-8);
    }

    #[test]
    fn seifert_identity(n_points in 1usize..5, seed in 0u64..10_000, dim in 2usize..6, lr in 0.0..2.0f64, la in 0.0..6.3f64, n in 0usize..31) {
        let e = PeripheralSet::from_angles(&(0..n_points).map(|k| 0.3 + 6.0 * k as f64 / n_points as f64).collect::<Vec<_>>()).unwrap();
        let t = random_matrix(dim, seed, 1.0);
        let q = seifert_q(&e);
        let (res, scale) = seifert_identity_residual(&t, &e, &q.q, C64::from_polar(lr, la), n);
        prop_assert!(res <= 1e-9 * scale.max(1.0), "{res:e} vs {scale:e}");
    }

    #[test]
    fn von_neumann_on_disc(seed in 0u64..10_000, dim in 2usize..6) {
        let a = random_matrix(dim, seed, 1.0);
        let t = a.scale_real(1.0 / norm2(&a));
        let cfg = EnsembleConfig { max_degree: 12, random_degrees: vec![2, 5, 12], random_per_degree: 2, boundary_samples: 1024, ..Default::default() };
        let k = calculus_constant(&t, &CalcRegion::UnitDisc, &cfg).unwrap();
        prop_assert!(k.k_lower <= 1.0 + 1e-6, "{}", k.k_lower);
    }
}
