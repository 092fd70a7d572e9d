use std::f64::consts::{FRAC_PI_4, PI, TAU};

use proptest::prelude::*;
use ritt_core::classify::{ritt_sample, ritt_type, SampleConfig};
use ritt_core::domains::{build_polygon, build_stolz, gamma_n, gamma_n0, BoundaryPiece, Orientation, PolygonConfig, Region};
use ritt_core::{c64, PeripheralSet, C64};

/// Angles with pairwise gaps of at least `min_gap`, sorted.
fn spread_angles(n: usize, min_gap: f64) -> impl Strategy<Value = Vec<f64>> {
    let slack = TAU - n as f64 * min_gap;
    (prop::collection::vec(0.0..1.0f64, n), 0.0..TAU).prop_map(move |(w, rot)| {
        let total: f64 = w.iter().sum::<f64>() + 1e-12;
        let mut a = rot;
        w.iter()
            .map(|x| {
                let out = a;
                a += min_gap + slack * x / total * 0.999;
                out
            })
            .collect()
    })
}

fn polar(r: f64, a: f64) -> C64 {
    C64::from_polar(r, a)
}

fn kind(p: &BoundaryPiece) -> u8 {
    match p {
        BoundaryPiece::Segment { .. } => 0,
        BoundaryPiece::Arc { .. } => 1,
        BoundaryPiece::Chord { .. } => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stolz_monotone_in_r(angles in spread_angles(3, 0.5), r in 0.05..0.9f64, dr in 0.0..0.09f64, pts in prop::collection::vec((0.0..1.0f64, 0.0..TAU), 1000)) {
        let e = PeripheralSet::from_angles(&angles).unwrap();
        let small = build_stolz(&e, r).unwrap();
        let large = build_stolz(&e, r + dr).unwrap();
        for (u, a) in pts {
            let z = polar(u.sqrt(), a);
            if small.contains(z, false) {
                prop_assert!(large.contains(z, false), "{z} in E_{r} but not E_{}", r + dr);
            }
        }
    }

    #[test]
    fn stolz_rotation_equivariant(angles in spread_angles(3, 0.4), r in 0.05..0.95f64, beta in -PI..PI) {
        let e = PeripheralSet::from_angles(&angles).unwrap();
        let rot = C64::from_polar(1.0, beta);
        let base = build_stolz(&e, r).unwrap();
        let turned = build_stolz(&e.rotate(beta), r).unwrap();
        prop_assert_eq!(base.boundary.len(), turned.boundary.len());
        for p in &base.boundary {
            let (a, b) = (p.start() * rot, p.end() * rot);
            let hit = turned.boundary.iter().any(|q| kind(q) == kind(p) && (q.start() - a).norm() < 1e-12 && (q.end() - b).norm() < 1e-12);
            prop_assert!(hit, "no rotated match for {:?}", p);
        }
    }

    #[test]
    fn single_point_stolz_matches_cone(omega in 0.05..1.5f64, pts in prop::collection::vec((0.0..1.0f64, 0.0..TAU), 1000)) {
        let r = omega.sin();
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let d = build_stolz(&e, r).unwrap();
        let c2 = omega.cos().powi(2);
        for (u, a) in pts {
            let z = polar(u.sqrt(), a);
            let w = C64::new(1.0, 0.0) - z;
            let want = z.norm() < r || (w.arg().abs() < omega && w.re < c2);
            // stay off the boundary, where either test may round either way
            let edge = (z.norm() - r).abs() < 1e-9 || (w.arg().abs() - omega).abs() < 1e-9 || (w.re - c2).abs() < 1e-9;
            if !edge {
                prop_assert_eq!(d.contains(z, false), want, "z = {}", z);
            }
        }
    }

    #[test]
    fn gamma_n_winds_once_around_spectrum(n_points in 1usize..4, seed in 0u64..1000, extra in 0usize..40) {
        let e = PeripheralSet::roots_of_unity(n_points).unwrap();
        let cfg = SampleConfig { dim: 6, ..SampleConfig::default() };
        let sample = ritt_sample(&e, &cfg, seed).unwrap();
        let r = ritt_type(&sample.t, &e, 1e-6).unwrap();
        let s = 0.5 * (r + 1.0);
        let Ok(n0) = gamma_n0(&e, s) else { return Ok(()) };
        let g = gamma_n(&e, s, n0 + extra).unwrap();
        for l in &sample.eigenvalues {
            if e.nearest(*l).1 > 1e-9 {
                prop_assert!((g.contour.winding_number(*l) - 1.0).abs() < 1e-6);
            }
        }
        for &xi in e.points() {
            prop_assert!((g.contour.winding_number(xi) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn polygon_contains_some_stolz_domain(n_points in 1usize..4, seed in 0u64..1000) {
        let e = PeripheralSet::roots_of_unity(n_points).unwrap();
        let cfg = SampleConfig { dim: 6, ..SampleConfig::default() };
        let sample = ritt_sample(&e, &cfg, seed).unwrap();
        let built = build_polygon(&sample.t, &e, FRAC_PI_4, PI / 3.0, &PolygonConfig { membership_samples: 500, ..Default::default() }).unwrap();
        let s = built.meta.s_inner;
        prop_assert!(s > 0.0 && s < 1.0);
        let boundary = build_stolz(&e, s).unwrap().boundary_contour(Orientation::Ccw);
        for z in boundary.sample(64) {
            prop_assert!(built.delta.contains(z, true));
        }
    }
}
