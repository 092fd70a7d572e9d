use serde::{Deserialize, Serialize};

use crate::domains::contour::{ccw_angle, Orientation, Piece, PiecewiseContour};
use crate::domains::{PeripheralSet, Region};
use crate::{Error, Result, C64};

/// Boundary piece of a generalized Stolz domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryPiece {
    /// Tangent segment between a point of `E` and a touch point on `|z| = r`.
    Segment { a: C64, b: C64 },
    /// Arc of `|z| = r` from `theta_start` counterclockwise to `theta_end`.
    Arc { radius: f64, theta_start: f64, theta_end: f64 },
    /// Straight edge joining two consecutive points of `E`.
    Chord { a: C64, b: C64 },
}

impl BoundaryPiece {
    pub fn start(&self) -> C64 {
        match *self {
            BoundaryPiece::Segment { a, .. } | BoundaryPiece::Chord { a, .. } => a,
            BoundaryPiece::Arc { radius, theta_start, .. } => C64::from_polar(radius, theta_start),
        }
    }

    pub fn end(&self) -> C64 {
        match *self {
            BoundaryPiece::Segment { b, .. } | BoundaryPiece::Chord { b, .. } => b,
            BoundaryPiece::Arc { radius, theta_end, .. } => C64::from_polar(radius, theta_end),
        }
    }

    pub fn to_piece(&self) -> Piece {
        match *self {
            BoundaryPiece::Segment { a, b } | BoundaryPiece::Chord { a, b } => Piece::Segment { a, b },
            BoundaryPiece::Arc { radius, theta_start, theta_end } => Piece::Arc {
                center: C64::new(0.0, 0.0),
                radius,
                start: theta_start,
                sweep: theta_end - theta_start,
            },
        }
    }

    /// Distance from 0 to the piece along the ray of argument `phi`.
    fn radial(&self, phi: f64) -> f64 {
        match *self {
            BoundaryPiece::Arc { radius, .. } => radius,
            BoundaryPiece::Segment { a, b } | BoundaryPiece::Chord { a, b } => {
                let d = b - a;
                let u = C64::from_polar(1.0, phi);
                let cross = |x: C64, y: C64| x.re * y.im - x.im * y.re;
                cross(a, d) / cross(u, d)
            }
        }
    }
}

/// `E_r`: interior of the convex hull of `D(0, r)` and `E`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StolzDomain {
    pub e: PeripheralSet,
    pub r: f64,
    pub boundary: Vec<BoundaryPiece>,
}

/// Assembles the boundary of `E_r`, counterclockwise from `ξ₁`.
///
/// Between consecutive points with angular gap `Δθ ≤ 2·arccos r` the edge is the chord;
/// otherwise tangent segment, arc of `|z| = r`, tangent segment.
pub fn build_stolz(e: &PeripheralSet, r: f64) -> Result<StolzDomain> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidInput(format!("r = {r} must lie in (0, 1)")));
    }
    if e.len() > 1 && e.min_separation() <= crate::domains::peripheral::MIN_SEPARATION {
        return Err(Error::Degenerate("points of E coincide".into()));
    }
    let beta = r.acos();
    let n = e.len();
    let mut boundary = Vec::with_capacity(3 * n);
    for j in 0..n {
        let a = e.points()[j];
        let b = e.points()[(j + 1) % n];
        let aj = a.arg();
        let gap = e.gap(j);
        if gap <= 2.0 * beta && n > 1 {
            boundary.push(BoundaryPiece::Chord { a, b });
        } else {
            let t0 = aj + beta;
            let t1 = aj + gap - beta;
            boundary.push(BoundaryPiece::Segment { a, b: C64::from_polar(r, t0) });
            boundary.push(BoundaryPiece::Arc { radius: r, theta_start: t0, theta_end: t1 });
            boundary.push(BoundaryPiece::Segment { a: C64::from_polar(r, t1), b });
        }
    }
    Ok(StolzDomain { e: e.clone(), r, boundary })
}

impl StolzDomain {
    /// Boundary radius along the ray of argument `phi`.
    pub fn radial_function(&self, phi: f64) -> f64 {
        for p in &self.boundary {
            let a0 = p.start().arg();
            let sweep = match p {
                BoundaryPiece::Arc { theta_start, theta_end, .. } => theta_end - theta_start,
                _ => ccw_angle(a0, p.end().arg()),
            };
            if ccw_angle(a0, phi) <= sweep {
                return p.radial(phi);
            }
        }
        // only reachable through rounding at a piece junction
        self.boundary[0].radial(phi)
    }

    pub fn boundary_contour(&self, o: Orientation) -> PiecewiseContour {
        PiecewiseContour::new(self.boundary.iter().map(|p| p.to_piece()).collect())
            .expect("Stolz boundary is closed")
            .oriented(o)
    }

    pub fn piece_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for p in &self.boundary {
            match p {
                BoundaryPiece::Segment { .. } => c.0 += 1,
                BoundaryPiece::Arc { .. } => c.1 += 1,
                BoundaryPiece::Chord { .. } => c.2 += 1,
            }
        }
        c
    }
}

impl Region for StolzDomain {
    fn contains(&self, z: C64, closure: bool) -> bool {
        let m = z.norm();
        if m == 0.0 {
            return true;
        }
        let rho = self.radial_function(z.arg());
        if closure {
            m <= rho + 1e-12
        } else {
            m < rho - 1e-13
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::domains::contour::Orientation;
    use std::f64::consts::{PI, TAU};

    /// Independent hull oracle: z is in the closed hull of D(0,r) ∪ E iff for every
    /// direction u, Re(z ū) ≤ max(r, max_j Re(ξⱼ ū)).
    fn hull_oracle(e: &PeripheralSet, r: f64, z: C64) -> bool {
        (0..10_000).all(|k| {
            let u = C64::from_polar(1.0, TAU * k as f64 / 10_000.0);
            let support = e.points().iter().map(|x| (x * u.conj()).re).fold(r, f64::max);
            (z * u.conj()).re <= support + 1e-9
        })
    }

    #[test]
    fn single_point() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        for r in [0.2, 0.6, 0.95] {
            let d = build_stolz(&e, r).unwrap();
            assert_eq!(d.piece_counts(), (2, 1, 0));
            if let BoundaryPiece::Arc { theta_start, theta_end, .. } = d.boundary[1] {
                assert!((theta_end - theta_start - (TAU - 2.0 * r.acos())).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn antipodal_pair() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0), c64(-1.0, 0.0)]).unwrap();
        assert_eq!(build_stolz(&e, 0.5).unwrap().piece_counts(), (4, 2, 0));
    }

    #[test]
    fn close_pair_uses_chord() {
        let e = PeripheralSet::from_angles(&[0.0, PI / 6.0]).unwrap();
        let d = build_stolz(&e, 0.9).unwrap();
        assert_eq!(d.piece_counts(), (2, 1, 1));
        assert!(matches!(d.boundary[0], BoundaryPiece::Chord { .. }));
    }

    #[test]
    fn membership_matches_hull_oracle() {
        let e = PeripheralSet::from_angles(&[0.3, 2.0, 2.4, 4.0]).unwrap();
        let r = 0.5;
        let d = build_stolz(&e, r).unwrap();
        let mut rng = crate::seeded_rng(4);
        for _ in 0..300 {
            let z = crate::linalg::random::random_in_disc(&mut rng, 1.0);
            let inside = d.contains(z, true);
            let oracle = hull_oracle(&e, r, z);
            // points within 1e-6 of the boundary are not decisive for a sampled oracle
            let rho = d.radial_function(z.arg());
            if (z.norm() - rho).abs() > 1e-6 {
                assert_eq!(inside, oracle, "z = {z}");
            }
        }
    }

    #[test]
    fn vertices_and_origin() {
        let e = PeripheralSet::roots_of_unity(3).unwrap();
        let d = build_stolz(&e, 0.4).unwrap();
        assert!(d.contains(c64(0.0, 0.0), false));
        for &x in e.points() {
            assert!(!d.contains(x, false));
            assert!(d.contains(x, true));
        }
    }

    #[test]
    fn boundary_is_closed_convex_curve() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let c = build_stolz(&e, 0.6).unwrap().boundary_contour(Orientation::Ccw);
        assert_eq!(c.len(), 3);
        assert!((c.total_turning() - TAU).abs() < 1e-12);
        assert!(c.graded);
    }
}
