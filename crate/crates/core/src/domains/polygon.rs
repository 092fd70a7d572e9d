use serde::{Deserialize, Serialize};

use crate::domains::contour::{Orientation, Piece, PiecewiseContour};
use crate::domains::sector::{Branch, Sector};
use crate::domains::Region;
use crate::{Error, Result, C64};

fn cross(u: C64, v: C64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Strictly convex polygon with counterclockwise vertices in the closed unit disc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonFile", into = "PolygonFile")]
pub struct ConvexPolygon {
    vertices: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<C64>,
}

impl TryFrom<PolygonFile> for ConvexPolygon {
    type Error = Error;

    fn try_from(f: PolygonFile) -> Result<Self> {
        ConvexPolygon::new(f.vertices)
    }
}

impl From<ConvexPolygon> for PolygonFile {
    fn from(p: ConvexPolygon) -> Self {
        PolygonFile { vertices: p.vertices }
    }
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<C64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate("a polygon needs at least three vertices".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.norm() > 1.0 + 1e-12) {
            return Err(Error::InvalidInput(format!("vertex {v} lies outside the closed unit disc")));
        }
        let m = min_turn(&vertices);
        if m <= 1e-13 {
            return Err(Error::Degenerate(format!("vertices are not strictly convex (min cross {m:e})")));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Signed distance to the boundary, positive inside.
    pub fn signed_distance(&self, z: C64) -> f64 {
        self.edges()
            .map(|(a, b)| cross(b - a, z - a) / (b - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn boundary_contour(&self, o: Orientation) -> PiecewiseContour {
        PiecewiseContour::new(self.edges().map(|(a, b)| Piece::Segment { a, b }).collect())
            .expect("polygon boundary is closed")
            .oriented(o)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }
}

/// Smallest normalized cross product of consecutive edges.
pub(crate) fn min_turn(v: &[C64]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let e1 = v[(i + 1) % n] - v[i];
            let e2 = v[(i + 2) % n] - v[(i + 1) % n];
            cross(e1, e2) / (e1.norm() * e2.norm()).max(f64::MIN_POSITIVE)
        })
        .fold(f64::INFINITY, f64::min)
}

impl Region for ConvexPolygon {
    fn contains(&self, z: C64, closure: bool) -> bool {
        let d = self.signed_distance(z);
        if closure {
            d >= -1e-12
        } else {
            d > 1e-12
        }
    }
}

/// Meeting point of `∂Σ(ζᵢ, μᵢ)₊` and `∂Σ(ζᵢ₊₁, μᵢ₊₁)₋`.
///
/// Solves `ζᵢ(1 − t e^{−iμᵢ}) = ζᵢ₊₁(1 − t′ e^{iμᵢ₊₁})` as a 2×2 real system and
/// requires `t, t′ > 0`. When the two vertices coincide the branches meet only at the
/// common vertex, which is returned.
pub fn halfline_intersection(s1: &Sector, s2: &Sector) -> Result<C64> {
    let u = s1.branch_direction(Branch::Plus);
    let v = s2.branch_direction(Branch::Minus);
    let det = cross(u, v);
    let scale = u.norm() * v.norm();
    if det.abs() <= 1e-12 * scale {
        return Err(Error::Parallel);
    }
    let d = s2.vertex - s1.vertex;
    if d.norm() <= 1e-15 * s1.vertex.norm() {
        return Ok(s1.vertex);
    }
    // t·u − t′·v = d
    let t = cross(d, v) / det;
    let tp = cross(d, u) / det;
    if t <= 0.0 || tp <= 0.0 {
        return Err(Error::NoPositiveSolution);
    }
    Ok(s1.vertex + u * t)
}

/// `½(c + c/|c|)`: moves `c` halfway to the unit circle along its ray.
pub fn lift_vertex(c: C64) -> Result<C64> {
    let m = c.norm();
    if m == 0.0 {
        return Err(Error::ZeroInput);
    }
    Ok((c + c / m) * 0.5)
}
