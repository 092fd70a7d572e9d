//! Planar geometry: peripheral sets, generalized Stolz domains, sectors, contours and polygons.

mod construct;
mod contour;
mod gamma;
pub(crate) mod peripheral;
mod polygon;
mod sector;
mod stolz;

pub use construct::{build_polygon, inscribed_stolz_radius, PolygonConfig, PolygonConstruction, PolygonMeta};
pub use contour::{unit_circle, Orientation, Piece, PiecewiseContour};
pub use gamma::{gamma_n, gamma_n0, GammaN, GammaPieceKind};
pub use peripheral::PeripheralSet;
pub use polygon::{halfline_intersection, lift_vertex, ConvexPolygon};
pub use sector::{in_standard_sector, Branch, Sector};
pub use stolz::{build_stolz, BoundaryPiece, StolzDomain};

use crate::C64;

/// Open planar region with a membership test for itself and its closure.
pub trait Region {
    fn contains(&self, z: C64, closure: bool) -> bool;
}

pub fn region_contains(region: &dyn Region, z: C64, closure: bool) -> bool {
    region.contains(z, closure)
}

/// The open unit disc.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitDisc;

impl Region for UnitDisc {
    fn contains(&self, z: C64, closure: bool) -> bool {
        if closure {
            z.norm() <= 1.0 + 1e-12
        } else {
            z.norm() < 1.0
        }
    }
}
