//! Static SVG of domains, contours, spectra and polygons.
//!
//! The canvas is 1024×1024 with view box `[−1.3, 1.3]²`; a group flips the `y` axis so that
//! path data is written in the complex plane's own coordinates.

use std::f64::consts::TAU;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use ritt_core::domains::{build_stolz, gamma_n, BoundaryPiece, Piece};
use ritt_core::{ConvexPolygon, Error, PeripheralSet, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StolzSpec {
    pub e: Vec<C64>,
    pub r: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaSpec {
    pub e: Vec<C64>,
    pub s: f64,
    pub n: usize,
}

/// Everything a figure may show. Each list may be empty, but not all of them.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Scene {
    pub stolz: Vec<StolzSpec>,
    pub gamma: Vec<GammaSpec>,
    /// Convex polygons by their vertices, counterclockwise.
    pub polygons: Vec<Vec<C64>>,
    /// Oriented contours, drawn with arrows.
    pub contours: Vec<Vec<Piece>>,
    pub spectrum: Vec<C64>,
    /// Points of `E`, marked on the circle.
    pub e: Vec<C64>,
}

impl Scene {
    pub fn is_empty(&self) -> bool {
        self.stolz.is_empty()
            && self.gamma.is_empty()
            && self.polygons.is_empty()
            && self.contours.is_empty()
            && self.spectrum.is_empty()
            && self.e.is_empty()
    }
}

const HEADER: &str = r##"<svg xmlns="http://www.w3.org/2000/svg" width="1024" height="1024" viewBox="-1.3 -1.3 2.6 2.6">
<defs>
<marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="5" markerHeight="5" orient="auto"><polygon points="0,0 10,5 0,10" fill="#444444"/></marker>
</defs>
<rect x="-1.3" y="-1.3" width="2.6" height="2.6" fill="#ffffff"/>
<g transform="scale(1,-1)" fill="none" stroke-width="0.006" stroke-linejoin="round">
<circle class="unit-circle" cx="0" cy="0" r="1" stroke="#999999" stroke-dasharray="0.02 0.015"/>
"##;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn pt(z: C64) -> String {
    format!("{} {}", num(z.re), num(z.im))
}

/// Path data continuing from the piece's start point.
fn piece_tail(piece: &Piece) -> String {
    match *piece {
        Piece::Segment { b, .. } => format!(" L {}", pt(b)),
        Piece::Arc { center, radius, start, sweep } => {
            // SVG arcs cannot close a full turn, so long sweeps are split in halves
            let parts = if sweep.abs() >= 0.999 * TAU { 2 } else { 1 };
            let step = sweep / parts as f64;
            let large = u8::from(step.abs() > std::f64::consts::PI);
            let flag = u8::from(step > 0.0);
            (1..=parts)
                .map(|k| {
                    let end = center + C64::from_polar(radius, start + step * k as f64);
                    format!(" A {} {} 0 {large} {flag} {}", num(radius), num(radius), pt(end))
                })
                .collect()
        }
    }
}

fn piece_path(piece: &Piece) -> String {
    format!("M {}{}", pt(piece.start()), piece_tail(piece))
}

fn stroke_for(piece: &BoundaryPiece) -> (&'static str, &'static str) {
    match piece {
        BoundaryPiece::Segment { .. } => ("segment", "#1f77b4"),
        BoundaryPiece::Arc { .. } => ("arc", "#d62728"),
        BoundaryPiece::Chord { .. } => ("chord", "#2ca02c"),
    }
}

fn marker(out: &mut String, z: C64, class: &str, radius: f64, fill: &str) {
    let _ = writeln!(out, r##"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="none"/>"##, num(z.re), num(z.im), num(radius));
}

/// Deterministic SVG document for the scene.
pub fn render(scene: &Scene) -> Result<String> {
    if scene.is_empty() {
        return Err(Error::EmptyScene);
    }
    let mut out = String::from(HEADER);
    for spec in &scene.stolz {
        let d = build_stolz(&PeripheralSet::new(spec.e.clone())?, spec.r)?;
        for piece in &d.boundary {
            let (class, color) = stroke_for(piece);
            let _ = writeln!(out, r##"<path class="stolz {class}" stroke="{color}" d="{}"/>"##, piece_path(&piece.to_piece()));
        }
    }
    for spec in &scene.gamma {
        let g = gamma_n(&PeripheralSet::new(spec.e.clone())?, spec.s, spec.n)?;
        for piece in &g.contour.pieces {
            let _ = writeln!(
                out,
                r##"<path class="contour gamma" stroke="#9467bd" marker-end="url(#arrow)" d="{}"/>"##,
                piece_path(piece)
            );
        }
    }
    for vertices in &scene.polygons {
        let poly = ConvexPolygon::new(vertices.clone())?;
        let mut d = String::new();
        for (i, v) in poly.vertices().iter().enumerate() {
            let _ = write!(d, "{} {}", if i == 0 { "M" } else { " L" }, pt(*v));
        }
        d.push_str(" Z");
        let _ = writeln!(out, r##"<path class="polygon" stroke="#ff7f0e" d="{d}"/>"##);
    }
    for contour in &scene.contours {
        for piece in contour {
            let _ = writeln!(
                out,
                r##"<path class="contour" stroke="#444444" marker-end="url(#arrow)" d="{}"/>"##,
                piece_path(piece)
            );
        }
    }
    for &z in &scene.e {
        marker(&mut out, z, "peripheral", 0.022, "#2ca02c");
    }
    for &z in &scene.spectrum {
        marker(&mut out, z, "eigenvalue", 0.015, "#000000");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
