//! File formats: matrices, polynomials and families as JSON, numeric CSV.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::linalg::{ComplexMatrix, Polynomial};
use crate::{Error, Result, C64};

/// A double with 17 significant digits, enough to round-trip exactly.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn io_err(path: &Path, err: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{}: {err}", path.display()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_err(path, e))
}

/// Pretty JSON with a trailing newline. Floats use the shortest representation that
/// parses back to the same double.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?).map_err(|e| io_err(path, e))
}

/// `{"dim": n, "entries": [[re, im], …]}` row-major, or a bare list of rows of `[re, im]`.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_matrix(&text).map_err(|e| io_err(path, e))
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    if let Ok(m) = serde_json::from_str::<ComplexMatrix>(text) {
        return Ok(m);
    }
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|e| C64::new(e[0], e[1])).collect()).collect();
    ComplexMatrix::from_rows(&rows)
}

/// JSON list of `[re, im]` coefficients, ascending degree.
pub fn read_polynomial(path: &Path) -> Result<Polynomial> {
    read_json(path)
}

/// JSON list of matrix objects.
pub fn read_family(path: &Path) -> Result<Vec<ComplexMatrix>> {
    read_json(path)
}

/// CSV with a header row; every float in 17-significant-digit form.
pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 1e-300, -2.5e17, f64::MIN_POSITIVE] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn matrix_formats() {
        let m = ComplexMatrix::from_rows(&[vec![c64(1.0, 0.5), c64(0.0, 0.0)], vec![c64(0.0, -1.0), c64(2.0, 0.0)]]).unwrap();
        let obj = to_json(&m).unwrap();
        assert_eq!(parse_matrix(&obj).unwrap(), m);
        let rows = "[[[1,0.5],[0,0]],[[0,-1],[2,0]]]";
        assert_eq!(parse_matrix(rows).unwrap(), m);
        let back: ComplexMatrix = serde_json::from_str(&obj).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_layout() {
        let s = to_csv(&["a", "b"], &[vec![1.0, 0.25]]);
        assert_eq!(s, "a,b\n1.0000000000000000e0,2.5000000000000000e-1\n");
    }
}
