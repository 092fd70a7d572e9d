//! Command-line value formats.

use std::path::Path;

use ritt_core::classify::peripheral_points;
use ritt_core::{io, ComplexMatrix, Error, PeripheralSet, Polynomial, Result, C64};

/// Peripheral set as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum ESpec {
    /// Read off the unimodular eigenvalues of the input matrix.
    Auto,
    Points(Vec<C64>),
    Roots(usize),
}

impl ESpec {
    pub fn resolve(&self, t: Option<&ComplexMatrix>) -> Result<PeripheralSet> {
        match self {
            ESpec::Auto => match t {
                Some(t) => peripheral_points(t, 1e-6),
                None => Err(Error::InvalidInput("--E auto needs a matrix".into())),
            },
            ESpec::Points(p) => PeripheralSet::new(p.clone()),
            ESpec::Roots(k) => PeripheralSet::roots_of_unity(*k),
        }
    }
}

/// `auto`, `roots:k`, a single real number, or `re,im` pairs separated by commas,
/// semicolons or whitespace.
pub fn parse_e(text: &str) -> Result<ESpec> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("auto") {
        return Ok(ESpec::Auto);
    }
    if let Some(k) = text.strip_prefix("roots:") {
        let k: usize = k.trim().parse().map_err(|_| Error::InvalidInput(format!("bad root order in {text:?}")))?;
        if k == 0 {
            return Err(Error::InvalidInput("root order must be positive".into()));
        }
        return Ok(ESpec::Roots(k));
    }
    let nums = text
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| Error::InvalidInput(format!("{s:?} is not a number"))))
        .collect::<Result<Vec<f64>>>()?;
    match nums.len() {
        0 => Err(Error::InvalidInput("empty E list".into())),
        1 => Ok(ESpec::Points(vec![C64::new(nums[0], 0.0)])),
        n if n % 2 == 1 => Err(Error::InvalidInput(format!("E list has {n} numbers; expected re,im pairs"))),
        _ => Ok(ESpec::Points(nums.chunks(2).map(|c| C64::new(c[0], c[1])).collect())),
    }
}

/// A polynomial file, or the same JSON given inline.
pub fn parse_phi(arg: &str) -> Result<Polynomial> {
    let path = Path::new(arg);
    if path.is_file() {
        return io::read_polynomial(path);
    }
    serde_json::from_str(arg).map_err(|e| Error::InvalidInput(format!("--phi is neither a file nor polynomial JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_formats() {
        assert_eq!(parse_e("1").unwrap(), ESpec::Points(vec![C64::new(1.0, 0.0)]));
        assert_eq!(parse_e("1,0,-1,0").unwrap(), ESpec::Points(vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]));
        assert_eq!(parse_e("1,0; 0,1").unwrap(), ESpec::Points(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]));
        assert_eq!(parse_e("roots:3").unwrap(), ESpec::Roots(3));
        assert_eq!(parse_e("AUTO").unwrap(), ESpec::Auto);
        assert!(parse_e("1,0,1").is_err());
        assert!(parse_e("roots:0").is_err());
        assert!(parse_e("x").is_err());
    }

    #[test]
    fn resolving() {
        assert_eq!(parse_e("roots:4").unwrap().resolve(None).unwrap().len(), 4);
        assert!(parse_e("0.5").unwrap().resolve(None).is_err());
        assert!(ESpec::Auto.resolve(None).is_err());
        let t = ComplexMatrix::from_diag(&[C64::new(0.0, 1.0), C64::new(0.2, 0.0)]);
        assert_eq!(ESpec::Auto.resolve(Some(&t)).unwrap().points(), &[C64::new(0.0, 1.0)]);
    }

    #[test]
    fn inline_phi() {
        let p = parse_phi("[[-1, 0], [1, 0]]").unwrap();
        assert_eq!(p.degree(), 1);
        assert!(parse_phi("nonsense").is_err());
    }
}
