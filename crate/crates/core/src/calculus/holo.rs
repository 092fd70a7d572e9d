use std::fmt;
use std::sync::Arc;

use crate::domains::PeripheralSet;
use crate::linalg::Polynomial;
use crate::{Error, Result, C64};

/// A holomorphic function handed to the functional calculus: a polynomial, checked exactly,
/// or a black-box evaluator, checked by sampling.
#[derive(Clone)]
pub enum Holomorphic {
    Poly(Polynomial),
    Callable(Arc<dyn Fn(C64) -> C64 + Send + Sync>),
}

impl fmt::Debug for Holomorphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Poly(p) => f.debug_tuple("Poly").field(p).finish(),
            Self::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}

impl From<Polynomial> for Holomorphic {
    fn from(p: Polynomial) -> Self {
        Self::Poly(p)
    }
}

impl Holomorphic {
    pub fn callable(f: impl Fn(C64) -> C64 + Send + Sync + 'static) -> Self {
        Self::Callable(Arc::new(f))
    }

    pub fn eval(&self, z: C64) -> C64 {
        match self {
            Self::Poly(p) => p.eval(z),
            Self::Callable(f) => f(z),
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, Self::Callable(_))
    }

    /// Vanishing at every `ξⱼ`: exact to `10⁻¹⁰·max(1, ‖coeffs‖)` for polynomials; for
    /// black boxes `|φ|` must decay along `ξⱼ(1 − 2⁻ᵏ)`, `k = 10..=40`.
    pub fn check_h0(&self, e: &PeripheralSet) -> Result<()> {
        match self {
            Self::Poly(p) => {
                let tol = 1e-10 * p.coeff_norm().max(1.0);
                for &xi in e.points() {
                    let v = p.eval(xi).norm();
                    if v > tol {
                        return Err(Error::NotH0(format!("|φ({xi})| = {v:e}")));
                    }
                }
                Ok(())
            }
            Self::Callable(f) => {
                for &xi in e.points() {
                    let vals: Vec<f64> = (10..=40).step_by(5).map(|k| f(xi * (1.0 - 0.5f64.powi(k))).norm()).collect();
                    let first = vals[0].max(f64::MIN_POSITIVE);
                    let last = vals[vals.len() - 1];
                    if !(last <= 1e-3 * first || last <= 1e-12) {
                        return Err(Error::NotH0(format!("no decay toward {xi}: {first:e} → {last:e}")));
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn polynomial_membership_is_exact() {
        let e = PeripheralSet::roots_of_unity(3).unwrap();
        let phi: Holomorphic = Polynomial::vanishing(e.points()).into();
        assert!(phi.check_h0(&e).is_ok());
        assert!(!phi.is_sampled());
        let one: Holomorphic = Polynomial::one().into();
        assert!(matches!(one.check_h0(&e), Err(Error::NotH0(_))));
    }

    #[test]
    fn callable_membership_is_sampled() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let root = Holomorphic::callable(|z: C64| (C64::new(1.0, 0.0) - z).sqrt());
        assert!(root.is_sampled());
        assert!(root.check_h0(&e).is_ok());
        let flat = Holomorphic::callable(|z: C64| z * 0.5);
        assert!(flat.check_h0(&e).is_err());
        assert_eq!(format!("{flat:?}"), "Callable(..)");
    }
}
