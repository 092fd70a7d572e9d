use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{norm2, ComplexMatrix, Lu, Polynomial};
use crate::{Error, Result, C64};

/// Condition cap for the Vandermonde solve.
pub const VANDERMONDE_CAP: f64 = 1e10;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LagrangeSplit {
    /// `Lⱼ(ξᵢ) = δᵢⱼ`, degree `N − 1`.
    pub basis: Vec<Polynomial>,
    /// `Σ ψ(ξⱼ)Lⱼ`.
    pub psi0: Polynomial,
    /// `ψ − ψ₀`, vanishing on `E`.
    pub psi1: Polynomial,
    pub condition: f64,
}

pub fn lagrange_split(psi: &Polynomial, e: &PeripheralSet) -> Result<LagrangeSplit> {
    let pts = e.points();
    let n = pts.len();
    if n == 0 {
        return Err(Error::InvalidInput("E is empty".into()));
    }
    let v = ComplexMatrix::from_vec_unchecked(
        n,
        pts.iter().flat_map(|x| (0..n).map(move |k| x.powi(k as i32))).collect(),
    );
    let lu = Lu::factor(&v).map_err(|_| Error::IllConditionedNodes(f64::INFINITY))?;
    let vi = lu.inverse();
    let condition = norm2(&v) * norm2(&vi);
    if condition > VANDERMONDE_CAP {
        return Err(Error::IllConditionedNodes(condition));
    }
    // column j of V⁻¹ holds the coefficients of Lⱼ
    let basis: Vec<Polynomial> = (0..n).map(|j| Polynomial::new((0..n).map(|k| vi[(k, j)]).collect())).collect();
    let mut psi0 = Polynomial::zero();
    for (l, &x) in basis.iter().zip(pts) {
        psi0 = &psi0 + &l.scale(psi.eval(x));
    }
    let psi1 = psi - &psi0;
    let tol = 1e-10 * psi.coeff_norm().max(1.0);
    for &x in pts {
        let r = psi1.eval(x).norm();
        if r > tol {
            return Err(Error::IllConditionedNodes(condition.max(r / tol)));
        }
    }
    Ok(LagrangeSplit { basis, psi0, psi1, condition })
}

/// `ψ(ξ)` for each `ξ ∈ E`, the weights in `ψ₀(T) = Σ ψ(ξⱼ)Lⱼ(T)`.
pub fn node_values(psi: &Polynomial, e: &PeripheralSet) -> Vec<C64> {
    e.points().iter().map(|&x| psi.eval(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn single_node() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let psi = Polynomial::from_real(&[2.0, 0.0, 3.0]);
        let s = lagrange_split(&psi, &e).unwrap();
        assert_eq!(s.basis.len(), 1);
        assert!((s.basis[0].eval(c64(0.3, 0.7)) - 1.0).norm() < 1e-15);
        assert!((s.psi0.eval(c64(0.0, 0.0)) - 5.0).norm() < 1e-14);
        assert!(s.psi1.eval(c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_nodes() {
        let e = PeripheralSet::roots_of_unity(2).unwrap();
        let s = lagrange_split(&Polynomial::monomial(3), &e).unwrap();
        let z = c64(0.4, -0.2);
        // E sorted by argument puts −1 after 1
        let (l1, l2) = if e.points()[0].re > 0.0 { (&s.basis[0], &s.basis[1]) } else { (&s.basis[1], &s.basis[0]) };
        assert!((l1.eval(z) - (1.0 + z) / 2.0).norm() < 1e-15);
        assert!((l2.eval(z) - (1.0 - z) / 2.0).norm() < 1e-15);
    }

    #[test]
    fn residual_vanishes_on_nodes() {
        let e = PeripheralSet::from_angles(&[0.2, 1.0, 2.4, -1.7, -0.6]).unwrap();
        let psi = Polynomial::new((0..9).map(|k| c64(k as f64 * 0.3 - 1.0, 0.5 / (k as f64 + 1.0))).collect());
        let s = lagrange_split(&psi, &e).unwrap();
        for &x in e.points() {
            assert!(s.psi1.eval(x).norm() < 1e-12);
        }
        for l in &s.basis {
            assert!(l.degree() <= 4);
        }
    }
}
