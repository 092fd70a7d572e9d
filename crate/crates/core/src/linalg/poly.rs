use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::linalg::ComplexMatrix;
use crate::{C64, Error, Result};

/// Complex polynomial with ascending coefficients; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl TryFrom<Vec<[f64; 2]>> for Polynomial {
    type Error = Error;

    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("polynomial coefficients must be finite".into()));
        }
        Ok(Polynomial::new(v.iter().map(|c| C64::new(c[0], c[1])).collect()))
    }
}

impl From<Polynomial> for Vec<[f64; 2]> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == C64::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::constant(C64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// `zⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); n + 1];
        c[n] = C64::new(1.0, 0.0);
        Self::new(c)
    }

    /// `∏ (z − rᵢ)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::new(vec![-r, C64::new(1.0, 0.0)]))
    }

    /// `∏ (ξⱼ − z)`, the vanishing product of a point set.
    pub fn vanishing(points: &[C64]) -> Self {
        points.iter().fold(Self::one(), |acc, &x| &acc * &Self::new(vec![x, C64::new(-1.0, 0.0)]))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == C64::new(0.0, 0.0)
    }

    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, a: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// `z ↦ p(a + b z)`.
    pub fn compose_affine(&self, a: C64, b: C64) -> Self {
        let lin = Self::new(vec![a, b]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * &lin) + &Self::constant(c))
    }

    /// Synthetic division by `(z − a)`: returns quotient and remainder.
    pub fn divide_linear(&self, a: C64) -> (Self, C64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut carry = C64::new(0.0, 0.0);
        for k in (1..n).rev() {
            carry = carry * a + self.coeffs[k];
            q[k - 1] = carry;
        }
        (Self::new(q), carry * a + self.coeffs[0])
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Polynomial, k: usize| p.coeffs.get(k).copied().unwrap_or_default();
        Polynomial::new((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut c = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }
}

/// `φ(T)` by Horner's scheme.
pub fn mat_poly(phi: &Polynomial, t: &ComplexMatrix) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(t.dim());
    for (k, &c) in phi.coeffs().iter().enumerate().rev() {
        acc = if k + 1 == phi.coeffs().len() { acc.shift(c) } else { acc.matmul(t).shift(c) };
    }
    acc
}
