use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::linalg::{mat_poly, ComplexMatrix, Polynomial};
use crate::C64;

/// `Σ c[i][j] λⁱ zʲ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivariatePolynomial {
    pub coeffs: Vec<Vec<C64>>,
}

impl BivariatePolynomial {
    pub fn eval(&self, lambda: C64, z: C64) -> C64 {
        self.in_z(lambda).eval(z)
    }

    /// The polynomial in `z` obtained by fixing `λ`.
    pub fn in_z(&self, lambda: C64) -> Polynomial {
        let width = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![C64::new(0.0, 0.0); width.max(1)];
        let mut pw = C64::new(1.0, 0.0);
        for row in &self.coeffs {
            for (o, c) in out.iter_mut().zip(row) {
                *o += c * pw;
            }
            pw *= lambda;
        }
        Polynomial::new(out)
    }

    /// `Q(λ, T) = Σⱼ (Σᵢ cᵢⱼλⁱ) Tʲ`.
    pub fn eval_matrix(&self, lambda: C64, t: &ComplexMatrix) -> ComplexMatrix {
        mat_poly(&self.in_z(lambda), t)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertFactor {
    /// `P(λ,z) = ∏(ξⱼ−λ) − ∏(ξⱼ−z)`.
    pub p: BivariatePolynomial,
    pub q: BivariatePolynomial,
    /// Largest remainder coefficient of the division of `P` by `λ − z`.
    pub remainder: f64,
}

/// Divides `P(λ,z) = v(λ) − v(z)`, `v = ∏(ξⱼ − ·)`, by `λ − z`.
///
/// Writing `P = Σᵢ pᵢ(z)λⁱ`, synthetic division in `λ` with root `z` gives
/// `q_{d−1} = p_d`, `q_{i−1} = pᵢ + z·qᵢ`, remainder `p₀ + z·q₀`.
pub fn seifert_q(e: &PeripheralSet) -> SeifertFactor {
    let v = Polynomial::vanishing(e.points());
    let a = v.coeffs();
    let d = a.len() - 1;
    let zero = C64::new(0.0, 0.0);
    // p_i(z) as coefficient vectors in z
    let mut p: Vec<Vec<C64>> = (0..=d).map(|i| if i == 0 { vec![zero; d + 1] } else { vec![a[i]] }).collect();
    for (k, ak) in a.iter().enumerate() {
        if k == 0 {
            p[0][0] = zero;
        } else {
            p[0][k] = -ak;
        }
    }
    let add = |x: &[C64], y: &[C64]| -> Vec<C64> {
        let mut out = vec![zero; x.len().max(y.len())];
        for (o, c) in out.iter_mut().zip(x) {
            *o += c;
        }
        for (o, c) in out.iter_mut().zip(y) {
            *o += c;
        }
        out
    };
    let times_z = |x: &[C64]| -> Vec<C64> {
        let mut out = vec![zero];
        out.extend_from_slice(x);
        out
    };
    let mut q: Vec<Vec<C64>> = vec![Vec::new(); d.max(1)];
    let remainder;
    if d == 0 {
        q[0] = vec![zero];
        remainder = p[0].iter().map(|c| c.norm()).fold(0.0, f64::max);
    } else {
        q[d - 1] = p[d].clone();
        for i in (1..d).rev() {
            q[i - 1] = add(&p[i], &times_z(&q[i]));
        }
        remainder = add(&p[0], &times_z(&q[0])).iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    SeifertFactor { p: BivariatePolynomial { coeffs: p }, q: BivariatePolynomial { coeffs: q }, remainder }
}

/// Both sides of `λⁿv(λ) − Tⁿv(T) = (λ−T)v(λ)Σ_{k<n}λ^{n−1−k}Tᵏ + Tⁿ(λ−T)Q(λ,T)`:
/// returns the residual norm and the largest term norm.
pub fn seifert_identity_residual(t: &ComplexMatrix, e: &PeripheralSet, q: &BivariatePolynomial, lambda: C64, n: usize) -> (f64, f64) {
    let v = Polynomial::vanishing(e.points());
    let dim = t.dim();
    let vl = v.eval(lambda);
    let vt = mat_poly(&v, t);
    let tn = t.powi(n as u32);
    let lhs = &ComplexMatrix::identity(dim).scale(lambda.powi(n as i32) * vl) - &tn.matmul(&vt);
    let lm = t.scale_real(-1.0).shift(lambda);
    let mut sum = ComplexMatrix::zeros(dim);
    let mut tk = ComplexMatrix::identity(dim);
    for k in 0..n {
        sum = &sum + &tk.scale(lambda.powi((n - 1 - k) as i32));
        tk = tk.matmul(t);
    }
    let first = lm.matmul(&sum).scale(vl);
    let second = tn.matmul(&lm).matmul(&q.eval_matrix(lambda, t));
    let rhs = &first + &second;
    let scale = [lhs.norm_fro(), first.norm_fro(), second.norm_fro(), tn.matmul(&vt).norm_fro()]
        .into_iter()
        .fold(0.0, f64::max);
    ((&lhs - &rhs).norm_fro(), scale)
}
