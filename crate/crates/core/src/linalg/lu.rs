use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

/// Default cap on the 1-norm condition estimate of `zI − T`.
pub const DEFAULT_CONDITION_CAP: f64 = 1e12;

/// Partially pivoted LU factorization `PA = LU`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Factorizes `a`; fails when a pivot vanishes relative to `‖a‖₁`.
    pub fn factor(a: &ComplexMatrix) -> std::result::Result<Self, usize> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.norm_1().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= f64::EPSILON * scale * 0.5 {
                return Err(k);
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.dim()
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [C64]) {
        let n = self.dim();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        b.copy_from_slice(&x);
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut inv = ComplexMatrix::zeros(n);
        let mut col = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            col.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
            col[j] = C64::new(1.0, 0.0);
            self.solve_in_place(&mut col);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Resolvent value together with its conditioning diagnostics.
#[derive(Clone, Debug)]
pub struct Resolvent {
    pub value: ComplexMatrix,
    /// 1-norm condition number `‖zI−T‖₁‖R‖₁`.
    pub condition: f64,
    /// Set when `condition` exceeds the configured cap.
    pub ill_conditioned: bool,
}

/// `R(z,T) = (zI − T)⁻¹` with conditioning diagnostics.
pub fn resolvent_checked(t: &ComplexMatrix, z: C64, cap: f64) -> Result<Resolvent> {
    let a = (-t).shift(z);
    let lu = Lu::factor(&a).map_err(|_| Error::Singular { re: z.re, im: z.im })?;
    let value = lu.inverse();
    if !value.is_finite() {
        return Err(Error::Singular { re: z.re, im: z.im });
    }
    let condition = a.norm_1() * value.norm_1();
    Ok(Resolvent { value, condition, ill_conditioned: condition > cap })
}

/// `R(z,T) = (zI − T)⁻¹`; the conditioning flag is dropped.
pub fn resolvent(t: &ComplexMatrix, z: C64) -> Result<ComplexMatrix> {
    resolvent_checked(t, z, DEFAULT_CONDITION_CAP).map(|r| r.value)
}

/// Relative residual of `R(z) − R(w) = (w − z)R(z)R(w)`.
pub fn resolvent_identity_residual(t: &ComplexMatrix, z: C64, w: C64) -> Result<f64> {
    let rz = resolvent(t, z)?;
    let rw = resolvent(t, w)?;
    let lhs = &rz - &rw;
    let rhs = rz.matmul(&rw).scale(w - z);
    let scale = lhs.norm_fro().max(rhs.norm_fro()).max(f64::MIN_POSITIVE);
    Ok((&lhs - &rhs).norm_fro() / scale)
}

/// Solves `a x = b` for a general square `a`.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    let lu = Lu::factor(a).map_err(|_| Error::Singular { re: 0.0, im: 0.0 })?;
    let mut x = b.to_vec();
    lu.solve_in_place(&mut x);
    Ok(x)
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = Lu::factor(a).map_err(|_| Error::Singular { re: 0.0, im: 0.0 })?;
    Ok(lu.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::{norm2, random_matrix};

    #[test]
    fn zero_operator() {
        let r = resolvent(&ComplexMatrix::zeros(3), c64(2.0, 0.0)).unwrap();
        let d = &r - &ComplexMatrix::identity(3).scale_real(0.5);
        assert!(d.max_abs() < 1e-16);
    }

    #[test]
    fn scalar_case() {
        let t = ComplexMatrix::from_diag(&[c64(0.5, 0.0)]);
        let r = resolvent(&t, c64(1.0, 0.0)).unwrap();
        assert!((r[(0, 0)] - c64(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn residual_random() {
        let t = random_matrix(6, 11, 1.0);
        let z = c64(3.0, 0.0);
        let x = resolvent(&t, z).unwrap();
        let res = &(-&t).shift(z).matmul(&x) - &ComplexMatrix::identity(6);
        assert!(norm2(&res) <= 1e-10 * norm2(&x));
    }

    #[test]
    fn identity_residual_of_a_diagonal() {
        let t = ComplexMatrix::from_diag(&[c64(0.5, 0.0), c64(0.0, 0.3)]);
        let res = resolvent_identity_residual(&t, c64(1.5, 0.2), c64(-0.4, 1.1)).unwrap();
        assert!(res < 1e-15);
    }

    #[test]
    fn singular_point_is_reported() {
        let t = ComplexMatrix::from_diag(&[c64(0.5, 0.0), c64(0.2, 0.0)]);
        assert!(matches!(resolvent(&t, c64(0.5, 0.0)), Err(Error::Singular { .. })));
    }

    #[test]
    fn near_singular_point_flags_conditioning() {
        let t = ComplexMatrix::jordan(c64(1.0, 0.0), 3);
        let r = resolvent_checked(&t, c64(1.0 + 1e-5, 0.0), DEFAULT_CONDITION_CAP).unwrap();
        assert!(r.ill_conditioned);
    }
}
