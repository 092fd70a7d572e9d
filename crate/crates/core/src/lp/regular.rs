use serde::{Deserialize, Serialize};

use crate::classify::a_j;
use crate::domains::PeripheralSet;
use crate::linalg::{mat_exp, op_norm, ComplexMatrix, NormEstimate};
use crate::{Error, Result, C64};

/// `‖T‖_r ≤ 1 + CONTRACTIVE_TOL` counts as contractively regular.
pub const CONTRACTIVE_TOL: f64 = 1e-10;
/// Slack allowed on `‖e^{−tAⱼ}‖_r ≤ 1`.
pub const SEMIGROUP_TOL: f64 = 1e-8;

/// `‖T‖_r = ‖|T|‖_p` with `|T|` the entrywise modulus. The modulus is nonnegative, so the
/// estimate is exact.
pub fn regular_norm(t: &ComplexMatrix, p: f64) -> NormEstimate {
    op_norm(&t.modulus(), p)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularOperator {
    pub t: ComplexMatrix,
    pub p: f64,
    pub regular_norm: NormEstimate,
    pub contractively_regular: bool,
}

impl RegularOperator {
    pub fn new(t: ComplexMatrix, p: f64) -> Self {
        let regular_norm = regular_norm(&t, p);
        let contractively_regular = regular_norm.value <= 1.0 + CONTRACTIVE_TOL;
        Self { t, p, regular_norm, contractively_regular }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupEntry {
    pub j: usize,
    pub xi: C64,
    pub t: f64,
    /// `‖e^{−tAⱼ}‖_r`.
    pub regular_norm: f64,
    /// `e^{−t}e^{t‖T‖_r}`.
    pub majorant: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub t_regular_norm: f64,
    pub entries: Vec<SemigroupEntry>,
    pub max_regular_norm: f64,
    pub all_ok: bool,
}

pub const DEFAULT_T_GRID: [f64; 3] = [0.1, 1.0, 10.0];

/// `‖e^{−tAⱼ}‖_r` for `Aⱼ = I − ξ̄ⱼT` over every `ξⱼ ∈ E` and every `t` in the grid.
pub fn semigroup_regular_check(t: &ComplexMatrix, e: &PeripheralSet, p: f64, t_grid: &[f64]) -> Result<SemigroupReport> {
    let tr = regular_norm(t, p).value;
    if tr > 1.0 + CONTRACTIVE_TOL {
        return Err(Error::NotContractive(tr));
    }
    let mut entries = Vec::with_capacity(e.len() * t_grid.len());
    for (j, &xi) in e.points().iter().enumerate() {
        let a = a_j(t, xi);
        for &s in t_grid {
            let g = mat_exp(&a.scale_real(-s))?;
            let rn = regular_norm(&g, p).value;
            entries.push(SemigroupEntry {
                j,
                xi,
                t: s,
                regular_norm: rn,
                majorant: (-s).exp() * (s * tr).exp(),
                ok: rn <= 1.0 + SEMIGROUP_TOL,
            });
        }
    }
    let max_regular_norm = entries.iter().map(|x| x.regular_norm).fold(0.0, f64::max);
    let all_ok = entries.iter().all(|x| x.ok);
    Ok(SemigroupReport { t_regular_norm: tr, entries, max_regular_norm, all_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::linalg::random_matrix;

    #[test]
    fn nonnegative_is_its_own_modulus() {
        let t = ComplexMatrix::from_real_rows(&[vec![0.2, 0.5, 0.0], vec![0.1, 0.0, 0.6], vec![0.3, 0.3, 0.1]]).unwrap();
        for p in [1.5, 2.0, 3.0] {
            assert!((regular_norm(&t, p).value - op_norm(&t, p).value).abs() < 1e-10);
        }
    }

    #[test]
    fn phases_drop_out() {
        let t = ComplexMatrix::from_diag(&[C64::from_polar(0.3, 1.0), C64::from_polar(0.8, -2.0), C64::from_polar(0.5, 0.4)]);
        assert!((regular_norm(&t, 3.0).value - 0.8).abs() < 1e-10);
    }

    #[test]
    fn near_one_is_column_sum() {
        let signs = [[1.0, -1.0, 1.0], [-1.0, -1.0, 1.0], [1.0, 1.0, -1.0]];
        let vals = [[0.2, 0.1, 0.4], [0.3, 0.5, 0.1], [0.1, 0.2, 0.2]];
        let rows: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| signs[i][j] * vals[i][j]).collect()).collect();
        let t = ComplexMatrix::from_real_rows(&rows).unwrap();
        let col_max = t.modulus().norm_1();
        assert!((regular_norm(&t, 1.0001).value - col_max).abs() < 1e-3 * col_max);
    }

    #[test]
    fn dominates_operator_norm() {
        for seed in 0..5 {
            let t = random_matrix(5, seed, 1.0);
            for p in [1.5, 2.0, 4.0] {
                assert!(op_norm(&t, p).value <= regular_norm(&t, p).value * (1.0 + 1e-8));
            }
        }
    }

    #[test]
    fn identity_semigroup_is_identity() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let rep = semigroup_regular_check(&ComplexMatrix::identity(3), &e, 3.0, &[0.0, 0.1, 1.0, 10.0]).unwrap();
        for x in &rep.entries {
            assert!((x.regular_norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_expansive() {
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let t = ComplexMatrix::identity(2).scale(c64(1.1, 0.0));
        assert!(matches!(semigroup_regular_check(&t, &e, 2.0, &DEFAULT_T_GRID), Err(Error::NotContractive(_))));
    }
}
