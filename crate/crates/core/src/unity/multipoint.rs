use serde::{Deserialize, Serialize};

use crate::domains::PeripheralSet;
use crate::unity::family::SectorFamily;
use crate::C64;

/// `θ_ι(z) = ∏ⱼ Θ_{iⱼ}(1 − ξ̄ⱼz)` and likewise `φ_ι`, `ψ_ι`, for `z ∈ 𝔻`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiIndexTerm {
    pub iota: Vec<i64>,
    pub xi: Vec<C64>,
    pub family: SectorFamily,
}

pub fn compose_multipoint(family: &SectorFamily, e: &PeripheralSet, iota: &[i64]) -> MultiIndexTerm {
    assert_eq!(iota.len(), e.len(), "one index per point of E");
    assert!(iota.iter().all(|n| n.unsigned_abs() as usize <= family.m), "index outside the truncation");
    MultiIndexTerm { iota: iota.to_vec(), xi: e.points().to_vec(), family: family.clone() }
}

impl MultiIndexTerm {
    fn lambdas(&self, z: C64) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.iota.iter().zip(&self.xi).map(move |(&n, x)| (n, C64::new(1.0, 0.0) - x.conj() * z))
    }

    pub fn theta(&self, z: C64) -> C64 {
        self.lambdas(z).map(|(n, l)| self.family.theta(n, l)).product()
    }

    pub fn phi(&self, z: C64) -> C64 {
        self.lambdas(z).map(|(n, l)| self.family.phi(n, l)).product()
    }

    pub fn psi(&self, z: C64) -> C64 {
        self.lambdas(z).map(|(n, l)| self.family.psi(n, l)).product()
    }

    /// `θ_ιφ_ιψ_ι(z)`.
    pub fn unity_term(&self, z: C64) -> C64 {
        self.lambdas(z)
            .map(|(n, l)| {
                let s = self.family.phi(n, l);
                s * s * s / self.family.h(l)
            })
            .product()
    }
}

/// Every multi-index in `[−k, k]^N`, in lexicographic order.
pub fn multi_indices(n_points: usize, k: usize) -> Vec<Vec<i64>> {
    let side = 2 * k + 1;
    let count = side.pow(n_points as u32);
    (0..count)
        .map(|mut c| {
            let mut iota = vec![0i64; n_points];
            for slot in iota.iter_mut().rev() {
                *slot = (c % side) as i64 - k as i64;
                c /= side;
            }
            iota
        })
        .collect()
}

/// Multi-indices sorted by `max |iⱼ|`, then `Σ|iⱼ|`, then lexicographically.
pub fn multi_indices_by_scale(n_points: usize, k: usize) -> Vec<Vec<i64>> {
    let mut all = multi_indices(n_points, k);
    all.sort_by_key(|iota| {
        let mx = iota.iter().map(|n| n.abs()).max().unwrap_or(0);
        let sum: i64 = iota.iter().map(|n| n.abs()).sum();
        (mx, sum, iota.clone())
    });
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::unity::family::default_family;

    #[test]
    fn single_point_is_pullback() {
        let f = default_family(4).unwrap();
        let e = PeripheralSet::new(vec![c64(1.0, 0.0)]).unwrap();
        let t = compose_multipoint(&f, &e, &[2]);
        for z in [c64(0.3, 0.1), c64(-0.5, 0.5), c64(0.9, 0.0)] {
            assert_eq!(t.theta(z), f.theta(2, c64(1.0, 0.0) - z));
        }
    }

    #[test]
    fn origin_is_finite() {
        let f = default_family(4).unwrap();
        let e = PeripheralSet::roots_of_unity(3).unwrap();
        let t = compose_multipoint(&f, &e, &[0, -1, 3]);
        let expect = f.theta(0, c64(1.0, 0.0)) * f.theta(-1, c64(1.0, 0.0)) * f.theta(3, c64(1.0, 0.0));
        assert!((t.theta(c64(0.0, 0.0)) - expect).norm() < 1e-15);
        assert!(expect.is_finite());
    }

    #[test]
    fn expansion_matches_product_of_sums() {
        // ∏ⱼ(Σₙ ΘΦΨ)(λⱼ) expanded term by term
        for (npts, m) in [(1usize, 4usize), (2, 3), (3, 2), (3, 4)] {
            let f = default_family(m).unwrap();
            let e = PeripheralSet::roots_of_unity(npts).unwrap();
            for z in [c64(0.2, -0.3), c64(-0.6, 0.1), c64(0.0, 0.95)] {
                let expanded: C64 = multi_indices(npts, m)
                    .iter()
                    .map(|iota| compose_multipoint(&f, &e, iota).unity_term(z))
                    .sum();
                assert!((expanded - 1.0).norm() < 1e-12, "N = {npts}, M = {m}: {expanded}");
            }
        }
    }

    #[test]
    fn index_enumeration() {
        let all = multi_indices(2, 1);
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![-1, -1]);
        assert_eq!(all[8], vec![1, 1]);
        assert_eq!(multi_indices_by_scale(2, 2)[0], vec![0, 0]);
    }
}
