use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Tolerance on `||ξ| − 1|` for points of a peripheral set.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Smallest admissible distance between two points of a peripheral set.
pub const MIN_SEPARATION: f64 = 1e-8;

/// Finite subset of the unit circle, sorted counterclockwise by principal argument.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct PeripheralSet {
    points: Vec<C64>,
}

impl TryFrom<Vec<C64>> for PeripheralSet {
    type Error = Error;

    fn try_from(v: Vec<C64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PeripheralSet> for Vec<C64> {
    fn from(e: PeripheralSet) -> Self {
        e.points
    }
}

impl PeripheralSet {
    pub fn new(mut points: Vec<C64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("E must contain at least one point".into()));
        }
        for z in &points {
            if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
                return Err(Error::InvalidInput(format!("{z} is not on the unit circle")));
            }
        }
        points.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if (points[i] - points[j]).norm() <= MIN_SEPARATION {
                    return Err(Error::Degenerate(format!(
                        "points {} and {} coincide",
                        points[i], points[j]
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    /// Builds the set from arguments in radians.
    pub fn from_angles(angles: &[f64]) -> Result<Self> {
        Self::new(angles.iter().map(|&a| C64::from_polar(1.0, a)).collect())
    }

    /// The `k`-th roots of unity.
    pub fn roots_of_unity(k: usize) -> Result<Self> {
        Self::from_angles(&(0..k).map(|j| TAU * j as f64 / k as f64).collect::<Vec<_>>())
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn args(&self) -> Vec<f64> {
        self.points.iter().map(|z| z.arg()).collect()
    }

    /// Counterclockwise angular gap from `ξⱼ` to `ξⱼ₊₁`, in `(0, 2π]`.
    pub fn gap(&self, j: usize) -> f64 {
        let n = self.points.len();
        if n == 1 {
            return TAU;
        }
        let a = self.points[j].arg();
        let b = self.points[(j + 1) % n].arg();
        let g = (b - a).rem_euclid(TAU);
        if g == 0.0 {
            TAU
        } else {
            g
        }
    }

    pub fn min_gap(&self) -> f64 {
        (0..self.len()).map(|j| self.gap(j)).fold(TAU, f64::min)
    }

    pub fn min_separation(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                m = m.min((self.points[i] - self.points[j]).norm());
            }
        }
        m
    }

    /// `e^{iβ}E`.
    pub fn rotate(&self, beta: f64) -> Self {
        let w = C64::from_polar(1.0, beta);
        Self::new(self.points.iter().map(|z| (z * w) / (z * w).norm()).collect())
            .expect("rotation preserves validity")
    }

    /// Index and distance of the point nearest to `z`.
    pub fn nearest(&self, z: C64) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(j, x)| (j, (x - z).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    /// `∏ⱼ |ξⱼ − z|`.
    pub fn vanishing_abs(&self, z: C64) -> f64 {
        self.points.iter().map(|x| (x - z).norm()).product()
    }

    /// `∏ⱼ (ξⱼ − z)`.
    pub fn vanishing(&self, z: C64) -> C64 {
        self.points.iter().map(|x| x - z).product()
    }

    /// Orders `k` of root-of-unity groups whose union is `E`, if such a cover exists.
    ///
    /// Each point needs the group of its own order; groups contained in a larger one are dropped.
    pub fn root_of_unity_orders(&self) -> Option<Vec<usize>> {
        let mut orders = Vec::new();
        for z in &self.points {
            let a = z.arg().rem_euclid(TAU);
            let k = (1..=720usize).find(|&k| {
                let m = a * k as f64 / TAU;
                (m - m.round()).abs() < 1e-9
            })?;
            let inside = (0..k).all(|j| {
                let g = C64::from_polar(1.0, TAU * j as f64 / k as f64);
                self.points.iter().any(|x| (g - x).norm() < 1e-9)
            });
            if !inside {
                return None;
            }
            orders.push(k);
        }
        orders.sort_unstable();
        orders.dedup();
        let all = orders.clone();
        orders.retain(|&k| !all.iter().any(|&m| m != k && m % k == 0));
        Some(orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    #[test]
    fn sorted_by_argument() {
        let e = PeripheralSet::new(vec![c64(-1.0, 0.0), c64(0.0, -1.0), c64(1.0, 0.0)]).unwrap();
        assert_eq!(e.points(), &[c64(0.0, -1.0), c64(1.0, 0.0), c64(-1.0, 0.0)]);
        assert!((e.gap(1) - PI).abs() < 1e-15);
        assert!((e.gap(2) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(PeripheralSet::new(vec![c64(0.9, 0.0)]).is_err());
        assert!(matches!(
            PeripheralSet::new(vec![c64(1.0, 0.0), c64(1.0, 0.0)]),
            Err(Error::Degenerate(_))
        ));
        assert!(PeripheralSet::new(vec![]).is_err());
    }

    #[test]
    fn single_point_gap() {
        let e = PeripheralSet::new(vec![c64(0.0, 1.0)]).unwrap();
        assert_eq!(e.gap(0), TAU);
    }

    #[test]
    fn root_groups() {
        assert_eq!(PeripheralSet::roots_of_unity(4).unwrap().root_of_unity_orders(), Some(vec![4]));
        let e = PeripheralSet::new(vec![c64(1.0, 0.0), c64(0.0, 1.0)]).unwrap();
        assert_eq!(e.root_of_unity_orders(), None);
        let e = PeripheralSet::new(vec![c64(1.0, 0.0), c64(-1.0, 0.0)]).unwrap();
        assert_eq!(e.root_of_unity_orders(), Some(vec![2]));
        let mut pts = PeripheralSet::roots_of_unity(3).unwrap().points().to_vec();
        pts.push(c64(-1.0, 0.0));
        let orders = PeripheralSet::new(pts).unwrap().root_of_unity_orders().unwrap();
        assert_eq!(orders.len(), 2);
    }
}
