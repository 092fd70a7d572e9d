use serde::{Deserialize, Serialize};

use crate::domains::Region;
use crate::{Error, Result, C64};

/// Boundary branch of a sector: `+` is `ξ(1 − t e^{−iω})`, `−` is `ξ(1 − t e^{iω})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// `Σ(ξ, ω) = ξ(1 − Σ_ω)`: open sector with vertex `ξ`, half-angle `ω`, opening toward 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub vertex: C64,
    pub half_angle: f64,
}

impl Sector {
    pub fn new(vertex: C64, half_angle: f64) -> Result<Self> {
        if vertex.norm() == 0.0 || !vertex.re.is_finite() || !vertex.im.is_finite() {
            return Err(Error::InvalidInput("sector vertex must be a nonzero number".into()));
        }
        if !(half_angle > 0.0 && half_angle < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidInput(format!("half-angle {half_angle} outside (0, π/2)")));
        }
        Ok(Self { vertex, half_angle })
    }

    /// Pull-back `λ = 1 − z/ξ`, which equals `1 − ξ̄z` for unimodular `ξ`.
    pub fn pullback(&self, z: C64) -> C64 {
        C64::new(1.0, 0.0) - z / self.vertex
    }

    pub fn branch_point(&self, branch: Branch, t: f64) -> C64 {
        let s = match branch {
            Branch::Plus => -self.half_angle,
            Branch::Minus => self.half_angle,
        };
        self.vertex * (C64::new(1.0, 0.0) - C64::from_polar(t, s))
    }

    /// Unit direction of a boundary branch.
    pub fn branch_direction(&self, branch: Branch) -> C64 {
        self.branch_point(branch, 1.0) - self.vertex
    }
}

impl Region for Sector {
    fn contains(&self, z: C64, closure: bool) -> bool {
        let l = self.pullback(z);
        if l.norm() <= 1e-15 {
            return closure;
        }
        let a = l.arg().abs();
        if closure {
            a <= self.half_angle + 1e-12
        } else {
            a < self.half_angle
        }
    }
}

/// Standard sector `Σ_ω = {λ ≠ 0 : |Arg λ| < ω}`.
pub fn in_standard_sector(lambda: C64, omega: f64, closure: bool) -> bool {
    if lambda.norm() == 0.0 {
        return closure;
    }
    if closure {
        lambda.arg().abs() <= omega
    } else {
        lambda.arg().abs() < omega
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    #[test]
    fn arg_test() {
        let s = Sector::new(c64(1.0, 0.0), PI / 4.0).unwrap();
        let z = c64(1.0, 0.0) - C64::from_polar(1.0, PI / 3.0);
        assert!(!s.contains(z, false));
        let z = c64(1.0, 0.0) - C64::from_polar(1.0, PI / 5.0);
        assert!(s.contains(z, false));
        assert!(s.contains(c64(0.0, 0.0), false));
    }

    #[test]
    fn vertex_only_in_closure() {
        let s = Sector::new(c64(0.0, 1.0), 1.0).unwrap();
        assert!(!s.contains(c64(0.0, 1.0), false));
        assert!(s.contains(c64(0.0, 1.0), true));
    }

    #[test]
    fn branches_are_on_boundary() {
        let s = Sector::new(C64::from_polar(0.8, 2.0), 1.1).unwrap();
        for b in [Branch::Plus, Branch::Minus] {
            let z = s.branch_point(b, 0.37);
            assert!((s.pullback(z).arg().abs() - 1.1).abs() < 1e-12);
        }
        // the + branch leaves the vertex on its counterclockwise side
        let v = s.vertex;
        let plus = s.branch_direction(Branch::Plus);
        assert!((plus / -v).arg() < 0.0);
    }

    #[test]
    fn rejects_bad_angles() {
        assert!(Sector::new(c64(1.0, 0.0), 1.6).is_err());
        assert!(Sector::new(c64(0.0, 0.0), 1.0).is_err());
    }
}
