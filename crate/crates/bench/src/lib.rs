//! Fixtures shared by the kernel benchmarks.

use ritt_core::classify::{ritt_sample, ritt_type, SampleConfig};
use ritt_core::{ComplexMatrix, PeripheralSet};

pub struct Fixture {
    pub e: PeripheralSet,
    pub t: ComplexMatrix,
    /// An admissible Stolz radius for `t`.
    pub s: f64,
}

/// Certified Ritt_E matrix of size `dim` for the `n`-th roots of unity.
pub fn fixture(n: usize, dim: usize, seed: u64) -> Fixture {
    let e = PeripheralSet::roots_of_unity(n).expect("n ≥ 1");
    let t = ritt_sample(&e, &SampleConfig { dim, ..SampleConfig::default() }, seed).expect("sampler").t;
    let r = ritt_type(&t, &e, 1e-6).expect("type");
    let gap = if n > 1 { (0.5 * e.min_gap()).cos() } else { 0.0 };
    Fixture { e, t, s: 0.5 * (1.0 + r.max(gap)) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_radius_is_admissible() {
        let f = fixture(2, 6, 1);
        assert!(f.s > 0.0 && f.s < 1.0);
        assert_eq!(f.t.dim(), 6);
    }
}
