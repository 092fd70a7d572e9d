use crate::linalg::{inverse, norm2, ComplexMatrix};
use crate::{Error, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Largest ‖A‖₂ accepted by [`mat_exp`].
pub const EXP_NORM_CAP: f64 = 1e4;

/// `e^A` by scaling and squaring around the degree-13 Padé approximant.
pub fn mat_exp(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let nrm = norm2(a);
    if nrm > EXP_NORM_CAP {
        return Err(Error::Overflow(format!("‖A‖₂ = {nrm:e} exceeds {EXP_NORM_CAP:e}")));
    }
    let n = a.dim();
    let n1 = a.norm_1();
    let s = if n1 > THETA13 { (n1 / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale_real(0.5f64.powi(s));
    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = &PADE13;
    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| {
        &(&(&a6.scale_real(c6) + &a4.scale_real(c4)) + &a2.scale_real(c2)) + &id.scale_real(c0)
    };
    let u_inner = &a6.matmul(&lin(b[13], b[11], b[9], 0.0)) + &lin(b[7], b[5], b[3], b[1]);
    let u = a.matmul(&u_inner);
    let v = &a6.matmul(&lin(b[12], b[10], b[8], 0.0)) + &lin(b[6], b[4], b[2], b[0]);
    let mut x = inverse(&(&v - &u))?.matmul(&(&v + &u));
    for _ in 0..s {
        x = x.matmul(&x);
    }
    if !x.is_finite() {
        return Err(Error::Overflow("exponential is not finite".into()));
    }
    Ok(x)
}
