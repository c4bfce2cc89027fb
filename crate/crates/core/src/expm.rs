//! Matrix exponential by scaling and squaring with the degree-13 Padé
//! approximant (Higham 2005 coefficients).

use crate::error::Error;
use crate::linalg::CMat;
use crate::{Result, C64};

/// Degree-13 diagonal Padé numerator coefficients.
const B13: [f64; 14] = [
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

/// 1-norm bound under which the unscaled degree-13 approximant is accurate to
/// double precision.
const THETA_13: f64 = 5.371920351148152;

/// `exp(A)` with at most `max_squarings` halving steps.
pub fn expm(a: &CMat, max_squarings: u32) -> Result<CMat> {
    assert!(a.is_square(), "expm needs a square matrix");
    if !a.is_finite() {
        return Err(Error::NonFinite { context: "matrix exponential input".into() });
    }
    let norm = a.norm_one();
    let s: u32 = if norm > THETA_13 {
        libm::ceil(libm::log2(norm / THETA_13)) as u32
    } else {
        0
    };
    if s > max_squarings {
        return Err(Error::ScalingOverflow { exponent: s, bound: max_squarings });
    }
    let scaled = a.scale(C64::new(libm::exp2(-(s as f64)), 0.0));
    let mut x = pade13(&scaled)?;
    for _ in 0..s {
        x = x.mul(&x);
    }
    Ok(x)
}

fn pade13(a: &CMat) -> Result<CMat> {
    let n = a.rows();
    let id = CMat::identity(n);
    let a2 = a.mul(a);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);

    let re = |x: f64| C64::new(x, 0.0);
    let u_inner = a6
        .mul(&a6.scale(re(B13[13])).add(&a4.scale(re(B13[11]))).add(&a2.scale(re(B13[9]))))
        .add(&a6.scale(re(B13[7])))
        .add(&a4.scale(re(B13[5])))
        .add(&a2.scale(re(B13[3])))
        .add(&id.scale(re(B13[1])));
    let u = a.mul(&u_inner);
    let v = a6
        .mul(&a6.scale(re(B13[12])).add(&a4.scale(re(B13[10]))).add(&a2.scale(re(B13[8]))))
        .add(&a6.scale(re(B13[6])))
        .add(&a4.scale(re(B13[4])))
        .add(&a2.scale(re(B13[2])))
        .add(&id.scale(re(B13[0])));

    // (V - U) X = (V + U)
    v.sub(&u)
        .lu_solve(&v.add(&u))
        .ok_or(Error::NonFinite { context: "singular Pade denominator".into() })
}
