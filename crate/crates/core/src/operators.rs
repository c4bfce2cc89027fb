//! Constructors for the operator zoo: displacement `D(z)`, generalized
//! displacement `D_m(z)`, the diagonal parity pair `cos/sin(pi/m a†a)`, the
//! parity-displacement `B_m(z)`, the evolution-like unitaries
//! `U_m(lambda; z)` and the superposition generators `V_m(lambda; z, u)`.

use alloc::format;

use crate::error::Error;
use crate::fock::{diag_fn_re, exp_i_hermitian, ladder_ops, mat_exp, Op};
use crate::space::FockSpace;
use crate::{Result, C64};

/// Largest `|z|` accepted for `m >= 3` without an explicit override.
///
/// `D_m` with `m >= 3` exponentiates a degree-m unbounded generator whose
/// truncated result is truncation-defined; beyond this radius a convergence
/// diagnostic must vouch for the parameters first.
pub const DEFAULT_SAFE_RADIUS: f64 = 0.25;

/// Parameter bundle for the generalized constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    /// Order of the generalized construction, `m >= 1`.
    pub m: u32,
    pub z: C64,
    /// Second amplitude, used by the `V` operators.
    pub u: C64,
    /// Real evolution parameter.
    pub lambda: f64,
}

impl OperatorParams {
    pub fn new(m: u32, z: C64) -> Self {
        OperatorParams { m, z, u: C64::new(0.0, 0.0), lambda: 0.0 }
    }
}

/// Enforce the default safe radius for `m >= 3`.
pub fn ensure_safe_radius(m: u32, z: C64) -> Result<()> {
    check_radius(m, z, DEFAULT_SAFE_RADIUS)
}

fn check_radius(m: u32, z: C64, safe_radius: f64) -> Result<()> {
    if m >= 3 && z.norm() > safe_radius {
        return Err(Error::RadiusExceeded { m, abs_z: z.norm(), safe_radius });
    }
    Ok(())
}

/// `m`-fold power of an operator matrix.
fn op_pow(base: &Op, m: u32) -> Op {
    let mut out = Op::identity(base.space);
    for _ in 0..m {
        out = out.mul(base).expect("same space");
    }
    out
}

/// The displacement operator `D(z) = exp(z a† - z* a)`.
pub fn displacement(space: FockSpace, z: C64) -> Op {
    generalized_displacement_unchecked(space, 1, z)
        .expect("displacement generator has finite norm")
        .relabel(format!("D({z})"))
}

/// The `m` generalized displacement operator
/// `D_m(z) = exp(((-1)^m / m)(z* a^m - z (a†)^m))`.
///
/// `D_1(z)` is the displacement operator and `D_2(z)` the squeeze operator of
/// squeeze parameter `|z|`. For `m >= 3` the safe radius is enforced; use
/// [`generalized_displacement_unchecked`] after a convergence diagnostic.
pub fn generalized_displacement(space: FockSpace, m: u32, z: C64) -> Result<Op> {
    check_radius(m, z, DEFAULT_SAFE_RADIUS)?;
    generalized_displacement_unchecked(space, m, z)
}

/// [`generalized_displacement`] without the safe-radius guard.
pub fn generalized_displacement_unchecked(space: FockSpace, m: u32, z: C64) -> Result<Op> {
    assert!(m >= 1, "m must be a positive integer");
    let (a, _, _) = ladder_ops(space);
    let am = op_pow(&a, m);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let coeff = C64::new(sign / m as f64, 0.0);
    let generator = am
        .scale(coeff * z.conj())
        .sub(&am.adjoint().scale(coeff * z))
        .expect("same space");
    Ok(mat_exp(&generator)?.relabel(format!("D_{m}({z})")))
}

/// `cos(pi n / m)` evaluated through its residue class mod `2m`, so that the
/// antiperiodicity `cos(pi (n+m)/m) = -cos(pi n/m)` holds bit-exactly and the
/// anticommutators with `a^m` cancel to zero in floating point.
pub fn parity_cos_value(m: u32, n: usize) -> f64 {
    let r = n % (2 * m as usize);
    let (k, sign) = if r < m as usize { (r, 1.0) } else { (r - m as usize, -1.0) };
    sign * libm::cos(core::f64::consts::PI * k as f64 / m as f64)
}

/// `sin(pi n / m)` with the same bit-exact antiperiodic extension.
pub fn parity_sin_value(m: u32, n: usize) -> f64 {
    let r = n % (2 * m as usize);
    let (k, sign) = if r < m as usize { (r, 1.0) } else { (r - m as usize, -1.0) };
    sign * libm::sin(core::f64::consts::PI * k as f64 / m as f64)
}

/// `diag(cos(pi n / m))`; the parity operator when `m = 1`.
pub fn parity_cos(space: FockSpace, m: u32) -> Op {
    assert!(m >= 1);
    diag_fn_re(space, format!("cos(pi/{m} a†a)"), move |n| parity_cos_value(m, n))
}

/// `diag(sin(pi n / m))`; vanishes identically when `m = 1`.
pub fn parity_sin(space: FockSpace, m: u32) -> Op {
    assert!(m >= 1);
    diag_fn_re(space, format!("sin(pi/{m} a†a)"), move |n| parity_sin_value(m, n))
}

/// `exp(i pi/m a†a)`, the rotation that sends `a` to `e^{i pi/m} a`.
pub fn number_rotation(space: FockSpace, m: u32) -> Op {
    assert!(m >= 1);
    crate::fock::diag_fn_op(space, format!("exp(i pi/{m} a†a)"), move |n| {
        C64::new(0.0, core::f64::consts::PI * n as f64 / m as f64).exp()
    })
}

/// The `m` parity-displacement operator `B_m(z) = D_m(z) cos(pi/m a†a)`;
/// edge-safe hermitian for every `m`, additionally unitary for `m = 1`.
pub fn parity_displacement(space: FockSpace, m: u32, z: C64) -> Result<Op> {
    let d = generalized_displacement(space, m, z)?;
    Ok(d.mul(&parity_cos(space, m))?.relabel(format!("B_{m}({z})")))
}

/// [`parity_displacement`] without the safe-radius guard.
pub fn parity_displacement_unchecked(space: FockSpace, m: u32, z: C64) -> Result<Op> {
    let d = generalized_displacement_unchecked(space, m, z)?;
    Ok(d.mul(&parity_cos(space, m))?.relabel(format!("B_{m}({z})")))
}

/// Construction route for `U_m(lambda; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UMethod {
    /// `exp(i lambda B_m(z))` through the hermitian eigendecomposition.
    Exponential,
    /// `cos(lambda cos(pi/m a†a)) + i D_m(z) sin(lambda cos(pi/m a†a))`.
    ClosedForm,
}

/// The evolution-like unitary `U_m(lambda; z)`; the two methods must agree to
/// edge residual 1e-8, which the verify suite enforces.
pub fn u_evolution(
    space: FockSpace,
    m: u32,
    z: C64,
    lambda: f64,
    method: UMethod,
) -> Result<Op> {
    check_radius(m, z, DEFAULT_SAFE_RADIUS)?;
    u_evolution_unchecked(space, m, z, lambda, method)
}

/// [`u_evolution`] without the safe-radius guard.
pub fn u_evolution_unchecked(
    space: FockSpace,
    m: u32,
    z: C64,
    lambda: f64,
    method: UMethod,
) -> Result<Op> {
    let label = format!("U_{m}({lambda};{z})");
    let out = match method {
        UMethod::Exponential => {
            let b = parity_displacement_unchecked(space, m, z)?;
            exp_i_hermitian(&b, lambda)?
        }
        UMethod::ClosedForm => {
            let cos_part = diag_fn_re(space, "cos(lambda cos)", move |n| {
                libm::cos(lambda * parity_cos_value(m, n))
            });
            let sin_part = diag_fn_re(space, "sin(lambda cos)", move |n| {
                libm::sin(lambda * parity_cos_value(m, n))
            });
            let d = generalized_displacement_unchecked(space, m, z)?;
            cos_part.add(&d.mul(&sin_part)?.scale(C64::new(0.0, 1.0)))?
        }
    };
    Ok(out.relabel(label))
}

/// `V_m(lambda; z, u) = D_m(u/2) U_m(lambda; z) D_m(u/2)`, built strictly as
/// the triple product — the only construction valid for every `m`.
pub fn v_operator(space: FockSpace, m: u32, z: C64, u: C64, lambda: f64) -> Result<Op> {
    check_radius(m, z, DEFAULT_SAFE_RADIUS)?;
    check_radius(m, u / 2.0, DEFAULT_SAFE_RADIUS)?;
    v_operator_unchecked(space, m, z, u, lambda)
}

/// [`v_operator`] without the safe-radius guard.
pub fn v_operator_unchecked(
    space: FockSpace,
    m: u32,
    z: C64,
    u: C64,
    lambda: f64,
) -> Result<Op> {
    let half = generalized_displacement_unchecked(space, m, u / 2.0)?;
    let u_op = u_evolution_unchecked(space, m, z, lambda, UMethod::ClosedForm)?;
    Ok(half.mul(&u_op)?.mul(&half)?.relabel(format!("V_{m}({lambda};{z},{u})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{edge_residual, hermiticity_residual, unitarity_residual, Ket};
    use crate::space::make_space;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn displacement_of_zero_is_identity() {
        let s = make_space(32, None, None).unwrap();
        let d = displacement(s, c(0.0, 0.0));
        assert!(d.sub(&Op::identity(s)).unwrap().mat.max_abs() < 1e-14);
    }

    #[test]
    fn displacement_is_edge_unitary() {
        let s = make_space(64, None, None).unwrap();
        let d = displacement(s, c(1.0, 0.0));
        assert!(unitarity_residual(&d) <= 1e-10);
    }

    #[test]
    fn displacement_composition_law() {
        // D(z) D(z') = exp(i Im(z z'*)) D(z + z')
        let s = make_space(64, None, None).unwrap();
        let (z, zp) = (c(0.5, 0.0), c(0.0, 0.3));
        let lhs = displacement(s, z).mul(&displacement(s, zp)).unwrap();
        let phase = C64::new(0.0, (z * zp.conj()).im).exp();
        let rhs = displacement(s, z + zp).scale(phase);
        assert!(edge_residual(s, &lhs.sub(&rhs).unwrap()) <= 1e-9);
    }

    #[test]
    fn d1_matches_displacement() {
        let s = make_space(64, None, None).unwrap();
        let z = c(0.4, 0.2);
        let d1 = generalized_displacement(s, 1, z).unwrap();
        let d = displacement(s, z);
        assert!(edge_residual(s, &d1.sub(&d).unwrap()) <= 1e-12);
    }

    #[test]
    fn d2_vacuum_overlap_matches_squeeze_closed_form() {
        // <0|D_2(z)|0> = 1/sqrt(cosh |z|), the squeezed-vacuum overlap
        let s = make_space(128, None, None).unwrap();
        let z = c(0.6, 0.0);
        let d2 = generalized_displacement(s, 2, z).unwrap();
        let overlap = d2.mat[(0, 0)];
        let expect = 1.0 / libm::sqrt(libm::cosh(0.6));
        assert_abs_diff_eq!(overlap.re, expect, epsilon = 1e-8);
        assert_abs_diff_eq!(overlap.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn d3_is_edge_unitary_at_safe_radius() {
        let s = make_space(128, Some(48), None).unwrap();
        let d3 = generalized_displacement(s, 3, c(0.2, 0.0)).unwrap();
        assert!(unitarity_residual(&d3) <= 1e-8);
    }

    #[test]
    fn radius_guard_refuses_m3_large_z() {
        let s = make_space(64, None, None).unwrap();
        assert!(matches!(
            generalized_displacement(s, 3, c(1.5, 0.0)),
            Err(Error::RadiusExceeded { m: 3, .. })
        ));
        // the override path still works
        assert!(generalized_displacement_unchecked(s, 3, c(1.5, 0.0)).is_ok());
    }

    #[test]
    fn parity_cos_m1_is_glauber_parity() {
        let s = make_space(16, None, None).unwrap();
        let p = parity_cos(s, 1);
        for n in 0..s.dim {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(p.mat[(n, n)].re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn parity_cos_eigenvalue_set() {
        // eigenvalues of diag(cos(pi n/m)) are exactly {cos(k pi/m)}
        let s = make_space(32, None, None).unwrap();
        for m in 1..=4u32 {
            let p = parity_cos(s, m);
            for n in 0..s.dim {
                let v = p.mat[(n, n)].re;
                let k = n % (2 * m as usize);
                let expect = libm::cos(PI * k as f64 / m as f64);
                assert_abs_diff_eq!(v, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn cos_anticommutes_with_a_to_the_m() {
        // oracle: index shift, cos(pi (n+m)/m) = -cos(pi n/m)
        let s = make_space(128, None, None).unwrap();
        let (a, _, _) = ladder_ops(s);
        for m in 1..=5u32 {
            let p = parity_cos(s, m);
            let am = op_pow(&a, m);
            let anti = p.mul(&am).unwrap().add(&am.mul(&p).unwrap()).unwrap();
            assert!(edge_residual(s, &anti) <= 1e-12, "m={m}");
        }
    }

    #[test]
    fn cos_commutes_with_a_to_the_2m() {
        let s = make_space(128, None, None).unwrap();
        let (a, _, _) = ladder_ops(s);
        for m in 1..=5u32 {
            let p = parity_cos(s, m);
            let a2m = op_pow(&a, 2 * m);
            let comm = p.mul(&a2m).unwrap().sub(&a2m.mul(&p).unwrap()).unwrap();
            assert!(edge_residual(s, &comm) <= 1e-12, "m={m}");
        }
    }

    #[test]
    fn sin_anticommutes_with_a_to_the_m() {
        let s = make_space(128, None, None).unwrap();
        let (a, _, _) = ladder_ops(s);
        for m in 1..=5u32 {
            let sp = parity_sin(s, m);
            let am = op_pow(&a, m);
            let anti = sp.mul(&am).unwrap().add(&am.mul(&sp).unwrap()).unwrap();
            assert!(edge_residual(s, &anti) <= 1e-12, "m={m}");
        }
    }

    #[test]
    fn number_rotation_conjugates_annihilation() {
        // E† a E = e^{i pi/m} a
        let s = make_space(64, None, None).unwrap();
        let (a, _, _) = ladder_ops(s);
        for m in 1..=4u32 {
            let e = number_rotation(s, m);
            let lhs = e.adjoint().mul(&a).unwrap().mul(&e).unwrap();
            let rhs = a.scale(C64::new(0.0, PI / m as f64).exp());
            assert!(edge_residual(s, &lhs.sub(&rhs).unwrap()) <= 1e-10, "m={m}");
        }
    }

    #[test]
    fn parity_displacement_is_edge_hermitian() {
        let s = make_space(128, None, None).unwrap();
        for (m, z) in [(1, c(0.7, 0.0)), (2, c(0.5, 0.0)), (3, c(0.2, 0.0))] {
            let b = parity_displacement(s, m, z).unwrap();
            assert!(hermiticity_residual(&b) <= 1e-9, "m={m}");
        }
    }

    #[test]
    fn b1_maps_coherent_to_vacuum() {
        let s = make_space(64, None, None).unwrap();
        let z = c(0.8, 0.0);
        let b = parity_displacement(s, 1, z).unwrap();
        let coh = crate::states::coherent(s, z).unwrap();
        let out = b.apply(&coh).unwrap();
        let fid = crate::analysis::fidelity(&out, &Ket::vacuum(s)).unwrap();
        assert!(fid >= 1.0 - 1e-9, "fidelity {fid}");
    }

    #[test]
    fn u_zero_lambda_is_identity() {
        let s = make_space(64, None, None).unwrap();
        for method in [UMethod::Exponential, UMethod::ClosedForm] {
            let u = u_evolution(s, 2, c(0.5, 0.0), 0.0, method).unwrap();
            assert!(edge_residual(s, &u.sub(&Op::identity(s)).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn u1_closed_form_identity() {
        // U_1 = cos(lambda) I + i sin(lambda) D(z) cos(pi a†a)
        let s = make_space(128, None, None).unwrap();
        let (z, lambda) = (c(0.5, 0.3), 0.7);
        let u = u_evolution(s, 1, z, lambda, UMethod::ClosedForm).unwrap();
        let expect = Op::identity(s)
            .scale(c(libm::cos(lambda), 0.0))
            .add(
                &displacement(s, z)
                    .mul(&parity_cos(s, 1))
                    .unwrap()
                    .scale(c(0.0, libm::sin(lambda))),
            )
            .unwrap();
        assert!(edge_residual(s, &u.sub(&expect).unwrap()) <= 1e-10);
    }

    #[test]
    fn u_methods_agree() {
        let s = make_space(128, None, None).unwrap();
        for (m, z) in [(1, c(0.5, 0.3)), (2, c(0.5, 0.0)), (3, c(0.2, 0.0))] {
            let lambda = PI / 4.0;
            let ue = u_evolution(s, m, z, lambda, UMethod::Exponential).unwrap();
            let uc = u_evolution(s, m, z, lambda, UMethod::ClosedForm).unwrap();
            assert!(edge_residual(s, &ue.sub(&uc).unwrap()) <= 1e-8, "m={m}");
        }
    }

    #[test]
    fn u_is_edge_unitary() {
        let s = make_space(128, None, None).unwrap();
        for m in [1, 2, 3] {
            let z = if m >= 3 { c(0.2, 0.0) } else { c(0.5, 0.0) };
            let u = u_evolution(s, m, z, 0.9, UMethod::ClosedForm).unwrap();
            assert!(unitarity_residual(&u) <= 1e-8, "m={m}");
        }
    }

    #[test]
    fn v_collapses_at_lambda_zero() {
        // V_m(0; z, u) = D_m(u/2) D_m(u/2)
        let s = make_space(64, None, None).unwrap();
        let (z, u) = (c(0.3, 0.0), c(0.0, 0.4));
        for m in [1, 2] {
            let v = v_operator(s, m, z, u, 0.0).unwrap();
            let half = generalized_displacement(s, m, u / 2.0).unwrap();
            let expect = half.mul(&half).unwrap();
            assert!(edge_residual(s, &v.sub(&expect).unwrap()) <= 1e-10, "m={m}");
        }
    }

    #[test]
    fn v1_matches_expanded_form() {
        // V_1 = cos(lambda) D(u) + i sin(lambda) e^{i Im(u z*)} B(z)
        let s = make_space(128, None, None).unwrap();
        let (z, u, lambda) = (c(0.6, 0.0), c(0.0, 0.4), 0.9);
        let v = v_operator(s, 1, z, u, lambda).unwrap();
        let phase = C64::new(0.0, (u * z.conj()).im).exp();
        let expect = displacement(s, u)
            .scale(c(libm::cos(lambda), 0.0))
            .add(
                &parity_displacement(s, 1, z)
                    .unwrap()
                    .scale(C64::new(0.0, libm::sin(lambda)) * phase),
            )
            .unwrap();
        assert!(edge_residual(s, &v.sub(&expect).unwrap()) <= 1e-9);
    }

    #[test]
    fn v_is_edge_unitary() {
        let s = make_space(128, None, None).unwrap();
        for m in [1, 2, 3] {
            let z = if m >= 3 { c(0.2, 0.0) } else { c(0.5, 0.0) };
            let u = if m >= 3 { c(0.1, 0.1) } else { c(0.0, 0.4) };
            let v = v_operator(s, m, z, u, 0.9).unwrap();
            assert!(unitarity_residual(&v) <= 1e-8, "m={m}");
        }
    }
}
