//! Kets and operators over a truncated Fock space, plus the exponentials and
//! the edge-safe residual metric everything else is checked against.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::eig::eigh;
use crate::error::Error;
use crate::expm::expm;
use crate::linalg::{self, CMat};
use crate::space::FockSpace;
use crate::{Result, C64};

/// Hard bound on scaling steps inside the matrix exponential.
pub const MAX_SQUARINGS: u32 = 64;

/// Hermiticity residual admitted by [`exp_i_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-8;

/// Complex amplitude vector over number states; index n is `<n|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    pub space: FockSpace,
    pub amps: Vec<C64>,
}

impl Ket {
    pub fn zero(space: FockSpace) -> Self {
        Ket { space, amps: vec![C64::new(0.0, 0.0); space.dim] }
    }

    /// The number state `|n>`.
    pub fn number_state(space: FockSpace, n: usize) -> Self {
        assert!(n < space.dim, "number state index beyond truncation");
        let mut k = Ket::zero(space);
        k.amps[n] = C64::new(1.0, 0.0);
        k
    }

    pub fn vacuum(space: FockSpace) -> Self {
        Ket::number_state(space, 0)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(linalg::norm2(&self.amps))
    }

    pub fn normalized(&self) -> Ket {
        let mut k = self.clone();
        linalg::normalize(&mut k.amps);
        k
    }

    pub fn scale(&self, c: C64) -> Ket {
        Ket { space: self.space, amps: self.amps.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &Ket) -> Result<Ket> {
        check_space(self.space, other.space)?;
        Ok(Ket {
            space: self.space,
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Ket) -> Result<Ket> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Probability mass carried above level `k`.
    pub fn tail_mass(&self, k: usize) -> f64 {
        self.amps.iter().skip(k).map(|a| a.norm_sqr()).sum()
    }

    /// Norm of the first `interior_dim` components; the vector counterpart of
    /// [`edge_residual`].
    pub fn interior_norm(&self) -> f64 {
        libm::sqrt(
            self.amps.iter().take(self.space.interior_dim).map(|a| a.norm_sqr()).sum::<f64>(),
        )
    }
}

/// `<u|v>`, conjugate-linear in the first argument.
pub fn inner(u: &Ket, v: &Ket) -> Result<C64> {
    check_space(u.space, v.space)?;
    Ok(linalg::dot(&u.amps, &v.amps))
}

/// Dense complex operator with a provenance label.
#[derive(Debug, Clone, PartialEq)]
pub struct Op {
    pub space: FockSpace,
    pub mat: CMat,
    pub label: String,
}

impl Op {
    pub fn new(space: FockSpace, mat: CMat, label: impl Into<String>) -> Self {
        debug_assert_eq!(mat.rows(), space.dim);
        debug_assert_eq!(mat.cols(), space.dim);
        Op { space, mat, label: label.into() }
    }

    pub fn identity(space: FockSpace) -> Self {
        Op::new(space, CMat::identity(space.dim), "I")
    }

    pub fn apply(&self, k: &Ket) -> Result<Ket> {
        check_space(self.space, k.space)?;
        Ok(Ket { space: k.space, amps: self.mat.matvec(&k.amps) })
    }

    pub fn mul(&self, other: &Op) -> Result<Op> {
        check_space(self.space, other.space)?;
        Ok(Op::new(
            self.space,
            self.mat.mul(&other.mat),
            format!("({})({})", self.label, other.label),
        ))
    }

    pub fn adjoint(&self) -> Op {
        Op::new(self.space, self.mat.adjoint(), format!("({})†", self.label))
    }

    pub fn add(&self, other: &Op) -> Result<Op> {
        check_space(self.space, other.space)?;
        Ok(Op::new(
            self.space,
            self.mat.add(&other.mat),
            format!("{} + {}", self.label, other.label),
        ))
    }

    pub fn sub(&self, other: &Op) -> Result<Op> {
        check_space(self.space, other.space)?;
        Ok(Op::new(
            self.space,
            self.mat.sub(&other.mat),
            format!("{} - {}", self.label, other.label),
        ))
    }

    pub fn scale(&self, c: C64) -> Op {
        Op::new(self.space, self.mat.scale(c), self.label.clone())
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Op {
        self.label = label.into();
        self
    }
}

pub fn check_space(a: FockSpace, b: FockSpace) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Annihilation, creation, and number operators: `a|n> = sqrt(n)|n-1>`,
/// `a† = adjoint(a)`, `a†a = diag(0..N-1)` exactly.
pub fn ladder_ops(space: FockSpace) -> (Op, Op, Op) {
    let n = space.dim;
    let mut a = CMat::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new(libm::sqrt(k as f64), 0.0);
    }
    let a_dag = a.adjoint();
    let number = CMat::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(i as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (Op::new(space, a, "a"), Op::new(space, a_dag, "a†"), Op::new(space, number, "a†a"))
}

/// Diagonal operator `diag(f(0), ..., f(N-1))`.
pub fn diag_fn_op(space: FockSpace, label: impl Into<String>, f: impl Fn(usize) -> C64) -> Op {
    let entries: Vec<C64> = (0..space.dim).map(f).collect();
    Op::new(space, CMat::diag(&entries), label)
}

/// Real-valued convenience wrapper for [`diag_fn_op`].
pub fn diag_fn_re(space: FockSpace, label: impl Into<String>, f: impl Fn(usize) -> f64) -> Op {
    diag_fn_op(space, label, |n| C64::new(f(n), 0.0))
}

/// `exp(M)` by scaling and squaring with a degree-13 Padé kernel.
pub fn mat_exp(m: &Op) -> Result<Op> {
    if !m.mat.is_finite() {
        return Err(Error::NonFinite { context: m.label.clone() });
    }
    let e = expm(&m.mat, MAX_SQUARINGS)?;
    Ok(Op::new(m.space, e, format!("exp({})", m.label)))
}

/// `exp(i lambda H)` through the eigendecomposition of hermitian `H`.
///
/// The input must be edge-safe hermitian; its full hermitian part is then
/// diagonalized, so the result is exactly unitary up to rounding. This is the
/// independent second route to the exponential, used to cross-check
/// [`mat_exp`] on anti-hermitian generators.
pub fn exp_i_hermitian(h: &Op, lambda: f64) -> Result<Op> {
    if !h.mat.is_finite() {
        return Err(Error::NonFinite { context: h.label.clone() });
    }
    let res = hermiticity_residual(h);
    if res > HERMITICITY_TOL {
        return Err(Error::NotHermitian { residual: res });
    }
    let (vals, vecs) = eigh(&h.mat);
    let phases: Vec<C64> =
        vals.iter().map(|&e| C64::new(0.0, lambda * e).exp()).collect();
    let e = vecs.mul(&CMat::diag(&phases)).mul(&vecs.adjoint());
    Ok(Op::new(h.space, e, format!("exp(i {lambda} {})", h.label)))
}

/// Spectral norm of `P_K M P_K`: the canonical residual metric. Truncation
/// corrupts the top rows and columns of operator products; projecting onto the
/// interior levels measures the identity where the truncated algebra is exact.
pub fn edge_residual(space: FockSpace, m: &Op) -> f64 {
    debug_assert_eq!(m.space, space);
    m.mat.leading_block(space.interior_dim).spectral_norm()
}

/// Edge residual of `M - M†`.
pub fn hermiticity_residual(m: &Op) -> f64 {
    edge_residual(m.space, &Op::new(m.space, m.mat.sub(&m.mat.adjoint()), ""))
}

/// Edge residual of `M†M - I`.
pub fn unitarity_residual(m: &Op) -> f64 {
    let d = m.mat.adjoint().mul(&m.mat).sub(&CMat::identity(m.space.dim));
    Op::new(m.space, d, "").mat.leading_block(m.space.interior_dim).spectral_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    fn space64() -> FockSpace {
        make_space(64, None, None).unwrap()
    }

    #[test]
    fn annihilation_action() {
        let s = space64();
        let (a, _, _) = ladder_ops(s);
        let one = Ket::number_state(s, 1);
        let out = a.apply(&one).unwrap();
        assert!(out.sub(&Ket::vacuum(s)).unwrap().norm() < 1e-15);
        // vacuum is annihilated
        assert_eq!(a.apply(&Ket::vacuum(s)).unwrap().norm(), 0.0);
    }

    #[test]
    fn creation_matrix_element() {
        // <2|a†|1> = sqrt(2), cross-checked against the brute-force
        // conjugate transpose of a
        let s = space64();
        let (a, a_dag, _) = ladder_ops(s);
        let brute = CMat::from_fn(s.dim, s.dim, |i, j| a.mat[(j, i)].conj());
        assert_eq!(a_dag.mat, brute);
        assert_abs_diff_eq!(a_dag.mat[(2, 1)].re, libm::sqrt(2.0), epsilon = 1e-15);
    }

    #[test]
    fn number_operator_is_exact_diagonal() {
        let s = space64();
        let (a, a_dag, number) = ladder_ops(s);
        for n in 0..s.dim {
            assert_eq!(number.mat[(n, n)].re, n as f64);
        }
        // a†a reproduces it to rounding (sqrt(n)^2 is not exact in fp)
        let prod = a_dag.mul(&a).unwrap();
        assert!(prod.sub(&number).unwrap().mat.max_abs() < 1e-13 * s.dim as f64);
    }

    #[test]
    fn commutator_edge_residual() {
        // [a, a†] - I vanishes on the interior; the full-space defect sits at
        // the single entry (N-1, N-1) with value exactly N
        let s = space64();
        let (a, a_dag, _) = ladder_ops(s);
        let comm = a.mul(&a_dag).unwrap().sub(&a_dag.mul(&a).unwrap()).unwrap();
        let defect = comm.sub(&Op::identity(s)).unwrap();
        assert!(edge_residual(s, &defect) <= 1e-12);
        assert_abs_diff_eq!(
            defect.mat[(s.dim - 1, s.dim - 1)].re,
            -(s.dim as f64),
            epsilon = 1e-12
        );
        for i in 0..s.dim - 1 {
            assert!(defect.mat[(i, i)].norm() < 1e-13);
        }
    }

    #[test]
    fn diag_fn_parity() {
        let s = space64();
        let p = diag_fn_re(s, "cos(pi n)", |n| libm::cos(PI * n as f64));
        for n in 0..s.dim {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(p.mat[(n, n)].re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn diag_fn_quarter_period() {
        let s = make_space(8, None, None).unwrap();
        let p = diag_fn_re(s, "cos(pi n/2)", |n| libm::cos(PI * n as f64 / 2.0));
        let expect = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0];
        for (n, &e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(p.mat[(n, n)].re, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn mat_exp_diagonal_case() {
        let s = make_space(16, None, None).unwrap();
        let g = diag_fn_op(s, "i pi n", |n| C64::new(0.0, PI * n as f64));
        let e = mat_exp(&g).unwrap();
        for n in 0..s.dim {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(e.mat[(n, n)].re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn exp_i_hermitian_rejects_non_hermitian() {
        let s = space64();
        let (a, _, _) = ladder_ops(s);
        assert!(matches!(exp_i_hermitian(&a, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn exp_i_hermitian_zero_lambda() {
        let s = space64();
        let (_, _, number) = ladder_ops(s);
        let e = exp_i_hermitian(&number, 0.0).unwrap();
        assert!(e.mat.sub(&CMat::identity(s.dim)).max_abs() < 1e-13);
    }

    #[test]
    fn exp_i_hermitian_group_property() {
        // exp(i lambda H) exp(i mu H) = exp(i (lambda+mu) H), brute product
        let s = make_space(32, None, None).unwrap();
        let h = diag_fn_re(s, "cos(pi n)", |n| libm::cos(PI * n as f64));
        let (lambda, mu) = (0.7, 0.4);
        let lhs = exp_i_hermitian(&h, lambda).unwrap().mul(&exp_i_hermitian(&h, mu).unwrap()).unwrap();
        let rhs = exp_i_hermitian(&h, lambda + mu).unwrap();
        assert!(edge_residual(s, &lhs.sub(&rhs).unwrap()) < 1e-10);
    }

    #[test]
    fn two_exponential_routes_agree_on_antihermitian() {
        // exp(i lambda H) via eigendecomposition vs Pade on the generator
        let s = make_space(48, None, None).unwrap();
        let (_, _, number) = ladder_ops(s);
        let lambda = 0.9;
        let via_eig = exp_i_hermitian(&number, lambda).unwrap();
        let via_pade = mat_exp(&number.scale(C64::new(0.0, lambda))).unwrap();
        assert!(edge_residual(s, &via_eig.sub(&via_pade).unwrap()) < 1e-10);
    }

    #[test]
    fn inner_product_conjugate_linearity_and_adjoint_pairing() {
        let s = make_space(16, None, None).unwrap();
        let u = Ket {
            space: s,
            amps: (0..16).map(|i| C64::new(libm::sin(i as f64), libm::cos(2.0 * i as f64))).collect(),
        };
        let v = Ket {
            space: s,
            amps: (0..16).map(|i| C64::new(0.3 * i as f64, -0.1)).collect(),
        };
        let (a, _, _) = ladder_ops(s);
        // <u|M v> = <M† u|v>
        let lhs = inner(&u, &a.apply(&v).unwrap()).unwrap();
        let rhs = inner(&a.adjoint().apply(&u).unwrap(), &v).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        // conjugate symmetry
        let uv = inner(&u, &v).unwrap();
        let vu = inner(&v, &u).unwrap();
        assert!((uv - vu.conj()).norm() < 1e-12);
    }

    #[test]
    fn space_mismatch_is_rejected() {
        let s1 = make_space(16, None, None).unwrap();
        let s2 = make_space(32, None, None).unwrap();
        let (a, _, _) = ladder_ops(s1);
        assert!(matches!(a.apply(&Ket::vacuum(s2)), Err(Error::SpaceMismatch)));
        assert!(matches!(inner(&Ket::vacuum(s1), &Ket::vacuum(s2)), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn adjoint_is_involution() {
        let s = make_space(8, None, None).unwrap();
        let (a, _, _) = ladder_ops(s);
        assert_eq!(a.adjoint().adjoint().mat, a.mat);
    }
}
