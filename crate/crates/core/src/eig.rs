//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Robust, dependency-free, and fast enough for dense N <= 256 work. The
//! rotation zeroing the off-diagonal pair (p, q) of a hermitian matrix with
//! `a_pq = |g| e^{i phi}` is the unitary that is the identity except for
//!
//! ```text
//! J[p][p] = c          J[p][q] = s e^{i phi}
//! J[q][p] = -s e^{-i phi}   J[q][q] = c
//! ```
//!
//! with real `c = cos(theta)`, `s = sin(theta)` and `tan(2 theta) =
//! 2 |g| / (a_qq - a_pp)`, computed through the usual stable tangent formula.

use alloc::vec::Vec;

use crate::linalg::CMat;
use crate::C64;

/// Eigendecomposition of a hermitian matrix: `(values, vectors)` with values
/// ascending and vectors as columns of a unitary matrix.
///
/// Only the hermitian part of the input is consulted: the matrix is
/// symmetrized as `(A + A†)/2` before iterating, so callers holding an
/// edge-safe hermitian operator get the spectrum of its hermitian part.
pub fn eigh(a: &CMat) -> (Vec<f64>, CMat) {
    assert!(a.is_square(), "eigh needs a square matrix");
    let n = a.rows();
    let mut h = a.add(&a.adjoint()).scale(C64::new(0.5, 0.0));
    let mut v = CMat::identity(n);

    let scale = h.frobenius().max(f64::MIN_POSITIVE);
    let tol = 1e-15 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in p + 1..n {
                off += h[(p, q)].norm_sqr();
            }
        }
        if libm::sqrt(2.0 * off) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.partial_cmp(&h[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    (values, vectors)
}

fn rotate(h: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let g = h[(p, q)];
    let gn = g.norm();
    if gn == 0.0 {
        return;
    }
    let phase = g / gn; // e^{i phi}
    let alpha = h[(p, p)].re;
    let beta = h[(q, q)].re;
    let zeta = (beta - alpha) / (2.0 * gn);
    // t = tan(theta), smaller root of t^2 + 2 zeta t - 1 = 0
    let t = if zeta >= 0.0 {
        1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
    } else {
        -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let sp = phase * s; // s e^{i phi}
    let n = h.rows();

    // two-sided update: columns, then mirror for rows
    for i in 0..n {
        let hip = h[(i, p)];
        let hiq = h[(i, q)];
        h[(i, p)] = hip * c - hiq * sp.conj();
        h[(i, q)] = hip * sp + hiq * c;
    }
    for j in 0..n {
        let hpj = h[(p, j)];
        let hqj = h[(q, j)];
        h[(p, j)] = hpj * c - hqj * sp;
        h[(q, j)] = hpj * sp.conj() + hqj * c;
    }
    // clean the rotated pair and diagonal against rounding drift
    h[(p, q)] = C64::new(0.0, 0.0);
    h[(q, p)] = C64::new(0.0, 0.0);
    h[(p, p)] = C64::new(h[(p, p)].re, 0.0);
    h[(q, q)] = C64::new(h[(q, q)].re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * sp.conj();
        v[(i, q)] = vip * sp + viq * c;
    }
}
