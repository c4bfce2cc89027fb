//! Dense complex matrices and the few factorizations the crate needs.
//!
//! Row-major `Vec<C64>` storage; everything is plain O(n^3) dense arithmetic,
//! which is the right trade at the desk scales this crate targets (N <= 256).

use alloc::{vec, vec::Vec};

use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += aik * s;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d += s;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (d, s) in out.data.iter_mut().zip(&other.data) {
            *d -= s;
        }
        out
    }

    pub fn scale(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for d in out.data.iter_mut() {
            *d *= c;
        }
        out
    }

    /// Leading `k x k` block, i.e. the matrix compressed to levels `0..k`.
    pub fn leading_block(&self, k: usize) -> CMat {
        assert!(k <= self.rows && k <= self.cols);
        CMat::from_fn(k, k, |i, j| self[(i, j)])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, c| f64::max(m, c.norm()))
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|c| c.norm_sqr()).sum())
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut best = 0.0_f64;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self[(i, j)].norm()).sum();
            best = best.max(s);
        }
        best
    }

    /// Largest singular value, by power iteration on `A† A`.
    ///
    /// A fixed pseudo-random start vector keeps the result deterministic; the
    /// iteration is run to a relative tolerance far below anything the residual
    /// thresholds in this crate can distinguish.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return if scale == 0.0 { 0.0 } else { f64::INFINITY };
        }
        let mut v: Vec<C64> = (0..self.cols)
            .map(|i| C64::new(libm::sin(1.7 * (i as f64 + 1.0)), libm::cos(0.9 * (i as f64 + 2.0))))
            .collect();
        normalize(&mut v);
        let adj = self.adjoint();
        let mut sigma2 = 0.0_f64;
        for _ in 0..200 {
            let mut w = adj.matvec(&self.matvec(&v));
            let next = libm::sqrt(norm2(&w));
            if next == 0.0 {
                return 0.0;
            }
            for c in w.iter_mut() {
                *c /= next;
            }
            v = w;
            let rel = (next - sigma2).abs() / next.max(f64::MIN_POSITIVE);
            sigma2 = next;
            if rel < 1e-12 {
                break;
            }
        }
        libm::sqrt(sigma2)
    }

    /// Solve `self * X = B` by LU with partial pivoting. Returns `None` when a
    /// pivot vanishes (singular system).
    pub fn lu_solve(&self, b: &CMat) -> Option<CMat> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut lu = self.clone();
        let mut x = b.clone();
        for k in 0..n {
            // pivot
            let mut piv = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let cand = lu[(i, k)].norm();
                if cand > best {
                    best = cand;
                    piv = i;
                }
            }
            if best == 0.0 {
                return None;
            }
            if piv != k {
                lu.swap_rows(k, piv);
                x.swap_rows(k, piv);
            }
            let inv_pivot = C64::new(1.0, 0.0) / lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] * inv_pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        // forward substitution with the unit-lower factor
        for k in 0..n {
            for i in k + 1..n {
                let factor = lu[(i, k)];
                for j in 0..x.cols {
                    let sub = factor * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        // back substitution
        for k in (0..n).rev() {
            let inv_pivot = C64::new(1.0, 0.0) / lu[(k, k)];
            for j in 0..x.cols {
                x[(k, j)] *= inv_pivot;
            }
            for i in 0..k {
                let factor = lu[(i, k)];
                for j in 0..x.cols {
                    let sub = factor * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

pub fn normalize(v: &mut [C64]) {
    let n = libm::sqrt(norm2(v));
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

/// `<u|v>`, conjugate-linear in the first argument.
pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}
