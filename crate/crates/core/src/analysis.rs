//! Scalar diagnostics: number statistics, support masses, fidelities,
//! truncation-convergence verdicts, and quadrature/phase-space grids.

use alloc::vec::Vec;

use crate::error::Error;
use crate::fock::{inner, ladder_ops, Ket};
use crate::space::{make_space, FockSpace};
use crate::states::gcs_with;
use crate::{Result, C64};

/// Default threshold on consecutive-dimension infidelity; two orders above
/// double-precision noise at N = 256.
pub const CONVERGENCE_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct NumberStatistics {
    /// `p_n = |<n|psi>|^2`.
    pub probs: Vec<f64>,
    pub mean_n: f64,
    pub tail_mass_above_k: f64,
}

pub fn number_statistics(ket: &Ket) -> NumberStatistics {
    let probs: Vec<f64> = ket.amps.iter().map(|a| a.norm_sqr()).collect();
    let mean_n = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let tail_mass_above_k = probs.iter().skip(ket.space.interior_dim).sum();
    NumberStatistics { probs, mean_n, tail_mass_above_k }
}

/// Probability mass on number states that are not multiples of `m`.
pub fn off_support_mass(ket: &Ket, m: u32) -> f64 {
    ket.amps
        .iter()
        .enumerate()
        .filter(|(n, _)| n % m as usize != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// `|<k1|k2>|^2`.
pub fn fidelity(k1: &Ket, k2: &Ket) -> Result<f64> {
    Ok(inner(k1, k2)?.norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    NotConverged,
}

/// Truncation-convergence evidence for `|z_m>`: the state rebuilt at each
/// dimension, with consecutive-dimension infidelities.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub m: u32,
    pub z: C64,
    pub dims: Vec<usize>,
    /// `1 - fidelity` between consecutive dimensions.
    pub deltas: Vec<f64>,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Build `|z_m>` at each dimension (radius guard suspended — this diagnostic
/// is precisely what vouches for parameters beyond it), embed the smaller
/// space into the larger, and compare.
pub fn convergence_diagnostic(
    m: u32,
    z: C64,
    dims: &[usize],
    threshold: f64,
) -> Result<ConvergenceReport> {
    if dims.len() < 2 || dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadDimSequence);
    }
    let mut kets: Vec<Ket> = Vec::with_capacity(dims.len());
    for &d in dims {
        let space = make_space(d, None, Some(1.0))?; // loss guard off: measured here instead
        kets.push(gcs_with(space, m, z, true)?.ket);
    }
    let mut deltas = Vec::with_capacity(dims.len() - 1);
    for w in kets.windows(2) {
        let small = &w[0];
        let large = &w[1];
        let mut embedded = Ket::zero(large.space);
        embedded.amps[..small.amps.len()].copy_from_slice(&small.amps);
        deltas.push((1.0 - fidelity(&embedded, large)?).max(0.0));
    }
    let verdict = if deltas.iter().all(|&d| d <= threshold) {
        Verdict::Converged
    } else {
        Verdict::NotConverged
    };
    Ok(ConvergenceReport { m, z, dims: dims.to_vec(), deltas, threshold, verdict })
}

/// `max_n |Im <n|D_m(z)|n>|` over `n <= n_max`, before any phase fixing.
pub fn diagonal_reality_scan(space: FockSpace, m: u32, z: C64, n_max: usize) -> Result<f64> {
    if n_max >= space.interior_dim {
        return Err(Error::IndexOutsideInterior { n: n_max, interior_dim: space.interior_dim });
    }
    let d = crate::operators::generalized_displacement(space, m, z)?;
    Ok((0..=n_max).map(|n| d.mat[(n, n)].im.abs()).fold(0.0, f64::max))
}

/// First and second quadrature moments, `x = (a + a†)/sqrt(2)`,
/// `p = (a - a†)/(i sqrt(2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureMoments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
}

pub fn quadrature_moments(ket: &Ket) -> Result<QuadratureMoments> {
    let s = ket.space;
    let (a, a_dag, _) = ladder_ops(s);
    let sqrt2_inv = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    let x = a.add(&a_dag)?.scale(sqrt2_inv);
    let p = a.sub(&a_dag)?.scale(sqrt2_inv * C64::new(0.0, -1.0));
    let expect = |op: &crate::fock::Op| -> Result<(f64, f64)> {
        let applied = op.apply(ket)?;
        let mean = inner(ket, &applied)?.re;
        let second = inner(&applied, &applied)?.re;
        Ok((mean, second - mean * mean))
    };
    let (mean_x, var_x) = expect(&x)?;
    let (mean_p, var_p) = expect(&p)?;
    Ok(QuadratureMoments { mean_x, mean_p, var_x, var_p })
}

/// One phase-space sample: `(x, p, value)`.
pub type GridRow = (f64, f64, f64);

/// Husimi Q quasi-probability `|<alpha|psi>|^2 / pi` on a rectangular grid,
/// `alpha = (x + i p)/sqrt(2)`, rows in row-major (x outer) order.
pub fn husimi_q_grid(ket: &Ket, xs: &[f64], ps: &[f64]) -> Result<Vec<GridRow>> {
    let mut rows = Vec::with_capacity(xs.len() * ps.len());
    for &x in xs {
        for &p in ps {
            let alpha = C64::new(x, p) * core::f64::consts::FRAC_1_SQRT_2;
            // direct overlap sum; tolerate tail truncation of |alpha>
            let mut amp = C64::new(libm::exp(-alpha.norm_sqr() / 2.0), 0.0);
            let mut overlap = C64::new(0.0, 0.0);
            for (n, c) in ket.amps.iter().enumerate() {
                if n > 0 {
                    amp = amp * alpha / libm::sqrt(n as f64);
                }
                overlap += amp.conj() * c;
            }
            rows.push((x, p, overlap.norm_sqr() / core::f64::consts::PI));
        }
    }
    Ok(rows)
}
