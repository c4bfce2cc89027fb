//! Every state family the operators generate, with the global-phase
//! conventions enforced: coherent states, the m multiple generalized coherent
//! states `|z_m>`, the `B_m` eigenpairs, vacuum superpositions, cat-like
//! states, and the displaced bases `{|z_m,n>}` / `{|(lambda;z_m),n>}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::fock::Ket;
use crate::operators::{
    generalized_displacement, generalized_displacement_unchecked, u_evolution_unchecked,
    v_operator_unchecked, OperatorParams, UMethod,
};
use crate::space::FockSpace;
use crate::{Result, C64};

/// Below this modulus a vacuum overlap counts as vanishing and the phase
/// convention is inapplicable.
const PHASE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Fock,
    Coherent,
    Gcs,
    BPlus,
    BMinus,
    Superposition,
    Cat,
    GdfBasis,
    DressedBasis,
}

impl StateKind {
    pub fn name(&self) -> &'static str {
        match self {
            StateKind::Fock => "fock",
            StateKind::Coherent => "coherent",
            StateKind::Gcs => "gcs",
            StateKind::BPlus => "b_plus",
            StateKind::BMinus => "b_minus",
            StateKind::Superposition => "superposition",
            StateKind::Cat => "cat",
            StateKind::GdfBasis => "gdf_basis",
            StateKind::DressedBasis => "dressed_basis",
        }
    }
}

/// Declarative description of a requested state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateFamily {
    pub kind: StateKind,
    pub params: OperatorParams,
    /// Basis index, where applicable.
    pub n: usize,
}

/// What happened while preparing a state: the applied global phase, the
/// squared-norm mass shaved by truncation, and whether the phase convention
/// was applicable at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateMeta {
    pub phase_fix: C64,
    pub truncation_loss: f64,
    pub phasable: bool,
}

impl StateMeta {
    fn exact() -> Self {
        StateMeta { phase_fix: C64::new(1.0, 0.0), truncation_loss: 0.0, phasable: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    pub ket: Ket,
    pub meta: StateMeta,
}

/// The Glauber coherent state, amplitudes `e^{-|z|^2/2} z^n / sqrt(n!)`,
/// renormalized after truncation.
pub fn coherent(space: FockSpace, z: C64) -> Result<Ket> {
    let mut amps = Vec::with_capacity(space.dim);
    let mut amp = C64::new(libm::exp(-z.norm_sqr() / 2.0), 0.0);
    for n in 0..space.dim {
        if n > 0 {
            amp = amp * z / libm::sqrt(n as f64);
        }
        amps.push(amp);
    }
    let ket = Ket { space, amps };
    let tail = ket.tail_mass(space.interior_dim);
    if tail > space.tail_tol {
        return Err(Error::TailMass { mass: tail, tail_tol: space.tail_tol });
    }
    Ok(ket.normalized())
}

/// Raw `D_m(z)|0>`: no phase fix, no renormalization. This is the literal
/// column of the displacement matrix that the operator identities quote.
pub fn gcs_raw(space: FockSpace, m: u32, z: C64) -> Result<Ket> {
    let d = generalized_displacement(space, m, z)?;
    d.apply(&Ket::vacuum(space))
}

/// The m multiple generalized coherent state `|z_m> = D_m(z)|0>`, with the
/// global phase fixed so that `<0|z_m>` is real nonnegative, renormalized.
pub fn gcs(space: FockSpace, m: u32, z: C64) -> Result<Prepared> {
    gcs_with(space, m, z, false)
}

/// [`gcs`] with an explicit safe-radius override for exploration; the
/// truncation-loss guard still applies.
pub fn gcs_with(space: FockSpace, m: u32, z: C64, override_radius: bool) -> Result<Prepared> {
    let d = if override_radius {
        generalized_displacement_unchecked(space, m, z)?
    } else {
        generalized_displacement(space, m, z)?
    };
    let raw = d.apply(&Ket::vacuum(space))?;
    finish_phase_fixed(raw, space.tail_tol)
}

fn finish_phase_fixed(raw: Ket, tail_tol: f64) -> Result<Prepared> {
    let norm = raw.norm();
    let loss = (1.0 - norm * norm).max(0.0);
    if loss > tail_tol {
        return Err(Error::ConvergenceFailure { norm_deficit: loss, tail_tol });
    }
    let overlap = raw.amps[0];
    let (phase, phasable) = if overlap.norm() < PHASE_EPS {
        (C64::new(1.0, 0.0), false)
    } else {
        (overlap.conj() / overlap.norm(), true)
    };
    let ket = raw.scale(phase).normalized();
    Ok(Prepared { ket, meta: StateMeta { phase_fix: phase, truncation_loss: loss, phasable } })
}

/// The `B_m(z)` eigenpair in the `{|0>, |z_m>}` plane, with the normalization
/// constants `N_± = sqrt(2 (1 ± <0|z_m>))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BPair {
    pub plus: Ket,
    pub minus: Ket,
    pub n_plus: f64,
    pub n_minus: f64,
    /// `<0|z_m>`, real nonnegative under the phase convention.
    pub vacuum_overlap: f64,
}

pub fn b_eigenstates(space: FockSpace, m: u32, z: C64) -> Result<BPair> {
    let zm = gcs(space, m, z)?.ket;
    let overlap = zm.amps[0].re;
    if 1.0 + overlap < PHASE_EPS {
        return Err(Error::DegenerateNormalization);
    }
    let n_plus = libm::sqrt(2.0 * (1.0 + overlap));
    let n_minus = libm::sqrt(2.0 * (1.0 - overlap));
    let vac = Ket::vacuum(space);
    let plus = vac.add(&zm)?.scale(C64::new(1.0 / n_plus, 0.0));
    let minus = vac.sub(&zm)?.scale(C64::new(1.0 / n_minus, 0.0));
    Ok(BPair { plus, minus, n_plus, n_minus, vacuum_overlap: overlap })
}

/// `U_m(lambda; z)|0> = cos(lambda)|0> + i sin(lambda)|z_m>`.
pub fn superposition_state(space: FockSpace, m: u32, z: C64, lambda: f64) -> Result<Prepared> {
    crate::operators::ensure_safe_radius(m, z)?;
    let u = u_evolution_unchecked(space, m, z, lambda, UMethod::ClosedForm)?;
    let raw = u.apply(&Ket::vacuum(space))?;
    let norm = raw.norm();
    let loss = (1.0 - norm * norm).max(0.0);
    if loss > space.tail_tol {
        return Err(Error::ConvergenceFailure { norm_deficit: loss, tail_tol: space.tail_tol });
    }
    Ok(Prepared {
        ket: raw.normalized(),
        meta: StateMeta { phase_fix: C64::new(1.0, 0.0), truncation_loss: loss, phasable: true },
    })
}

/// `V_1(lambda; z, u)|0>`; for `u = -z`, `lambda = pi/4` this is the
/// Yurke-Stoler-type cat `(|−z> + i|z>)/sqrt(2)`.
pub fn cat_state(space: FockSpace, z: C64, lambda: f64, u: C64) -> Result<Prepared> {
    let v = v_operator_unchecked(space, 1, z, u, lambda)?;
    let raw = v.apply(&Ket::vacuum(space))?;
    let norm = raw.norm();
    let loss = (1.0 - norm * norm).max(0.0);
    if loss > space.tail_tol {
        return Err(Error::ConvergenceFailure { norm_deficit: loss, tail_tol: space.tail_tol });
    }
    Ok(Prepared {
        ket: raw.normalized(),
        meta: StateMeta { phase_fix: C64::new(1.0, 0.0), truncation_loss: loss, phasable: true },
    })
}

/// Generalized displaced basis state `|z_m,n> = D_m(z)|n>`, raw and reported
/// forms. `<n|D_m(z)|n>` is real; the reported ket carries the sign flip that
/// makes the diagonal nonnegative, while the raw amplitudes are retained for
/// reproducibility.
#[derive(Debug, Clone, PartialEq)]
pub struct GdfState {
    pub raw: Ket,
    pub reported: Ket,
    /// `+1` or `-1`; the reporting-only tie-break.
    pub sign_fix: f64,
    /// `<n|D_m(z)|n>` before any fixing.
    pub diagonal: C64,
    pub truncation_loss: f64,
}

pub fn gdf_basis_state(space: FockSpace, m: u32, z: C64, n: usize) -> Result<GdfState> {
    if n >= space.interior_dim {
        return Err(Error::IndexOutsideInterior { n, interior_dim: space.interior_dim });
    }
    let d = generalized_displacement(space, m, z)?;
    let raw = d.apply(&Ket::number_state(space, n))?;
    let diagonal = raw.amps[n];
    let norm = raw.norm();
    let loss = (1.0 - norm * norm).max(0.0);
    if loss > space.tail_tol {
        return Err(Error::ConvergenceFailure { norm_deficit: loss, tail_tol: space.tail_tol });
    }
    let sign_fix = if diagonal.re < 0.0 { -1.0 } else { 1.0 };
    let reported = raw.scale(C64::new(sign_fix, 0.0)).normalized();
    Ok(GdfState { raw: raw.normalized(), reported, sign_fix, diagonal, truncation_loss: loss })
}

/// Dressed basis state `|(lambda;z_m),n> = U_m(lambda;z)|n>`.
pub fn dressed_basis_state(
    space: FockSpace,
    m: u32,
    z: C64,
    lambda: f64,
    n: usize,
) -> Result<Prepared> {
    if n >= space.interior_dim {
        return Err(Error::IndexOutsideInterior { n, interior_dim: space.interior_dim });
    }
    crate::operators::ensure_safe_radius(m, z)?;
    let u = u_evolution_unchecked(space, m, z, lambda, UMethod::ClosedForm)?;
    let raw = u.apply(&Ket::number_state(space, n))?;
    let norm = raw.norm();
    let loss = (1.0 - norm * norm).max(0.0);
    if loss > space.tail_tol {
        return Err(Error::ConvergenceFailure { norm_deficit: loss, tail_tol: space.tail_tol });
    }
    Ok(Prepared {
        ket: raw.normalized(),
        meta: StateMeta { phase_fix: C64::new(1.0, 0.0), truncation_loss: loss, phasable: true },
    })
}

/// Build any declared state; the CLI entry point.
pub fn prepare(space: FockSpace, family: &StateFamily) -> Result<Prepared> {
    let OperatorParams { m, z, u, lambda } = family.params;
    match family.kind {
        StateKind::Fock => {
            if family.n >= space.dim {
                return Err(Error::IndexOutsideInterior {
                    n: family.n,
                    interior_dim: space.dim,
                });
            }
            Ok(Prepared { ket: Ket::number_state(space, family.n), meta: StateMeta::exact() })
        }
        StateKind::Coherent => {
            Ok(Prepared { ket: coherent(space, z)?, meta: StateMeta::exact() })
        }
        StateKind::Gcs => gcs(space, m, z),
        StateKind::BPlus => {
            Ok(Prepared { ket: b_eigenstates(space, m, z)?.plus, meta: StateMeta::exact() })
        }
        StateKind::BMinus => {
            Ok(Prepared { ket: b_eigenstates(space, m, z)?.minus, meta: StateMeta::exact() })
        }
        StateKind::Superposition => superposition_state(space, m, z, lambda),
        StateKind::Cat => cat_state(space, z, lambda, u),
        StateKind::GdfBasis => {
            let g = gdf_basis_state(space, m, z, family.n)?;
            Ok(Prepared {
                ket: g.reported,
                meta: StateMeta {
                    phase_fix: C64::new(g.sign_fix, 0.0),
                    truncation_loss: g.truncation_loss,
                    phasable: true,
                },
            })
        }
        StateKind::DressedBasis => dressed_basis_state(space, m, z, lambda, family.n),
    }
}

/// Human-readable parameter summary, used in labels and reports.
pub fn describe(family: &StateFamily) -> String {
    let p = family.params;
    format!(
        "{} m={} z={} u={} lambda={} n={}",
        family.kind.name(),
        p.m,
        p.z,
        p.u,
        p.lambda,
        family.n
    )
}
