//! Truncated-Fock-space construction and verification of generalized
//! parity-displacement operators.
//!
//! The crate builds, in a finite Fock space of `N` levels, the operators
//! `D_m(z)` (generalized displacement), `B_m(z) = D_m(z) cos(pi/m a†a)`
//! (generalized parity-displacement), the evolution-like unitaries
//! `U_m(lambda; z) = exp(i lambda B_m(z))` and
//! `V_m(lambda; z, u) = D_m(u/2) U_m(lambda; z) D_m(u/2)`, together with the
//! state families they generate: coherent states, `m`-multiple generalized
//! coherent states `|z_m>`, cat-like superpositions, and the displaced bases
//! `{|z_m,n>}` and `{|(lambda;z_m),n>}`.
//!
//! Every structural identity these operators satisfy is checkable numerically
//! through the [`verify`] suite, with truncation error controlled by measuring
//! residuals on the interior levels only (see [`fock::edge_residual`]).
//!
//! The crate is `no_std` + `alloc`; IO, file formats, and the command-line
//! front end live in the companion `gcs-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod eig;
pub mod error;
pub mod expm;
pub mod fock;
pub mod linalg;
pub mod operators;
pub mod space;
pub mod states;
pub mod verify;

pub use error::Error;
pub use fock::{Ket, Op};
pub use space::FockSpace;

/// Complex scalar used throughout; double precision only.
pub type C64 = num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;
