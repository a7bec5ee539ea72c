//! Folded-spectrum excited-state search for the shortest vector problem.
//!
//! A lattice instance is encoded into a diagonal spin Hamiltonian whose
//! trivial ground state is the zero vector and whose first excited level is
//! the squared length of the shortest lattice vector. Folding the spectrum
//! around a parameter `ω` turns that excited level into the ground state of
//! `(H - ω)^(2m)`, which is then recovered with ground-state methods:
//!
//! * exact imaginary-time evolution ([`qite`]),
//! * variational imaginary-time evolution on a hardware-efficient ansatz ([`varqite`]),
//! * simulated quantum annealing ([`qanneal`]),
//! * classical simulated annealing ([`sanneal`]),
//!
//! with [`searchbound`] locating a usable `ω` without knowing the answer.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Negated comparisons double as NaN rejection in argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod linalg;
mod math;

pub mod encoding;
pub mod hamiltonian;
pub mod instance;
pub mod lattice;
pub mod qanneal;
pub mod qite;
pub mod sanneal;
pub mod searchbound;
pub mod spectrum;
pub mod state;
pub mod varqite;

pub use encoding::{DecodeResult, EncodingKind, EncodingScheme, LambdaStrategy};
pub use error::{Error, Result};
pub use hamiltonian::{DiagonalHamiltonian, HamiltonianKind};
pub use instance::SvpInstance;
pub use lattice::{CoefficientVector, GramMatrix, LatticeBasis, SvpSolution};
pub use spectrum::{FoldConfig, SpectrumLevels};
pub use state::StateVector;

pub use num_complex::Complex64;
