//! Diagonal Hamiltonians stored as one energy per computational basis state.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum HamiltonianKind {
    Problem,
    Penalty,
    Svp,
    Folded,
}

/// Energies indexed by basis state; bit `q` of the index is qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    kind: HamiltonianKind,
    num_qubits: usize,
    energies: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(kind: HamiltonianKind, energies: Vec<f64>) -> Result<Self> {
        let len = energies.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::invalid("energies", "length must be a power of two"));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::invalid("energies", "entries must be finite"));
        }
        Ok(DiagonalHamiltonian {
            kind,
            num_qubits: len.trailing_zeros() as usize,
            energies,
        })
    }

    pub(crate) fn from_parts(kind: HamiltonianKind, num_qubits: usize, energies: Vec<f64>) -> Self {
        debug_assert_eq!(energies.len(), 1usize << num_qubits);
        DiagonalHamiltonian {
            kind,
            num_qubits,
            energies,
        }
    }

    pub fn kind(&self) -> HamiltonianKind {
        self.kind
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    #[inline]
    pub fn energy(&self, index: usize) -> f64 {
        self.energies[index]
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.energies
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices whose energy lies within `tol` of the minimum.
    pub fn argmin(&self, tol: f64) -> Vec<usize> {
        let min = self.min();
        self.indices_near(min, tol)
    }

    /// Indices whose energy lies within `tol` of `value`.
    pub fn indices_near(&self, value: f64, tol: f64) -> Vec<usize> {
        self.energies
            .iter()
            .enumerate()
            .filter(|(_, e)| math::abs(**e - value) <= tol)
            .map(|(i, _)| i)
            .collect()
    }
}
