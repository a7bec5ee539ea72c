//! Complex statevectors over `2^N` computational basis states.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Allowed deviation of `‖ψ‖²` from one.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition `|+⟩^⊗N`.
    pub fn uniform(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let a = 1.0 / math::sqrt(dim as f64);
        StateVector {
            amplitudes: vec![Complex64::new(a, 0.0); dim],
        }
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes })
    }

    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::invalid(
                "amplitudes",
                "length must be a power of two",
            ));
        }
        let state = StateVector { amplitudes };
        let norm_sqr = state.norm_sqr();
        if math::abs(norm_sqr - 1.0) > NORM_TOLERANCE {
            return Err(Error::Unnormalized { norm_sqr });
        }
        Ok(state)
    }

    /// Normalizes arbitrary amplitudes; fails if they are all zero.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::invalid(
                "amplitudes",
                "length must be a power of two",
            ));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !(norm_sqr > 0.0 && norm_sqr.is_finite()) {
            return Err(Error::Underflow);
        }
        let s = 1.0 / math::sqrt(norm_sqr);
        amplitudes.iter_mut().for_each(|a| *a *= s);
        Ok(StateVector { amplitudes })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn num_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// Index of the most probable basis state (lowest index on ties).
    pub fn most_probable(&self) -> usize {
        let mut best = 0;
        let mut best_p = -1.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > best_p {
                best = i;
                best_p = p;
            }
        }
        best
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}
