//! Qubit encodings of bounded integer coefficients and the diagonal
//! Hamiltonians built from them.
//!
//! Conventions shared by every encoding:
//!
//! * a set bit means `q = 1`, i.e. σ_z eigenvalue `-1`; a clear bit is σ_z `+1`;
//! * registers are laid out in basis-vector order, register `i` occupying
//!   bits `i·w .. (i+1)·w` of the basis-state index;
//! * inside a register, slot `p` is bit `p` (little-endian).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hamiltonian::{DiagonalHamiltonian, HamiltonianKind};
use crate::lattice::{CoefficientVector, GramMatrix};

/// Largest register the statevector code will allocate.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum EncodingKind {
    /// `2k+1` qubits, exactly one set; slot `p` encodes `-k + p`.
    OneHot,
    /// `2k` qubits; the value is half the σ_z sum, `k - popcount`.
    HammingWeight,
    /// `k+1` qubits; `Σ 2^p q_p - 2^k` covering `[-2^k, 2^k - 1]`.
    Binary,
}

impl EncodingKind {
    pub fn name(self) -> &'static str {
        match self {
            EncodingKind::OneHot => "one-hot",
            EncodingKind::HammingWeight => "hamming-weight",
            EncodingKind::Binary => "binary",
        }
    }
}

impl core::str::FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-hot" => Ok(EncodingKind::OneHot),
            "hamming-weight" => Ok(EncodingKind::HammingWeight),
            "binary" => Ok(EncodingKind::Binary),
            _ => Err(Error::invalid(
                "scheme",
                alloc::format!("unknown encoding `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EncodingScheme {
    kind: EncodingKind,
    k: u32,
    n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeResult {
    Feasible(CoefficientVector),
    /// The first register that violates the one-hot constraint.
    Infeasible {
        register: usize,
    },
}

impl DecodeResult {
    pub fn feasible(&self) -> Option<&CoefficientVector> {
        match self {
            DecodeResult::Feasible(x) => Some(x),
            DecodeResult::Infeasible { .. } => None,
        }
    }
}

impl EncodingScheme {
    pub fn new(kind: EncodingKind, k: u32, n: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k", "must be at least 1"));
        }
        if n == 0 {
            return Err(Error::invalid("n", "must be at least 1"));
        }
        let width = match kind {
            EncodingKind::OneHot => 2 * k as usize + 1,
            EncodingKind::HammingWeight => 2 * k as usize,
            EncodingKind::Binary => k as usize + 1,
        };
        let qubits = width.saturating_mul(n);
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits,
                limit: MAX_QUBITS,
            });
        }
        Ok(EncodingScheme { kind, k, n })
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lattice_dimension(&self) -> usize {
        self.n
    }

    pub fn register_width(&self) -> usize {
        match self.kind {
            EncodingKind::OneHot => 2 * self.k as usize + 1,
            EncodingKind::HammingWeight => 2 * self.k as usize,
            EncodingKind::Binary => self.k as usize + 1,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.register_width() * self.n
    }

    /// Hilbert-space dimension `2^N`.
    pub fn state_count(&self) -> usize {
        1usize << self.num_qubits()
    }

    /// Inclusive range of integers a single register can represent.
    pub fn coefficient_range(&self) -> (i64, i64) {
        let k = i64::from(self.k);
        match self.kind {
            EncodingKind::OneHot | EncodingKind::HammingWeight => (-k, k),
            EncodingKind::Binary => (-(1 << k), (1 << k) - 1),
        }
    }

    pub fn needs_penalty(&self) -> bool {
        self.kind == EncodingKind::OneHot
    }

    #[inline]
    pub fn register_bits(&self, index: usize, register: usize) -> u32 {
        let w = self.register_width();
        ((index >> (register * w)) & ((1usize << w) - 1)) as u32
    }

    /// Eigenvalue of the register operator `Q` on a register bit pattern.
    /// Defined for every pattern, including one-hot violations.
    pub fn register_operator_value(&self, bits: u32) -> f64 {
        let k = i64::from(self.k);
        let w = self.register_width() as u32;
        match self.kind {
            EncodingKind::OneHot => (0..w)
                .filter(|p| bits >> p & 1 == 1)
                .map(|p| (-k + i64::from(p)) as f64)
                .sum(),
            EncodingKind::HammingWeight => (k - i64::from(bits.count_ones())) as f64,
            EncodingKind::Binary => (i64::from(bits) - (1 << k)) as f64,
        }
    }

    fn decode_register(&self, bits: u32) -> Option<i64> {
        let k = i64::from(self.k);
        match self.kind {
            EncodingKind::OneHot => {
                (bits.count_ones() == 1).then(|| -k + i64::from(bits.trailing_zeros()))
            }
            EncodingKind::HammingWeight => Some(k - i64::from(bits.count_ones())),
            EncodingKind::Binary => Some(i64::from(bits) - (1 << k)),
        }
    }

    pub fn decode_index(&self, index: usize) -> DecodeResult {
        let mut x = Vec::with_capacity(self.n);
        for register in 0..self.n {
            match self.decode_register(self.register_bits(index, register)) {
                Some(v) => x.push(v),
                None => return DecodeResult::Infeasible { register },
            }
        }
        DecodeResult::Feasible(CoefficientVector(x))
    }

    /// Decodes an explicit bitstring, `bits[q]` being qubit `q`.
    pub fn decode(&self, bits: &[bool]) -> Result<DecodeResult> {
        Ok(self.decode_index(self.index_of_bits(bits)?))
    }

    pub fn index_of_bits(&self, bits: &[bool]) -> Result<usize> {
        if bits.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: bits.len(),
            });
        }
        Ok(bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (q, &b)| acc | (usize::from(b) << q)))
    }

    pub fn bits_of_index(&self, index: usize) -> Vec<bool> {
        (0..self.num_qubits())
            .map(|q| index >> q & 1 == 1)
            .collect()
    }

    /// Canonical basis state for `x`. For the Hamming-weight encoding the
    /// lowest slots are filled first.
    pub fn encode(&self, x: &[i64]) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let (lo, hi) = self.coefficient_range();
        let k = i64::from(self.k);
        let w = self.register_width();
        let mut index = 0usize;
        for (i, &xi) in x.iter().enumerate() {
            if xi < lo || xi > hi {
                return Err(Error::invalid(
                    "x",
                    "coefficient outside the encodable range",
                ));
            }
            let bits: usize = match self.kind {
                EncodingKind::OneHot => 1 << (xi + k),
                EncodingKind::HammingWeight => (1 << (k - xi)) - 1,
                EncodingKind::Binary => (xi + (1 << k)) as usize,
            };
            index |= bits << (i * w);
        }
        Ok(index)
    }
}

/// `Ĥ_p = Σ_ij G_ij Q_i Q_j` evaluated on every basis state.
pub fn build_problem(scheme: &EncodingScheme, g: &GramMatrix) -> Result<DiagonalHamiltonian> {
    let n = scheme.lattice_dimension();
    if g.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.dimension(),
        });
    }
    let w = scheme.register_width();
    let table: Vec<f64> = (0..1u32 << w)
        .map(|b| scheme.register_operator_value(b))
        .collect();
    let mut q = vec![0.0; n];
    let energies = (0..scheme.state_count())
        .map(|index| {
            for (i, qi) in q.iter_mut().enumerate() {
                *qi = table[scheme.register_bits(index, i) as usize];
            }
            g.quadratic_form(&q)
        })
        .collect();
    Ok(DiagonalHamiltonian::from_parts(
        HamiltonianKind::Problem,
        scheme.num_qubits(),
        energies,
    ))
}

/// `λ Σ_i (Σ_p q_p^(i) - 1)^2`; zero exactly on one-hot feasible states.
pub fn build_penalty(scheme: &EncodingScheme, lambda: f64) -> Result<DiagonalHamiltonian> {
    if !scheme.needs_penalty() {
        return Err(Error::PenaltyNotApplicable);
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid("lambda", "must be positive and finite"));
    }
    let energies = (0..scheme.state_count())
        .map(|index| {
            let violation: u32 = (0..scheme.lattice_dimension())
                .map(|i| {
                    let d = scheme.register_bits(index, i).count_ones() as i64 - 1;
                    (d * d) as u32
                })
                .sum();
            lambda * f64::from(violation)
        })
        .collect();
    Ok(DiagonalHamiltonian::from_parts(
        HamiltonianKind::Penalty,
        scheme.num_qubits(),
        energies,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum LambdaStrategy {
    /// `k² Σ_ij |G_ij| + 1`, above every squared norm in the search box.
    Conservative,
    Fixed(f64),
}

pub fn choose_lambda(g: &GramMatrix, k: u32, strategy: LambdaStrategy) -> f64 {
    match strategy {
        LambdaStrategy::Conservative => f64::from(k * k) * g.abs_sum() + 1.0,
        LambdaStrategy::Fixed(v) => v,
    }
}

/// `Ĥ_SVP = Ĥ_p + Ĥ_penalty`.
pub fn compose_svp(
    problem: &DiagonalHamiltonian,
    penalty: Option<&DiagonalHamiltonian>,
) -> Result<DiagonalHamiltonian> {
    let energies = match penalty {
        None => problem.energies().to_vec(),
        Some(p) => {
            if p.len() != problem.len() {
                return Err(Error::DimensionMismatch {
                    expected: problem.len(),
                    found: p.len(),
                });
            }
            problem
                .energies()
                .iter()
                .zip(p.energies())
                .map(|(a, b)| a + b)
                .collect()
        }
    };
    Ok(DiagonalHamiltonian::from_parts(
        HamiltonianKind::Svp,
        problem.num_qubits(),
        energies,
    ))
}
