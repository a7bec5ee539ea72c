//! Metropolis simulated annealing over bitstrings on the folded energy
//! `(H_SVP[s] - ω)^(2m)`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoding::DecodeResult;
use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::instance::SvpInstance;
use crate::math;
use crate::spectrum::FoldConfig;

/// Squared norms closer than this share a histogram bin.
pub const BIN_TOLERANCE: f64 = 1e-9;

/// User-facing settings; `None` fields take scale-aware defaults in
/// [`SaConfig::resolve`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SaConfig {
    pub cooling_rate: f64,
    pub initial_temperature: Option<f64>,
    pub sweeps_per_temperature: Option<usize>,
    pub min_temperature: Option<f64>,
    pub reads: usize,
    pub seed: u64,
    pub omega: f64,
    pub m: u32,
}

impl SaConfig {
    pub fn new(cooling_rate: f64, reads: usize, seed: u64, omega: f64) -> Self {
        SaConfig {
            cooling_rate,
            initial_temperature: None,
            sweeps_per_temperature: None,
            min_temperature: None,
            reads,
            seed,
            omega,
            m: 1,
        }
    }

    /// Validates and fills defaults: `T₀` = folded range / 10,
    /// `10·N` sweeps per temperature, `T_min = 10⁻⁴·T₀`.
    pub fn resolve(&self, instance: &SvpInstance) -> Result<ResolvedSaConfig> {
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::invalid("cooling_rate", "must lie in (0, 1)"));
        }
        if self.reads == 0 {
            return Err(Error::invalid("reads", "must be at least 1"));
        }
        let fold = FoldConfig::new(self.omega, self.m)?;
        let folded = instance.folded(fold);
        let range = folded.max() - folded.min();
        let t0 = match self.initial_temperature {
            Some(t) => t,
            None if range > 0.0 => range / 10.0,
            None => 1.0,
        };
        if !(t0 > 0.0 && t0.is_finite()) {
            return Err(Error::invalid(
                "initial_temperature",
                "must be positive and finite",
            ));
        }
        let t_min = self.min_temperature.unwrap_or(1e-4 * t0);
        if !(t_min > 0.0 && t_min <= t0) {
            return Err(Error::invalid("min_temperature", "must lie in (0, T0]"));
        }
        let sweeps = self
            .sweeps_per_temperature
            .unwrap_or(10 * instance.num_qubits());
        if sweeps == 0 {
            return Err(Error::invalid(
                "sweeps_per_temperature",
                "must be at least 1",
            ));
        }
        Ok(ResolvedSaConfig {
            cooling_rate: self.cooling_rate,
            initial_temperature: t0,
            sweeps_per_temperature: sweeps,
            min_temperature: t_min,
            reads: self.reads,
            seed: self.seed,
            omega: self.omega,
            m: self.m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ResolvedSaConfig {
    pub cooling_rate: f64,
    pub initial_temperature: f64,
    pub sweeps_per_temperature: usize,
    pub min_temperature: f64,
    pub reads: usize,
    pub seed: u64,
    pub omega: f64,
    pub m: u32,
}

impl ResolvedSaConfig {
    /// `T_j = T₀ rʲ` while `T_j ≥ T_min`.
    pub fn ladder(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut t = self.initial_temperature;
        while t >= self.min_temperature {
            out.push(t);
            t *= self.cooling_rate;
        }
        out
    }

    pub fn fold(&self) -> FoldConfig {
        FoldConfig {
            omega: self.omega,
            m: self.m,
        }
    }
}

/// `(H_SVP[index] - ω)^(2m)`.
pub fn sa_energy(index: usize, hsvp: &DiagonalHamiltonian, omega: f64, m: u32) -> f64 {
    math::powu(hsvp.energy(index) - omega, 2 * m)
}

/// Single-bit-flip Metropolis chain over a tabulated energy landscape.
pub struct Metropolis<'a> {
    energies: &'a [f64],
    num_qubits: usize,
    state: usize,
}

impl<'a> Metropolis<'a> {
    pub fn new(energies: &'a [f64], num_qubits: usize, state: usize) -> Self {
        debug_assert_eq!(energies.len(), 1 << num_qubits);
        Metropolis {
            energies,
            num_qubits,
            state,
        }
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn energy(&self) -> f64 {
        self.energies[self.state]
    }

    /// Proposes flipping one uniformly chosen bit. A zero temperature only
    /// accepts non-increasing moves.
    pub fn step<R: Rng>(&mut self, temperature: f64, rng: &mut R) -> bool {
        let q = rng.random_range(0..self.num_qubits);
        let next = self.state ^ (1 << q);
        let delta = self.energies[next] - self.energies[self.state];
        let accept = delta <= 0.0
            || (temperature > 0.0 && rng.random::<f64>() < math::exp(-delta / temperature));
        if accept {
            self.state = next;
        }
        accept
    }

    /// `sweeps` rounds of `N` proposals at each temperature in turn.
    pub fn anneal<R: Rng>(&mut self, ladder: &[f64], sweeps: usize, rng: &mut R) {
        for &t in ladder {
            for _ in 0..sweeps * self.num_qubits {
                self.step(t, rng);
            }
        }
    }
}

/// Generator for one read: the seed selects the key, the read index the stream.
pub fn read_rng(seed: u64, read: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(read);
    rng
}

/// One annealing read from a uniformly random start; returns the final
/// basis-state index.
pub fn sa_read(
    folded: &[f64],
    num_qubits: usize,
    cfg: &ResolvedSaConfig,
    ladder: &[f64],
    read: u64,
) -> usize {
    let mut rng = read_rng(cfg.seed, read);
    let start = rng.random_range(0..folded.len());
    let mut chain = Metropolis::new(folded, num_qubits, start);
    chain.anneal(ladder, cfg.sweeps_per_temperature, &mut rng);
    chain.state()
}

/// Final bitstring of read 0.
pub fn sa_run(instance: &SvpInstance, config: &SaConfig) -> Result<usize> {
    let cfg = config.resolve(instance)?;
    let folded = instance.folded(cfg.fold());
    Ok(sa_read(
        folded.energies(),
        instance.num_qubits(),
        &cfg,
        &cfg.ladder(),
        0,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HistogramBin {
    pub norm_sq: f64,
    pub count: usize,
}

/// Counts of final states by decoded squared norm, ascending, plus the
/// infeasible outcomes.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SaHistogram {
    pub bins: Vec<HistogramBin>,
    pub infeasible: usize,
}

impl SaHistogram {
    pub fn add_norm(&mut self, norm_sq: Option<f64>) {
        let Some(v) = norm_sq else {
            self.infeasible += 1;
            return;
        };
        let pos = self.bins.partition_point(|b| b.norm_sq < v - BIN_TOLERANCE);
        match self.bins.get_mut(pos) {
            Some(b) if math::abs(b.norm_sq - v) <= BIN_TOLERANCE => b.count += 1,
            _ => self.bins.insert(
                pos,
                HistogramBin {
                    norm_sq: v,
                    count: 1,
                },
            ),
        }
    }

    pub fn from_states(instance: &SvpInstance, states: &[usize]) -> Self {
        let mut h = SaHistogram::default();
        for &s in states {
            h.add_norm(instance.norm_of_state(s));
        }
        h
    }

    pub fn merge(&mut self, other: &SaHistogram) {
        for b in &other.bins {
            for _ in 0..b.count {
                self.add_norm(Some(b.norm_sq));
            }
        }
        self.infeasible += other.infeasible;
    }

    pub fn total(&self) -> usize {
        self.infeasible + self.bins.iter().map(|b| b.count).sum::<usize>()
    }

    pub fn count_at(&self, norm_sq: f64) -> usize {
        self.bins
            .iter()
            .filter(|b| math::abs(b.norm_sq - norm_sq) <= BIN_TOLERANCE)
            .map(|b| b.count)
            .sum()
    }

    /// Fraction of all reads landing at `norm_sq`.
    pub fn fraction_at(&self, norm_sq: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            self.count_at(norm_sq) as f64 / total as f64
        }
    }

    /// Feasible bin with the largest count; ties go to the shorter norm.
    pub fn feasible_mode(&self) -> Option<HistogramBin> {
        self.bins
            .iter()
            .copied()
            .fold(None, |best: Option<HistogramBin>, b| match best {
                Some(cur) if cur.count >= b.count => Some(cur),
                _ => Some(b),
            })
    }
}

/// Runs every read sequentially and bins the outcomes.
pub fn sa_histogram(instance: &SvpInstance, config: &SaConfig) -> Result<SaHistogram> {
    let cfg = config.resolve(instance)?;
    let folded = instance.folded(cfg.fold());
    let ladder = cfg.ladder();
    let states: Vec<usize> = (0..cfg.reads as u64)
        .map(|r| sa_read(folded.energies(), instance.num_qubits(), &cfg, &ladder, r))
        .collect();
    Ok(SaHistogram::from_states(instance, &states))
}

/// Whether the state encodes a feasible vector of the given squared norm.
pub fn decodes_to_norm(instance: &SvpInstance, index: usize, norm_sq: f64) -> bool {
    matches!(instance.decode(index), DecodeResult::Feasible(_))
        && instance
            .norm_of_state(index)
            .is_some_and(|v| math::abs(v - norm_sq) <= BIN_TOLERANCE)
}
