//! Search and bound: locate the first excited level of `Ĥ_SVP` without
//! knowing it, by running folded-spectrum solves on an `ω` grid over an
//! energy window `[α, β]` and lowering `β` after every round.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::SvpInstance;
use crate::math;
use crate::qanneal::{qa_evolve, AnnealSchedule, DEFAULT_DT};
use crate::qite::qite_evolve;
use crate::sanneal::{sa_read, SaConfig};
use crate::spectrum::{moments_unchecked, FoldConfig, SpectrumLevels};
use crate::state::StateVector;

pub const DEFAULT_ALPHA: f64 = 1e-6;
pub const DEFAULT_N_OMEGA: usize = 16;
pub const MIN_N_OMEGA: usize = 4;
pub const DEFAULT_MAX_ITER: usize = 10;
pub const BUFFER_FRACTION: f64 = 0.05;
/// Ten times the level tolerance.
pub const BUFFER_FLOOR: f64 = 1e-8;
/// Variance below which a run counts as converged / an estimate is snapped.
pub const VARIANCE_TOLERANCE: f64 = 1e-6;
/// Estimates closer than this are the same eigenvalue.
pub const DEDUP_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_QITE_TAU: f64 = 1e6;
/// Share of probability a single level needs for sampling back-ends.
pub const MAJORITY: f64 = 0.5;

/// Folded-spectrum back-end run at each grid point.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum Solver {
    /// Closed-form imaginary-time evolution from the uniform state.
    ExactQite { tau_max: f64 },
    /// Simulated quantum annealing from `|+⟩^⊗N`.
    Qa { schedule: AnnealSchedule, dt: f64 },
    /// Simulated annealing; every grid point gets its own seed.
    Sa {
        cooling_rate: f64,
        reads: usize,
        seed: u64,
    },
}

impl Solver {
    pub fn exact_qite() -> Self {
        Solver::ExactQite {
            tau_max: DEFAULT_QITE_TAU,
        }
    }

    pub fn qa() -> Self {
        Solver::Qa {
            schedule: AnnealSchedule::default(),
            dt: DEFAULT_DT,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Solver::ExactQite { .. } => "exact-qite",
            Solver::Qa { .. } => "qa",
            Solver::Sa { .. } => "sa",
        }
    }

    /// One folded-spectrum run at `omega`. `tag` distinguishes runs for
    /// seeding stochastic back-ends.
    pub fn solve_at(
        &self,
        instance: &SvpInstance,
        levels: &SpectrumLevels,
        omega: f64,
        tag: u64,
    ) -> Result<SolveOutcome> {
        let fold = FoldConfig::at(omega);
        let hfold = instance.folded(fold);
        let hsvp = instance.hamiltonian();
        match self {
            Solver::ExactQite { tau_max } => {
                let psi = qite_evolve(
                    &hfold,
                    &StateVector::uniform(instance.num_qubits()),
                    *tau_max,
                )?;
                let f = moments_unchecked(hfold.energies(), &psi);
                let s = moments_unchecked(hsvp.energies(), &psi);
                let converged = f.variance < VARIANCE_TOLERANCE;
                let snapped = converged && s.variance < VARIANCE_TOLERANCE;
                let estimate = if snapped {
                    levels.nearest(s.mean).map(|l| l.value)
                } else {
                    None
                };
                Ok(SolveOutcome {
                    omega,
                    converged,
                    estimate,
                    mean: s.mean,
                    variance: s.variance,
                    mixed: converged && !snapped,
                    witness: psi.most_probable(),
                })
            }
            Solver::Qa { schedule, dt } => {
                let r = qa_evolve(&hfold, hsvp, schedule, *dt)?;
                Ok(from_distribution(
                    omega,
                    &r.state.probabilities(),
                    instance,
                    levels,
                ))
            }
            Solver::Sa {
                cooling_rate,
                reads,
                seed,
            } => {
                let cfg = SaConfig::new(*cooling_rate, *reads, mix_seed(*seed, tag), omega)
                    .resolve(instance)?;
                let ladder = cfg.ladder();
                let mut probs = alloc::vec![0.0; hfold.len()];
                let w = 1.0 / *reads as f64;
                for r in 0..*reads as u64 {
                    probs[sa_read(hfold.energies(), instance.num_qubits(), &cfg, &ladder, r)] += w;
                }
                Ok(from_distribution(omega, &probs, instance, levels))
            }
        }
    }
}

/// SplitMix64 finalizer over `seed ⊕ tag`.
pub fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sampling back-ends converge when one `Ĥ_SVP` level holds a majority.
fn from_distribution(
    omega: f64,
    probs: &[f64],
    instance: &SvpInstance,
    levels: &SpectrumLevels,
) -> SolveOutcome {
    let hsvp = instance.hamiltonian();
    let values = levels.values();
    let mut weight = alloc::vec![0.0; values.len()];
    let mut mean = 0.0;
    let mut second = 0.0;
    let mut witness = 0;
    let mut witness_p = -1.0;
    for (i, &p) in probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let e = hsvp.energy(i);
        mean += p * e;
        second += p * e * e;
        if p > witness_p {
            witness = i;
            witness_p = p;
        }
        let pos = values
            .partition_point(|v| *v <= e + levels.tolerance)
            .saturating_sub(1);
        weight[pos] += p;
    }
    let (best, best_w) =
        weight.iter().enumerate().fold(
            (0, -1.0),
            |acc, (i, &w)| if w > acc.1 { (i, w) } else { acc },
        );
    let converged = best_w >= MAJORITY;
    SolveOutcome {
        omega,
        converged,
        estimate: converged.then(|| values[best]),
        mean,
        variance: (second - mean * mean).max(0.0),
        mixed: false,
        witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SolveOutcome {
    pub omega: f64,
    pub converged: bool,
    /// Spectral value the run settled on, if it converged onto one level.
    pub estimate: Option<f64>,
    /// `⟨Ĥ_SVP⟩` of the final state.
    pub mean: f64,
    pub variance: f64,
    /// Converged in the folded operator but spread over several `Ĥ_SVP`
    /// levels (ω equidistant from two levels); such runs are dropped.
    pub mixed: bool,
    /// Most probable basis state.
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RoundRecord {
    pub iteration: usize,
    pub alpha: f64,
    pub beta: f64,
    pub n_omega: usize,
    pub outcomes: Vec<SolveOutcome>,
    /// Distinct estimates inside `[α, β]`, ascending.
    pub found: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchBoundState {
    pub alpha: f64,
    pub beta: f64,
    pub n_omega: usize,
    /// Buffer applied by the latest bound update.
    pub buffer: f64,
    pub iteration: usize,
    pub found: Vec<f64>,
    pub history: Vec<RoundRecord>,
}

impl SearchBoundState {
    pub fn new(alpha: f64, beta: f64, n_omega: usize) -> Result<Self> {
        if !(alpha > 0.0 && beta > alpha && beta.is_finite()) {
            return Err(Error::DegenerateInterval { alpha, beta });
        }
        if n_omega < 2 {
            return Err(Error::invalid("n_omega", "need at least 2 grid points"));
        }
        Ok(SearchBoundState {
            alpha,
            beta,
            n_omega,
            buffer: 0.0,
            iteration: 0,
            found: Vec::new(),
            history: Vec::new(),
        })
    }

    /// `α = 10⁻⁶`, `β` one above the largest feasible `Ĥ_p` value, 16 points.
    pub fn initial(instance: &SvpInstance) -> Result<Self> {
        Self::new(
            DEFAULT_ALPHA,
            instance.max_feasible_norm() + 1.0,
            DEFAULT_N_OMEGA,
        )
    }

    /// Uniform grid over `[α, β]`, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let step = (self.beta - self.alpha) / (self.n_omega - 1) as f64;
        (0..self.n_omega)
            .map(|i| {
                if i + 1 == self.n_omega {
                    self.beta
                } else {
                    self.alpha + step * i as f64
                }
            })
            .collect()
    }
}

/// Runs the per-point solves of a round; lets callers parallelize.
pub trait RoundExecutor {
    fn run(
        &self,
        omegas: &[f64],
        solve: &(dyn Fn(usize, f64) -> Result<SolveOutcome> + Sync),
    ) -> Vec<Result<SolveOutcome>>;
}

pub struct Sequential;

impl RoundExecutor for Sequential {
    fn run(
        &self,
        omegas: &[f64],
        solve: &(dyn Fn(usize, f64) -> Result<SolveOutcome> + Sync),
    ) -> Vec<Result<SolveOutcome>> {
        omegas
            .iter()
            .enumerate()
            .map(|(i, &w)| solve(i, w))
            .collect()
    }
}

/// Solves at every grid point and collects the distinct converged
/// estimates that fall inside `[α, β]`.
pub fn search_round(
    instance: &SvpInstance,
    state: &SearchBoundState,
    solver: &Solver,
) -> Result<RoundRecord> {
    search_round_with(instance, &instance.levels(), state, solver, &Sequential)
}

pub fn search_round_with(
    instance: &SvpInstance,
    levels: &SpectrumLevels,
    state: &SearchBoundState,
    solver: &Solver,
    executor: &dyn RoundExecutor,
) -> Result<RoundRecord> {
    if state.n_omega < 2 {
        return Err(Error::invalid("n_omega", "need at least 2 grid points"));
    }
    let omegas = state.grid();
    let round = state.iteration as u64;
    let solve = |i: usize, w: f64| solver.solve_at(instance, levels, w, (round << 32) | i as u64);
    let mut outcomes = Vec::with_capacity(omegas.len());
    for r in executor.run(&omegas, &solve) {
        outcomes.push(r?);
    }
    if !outcomes.iter().any(|o| o.converged) {
        return Err(Error::RoundFailed);
    }
    let mut found: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| o.estimate)
        .filter(|&e| e >= state.alpha && e <= state.beta + DEDUP_TOLERANCE)
        .collect();
    found.sort_by(f64::total_cmp);
    found.dedup_by(|a, b| math::abs(*a - *b) <= DEDUP_TOLERANCE);
    Ok(RoundRecord {
        iteration: state.iteration,
        alpha: state.alpha,
        beta: state.beta,
        n_omega: state.n_omega,
        outcomes,
        found,
    })
}

/// `β ← min(β, found_min + x)` with `x = 0.05 (β - α)` (at least the
/// floor); the grid halves down to its minimum size.
pub fn bound_update(state: &SearchBoundState, found_min: f64) -> Result<SearchBoundState> {
    let buffer = (BUFFER_FRACTION * (state.beta - state.alpha)).max(BUFFER_FLOOR);
    bound_update_with_buffer(state, found_min, buffer)
}

pub fn bound_update_with_buffer(
    state: &SearchBoundState,
    found_min: f64,
    buffer: f64,
) -> Result<SearchBoundState> {
    let beta = (found_min + buffer).min(state.beta);
    if !(beta > state.alpha) {
        return Err(Error::DegenerateInterval {
            alpha: state.alpha,
            beta,
        });
    }
    let mut next = state.clone();
    next.beta = beta;
    next.buffer = buffer;
    next.n_omega = (state.n_omega / 2).max(MIN_N_OMEGA).min(state.n_omega);
    next.iteration += 1;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchBoundReport {
    pub e1: f64,
    pub witness: usize,
    /// Whether a round isolated a single eigenvalue before `max_iter`.
    pub isolated: bool,
    pub iterations: usize,
    pub rounds: Vec<RoundRecord>,
    /// Window bounds after every update.
    pub betas: Vec<f64>,
}

pub fn search_and_bound(
    instance: &SvpInstance,
    solver: &Solver,
    max_iter: usize,
) -> Result<SearchBoundReport> {
    search_and_bound_from(
        instance,
        solver,
        SearchBoundState::initial(instance)?,
        max_iter,
        &Sequential,
    )
}

/// Repeats rounds until one finds a single eigenvalue, or takes the
/// smallest value seen once `max_iter` rounds have run and confirms it with
/// one more solve at that `ω`.
pub fn search_and_bound_from(
    instance: &SvpInstance,
    solver: &Solver,
    mut state: SearchBoundState,
    max_iter: usize,
    executor: &dyn RoundExecutor,
) -> Result<SearchBoundReport> {
    if max_iter == 0 {
        return Err(Error::invalid("max_iter", "must be at least 1"));
    }
    let levels = instance.levels();
    let mut betas = alloc::vec![state.beta];
    let mut best: Option<(f64, usize)> = None;
    for _ in 0..max_iter {
        let record = search_round_with(instance, &levels, &state, solver, executor)?;
        let found = record.found.clone();
        let witness_of = |value: f64| {
            record
                .outcomes
                .iter()
                .find(|o| {
                    o.estimate
                        .is_some_and(|e| math::abs(e - value) <= DEDUP_TOLERANCE)
                })
                .map(|o| o.witness)
                .unwrap_or(0)
        };
        let round_min = found.first().map(|&v| (v, witness_of(v)));
        state.found = found.clone();
        state.history.push(record);
        if let Some((v, w)) = round_min {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, w));
            }
        }
        match found.len() {
            0 => continue,
            1 => {
                let (e1, witness) = round_min.expect("one value");
                return Ok(SearchBoundReport {
                    e1,
                    witness,
                    isolated: true,
                    iterations: state.history.len(),
                    rounds: state.history,
                    betas,
                });
            }
            _ => {
                state = bound_update(&state, found[0])?;
                betas.push(state.beta);
            }
        }
    }
    let (e1, _) = best.ok_or(Error::NoEigenvalueFound)?;
    let last = solver.solve_at(instance, &levels, e1, u64::MAX)?;
    Ok(SearchBoundReport {
        e1: last.estimate.unwrap_or(e1),
        witness: last.witness,
        isolated: false,
        iterations: state.history.len(),
        rounds: state.history,
        betas,
    })
}
