//! Simulated quantum annealing of `f_p(t) Ĥ' + f_d(t) Ĥ_d` with the
//! transverse-field driver `Ĥ_d = -h_x Σ σ_x`, integrated by second-order
//! Trotter splitting on the full statevector.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::instance::SvpInstance;
use crate::math;
use crate::qite::FOLD_GROUND_TOLERANCE;
use crate::spectrum::{levels, moments_unchecked, FoldConfig, LEVEL_TOLERANCE};
use crate::state::StateVector;

pub const DEFAULT_TOTAL_TIME: f64 = 100.0;
pub const DEFAULT_DT: f64 = 0.01;
pub const DEFAULT_DRIVER_STRENGTH: f64 = 1.0;
/// Norm drift beyond this aborts the run.
pub const MAX_NORM_DRIFT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ScheduleShape {
    /// `f_p = t/T`, `f_d = 1 - t/T`.
    Linear,
    /// Samples on a uniform grid over `[0, T]`, linearly interpolated.
    Tabulated { problem: Vec<f64>, driver: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AnnealSchedule {
    pub total_time: f64,
    pub driver_strength: f64,
    pub shape: ScheduleShape,
}

impl AnnealSchedule {
    pub fn linear(total_time: f64, driver_strength: f64) -> Result<Self> {
        Self::new(total_time, driver_strength, ScheduleShape::Linear)
    }

    pub fn new(total_time: f64, driver_strength: f64, shape: ScheduleShape) -> Result<Self> {
        if !(total_time > 0.0 && total_time.is_finite()) {
            return Err(Error::invalid("total_time", "must be positive and finite"));
        }
        if !driver_strength.is_finite() {
            return Err(Error::invalid("driver_strength", "must be finite"));
        }
        if let ScheduleShape::Tabulated { problem, driver } = &shape {
            if problem.len() < 2 || problem.len() != driver.len() {
                return Err(Error::invalid(
                    "schedule",
                    "tables need matching lengths of at least 2",
                ));
            }
            let (p0, p1) = (problem[0], problem[problem.len() - 1]);
            let (d0, d1) = (driver[0], driver[driver.len() - 1]);
            if p0 != 0.0 || p1 != 1.0 || d0 != 1.0 || d1 != 0.0 {
                return Err(Error::invalid(
                    "schedule",
                    "boundary conditions f_p(0)=0, f_p(T)=1, f_d(0)=1, f_d(T)=0",
                ));
            }
        }
        Ok(AnnealSchedule {
            total_time,
            driver_strength,
            shape,
        })
    }

    /// `(f_p(t), f_d(t))`.
    pub fn coefficients(&self, t: f64) -> (f64, f64) {
        let s = (t / self.total_time).clamp(0.0, 1.0);
        match &self.shape {
            ScheduleShape::Linear => (s, 1.0 - s),
            ScheduleShape::Tabulated { problem, driver } => {
                let x = s * (problem.len() - 1) as f64;
                let i = (x as usize).min(problem.len() - 2);
                let w = x - i as f64;
                (
                    problem[i] * (1.0 - w) + problem[i + 1] * w,
                    driver[i] * (1.0 - w) + driver[i + 1] * w,
                )
            }
        }
    }
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            total_time: DEFAULT_TOTAL_TIME,
            driver_strength: DEFAULT_DRIVER_STRENGTH,
            shape: ScheduleShape::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LevelPopulation {
    pub energy: f64,
    pub population: f64,
}

#[derive(Debug, Clone)]
pub struct QaResult {
    pub state: StateVector,
    /// `⟨Ĥ_SVP⟩` of the final state.
    pub energy: f64,
    pub variance: f64,
    /// Weight on the ground space of the folded operator.
    pub ground_overlap: f64,
    /// Populations of the `Ĥ_SVP` levels, lowest first.
    pub populations: Vec<LevelPopulation>,
    pub steps: usize,
}

/// Anneals from `|+⟩^⊗N` under the folded operator `hfold`; expectations
/// are reported against `hsvp`.
pub fn qa_evolve(
    hfold: &DiagonalHamiltonian,
    hsvp: &DiagonalHamiltonian,
    schedule: &AnnealSchedule,
    dt: f64,
) -> Result<QaResult> {
    qa_evolve_from(
        hfold,
        hsvp,
        schedule,
        dt,
        StateVector::uniform(hfold.num_qubits()),
    )
}

pub fn qa_evolve_from(
    hfold: &DiagonalHamiltonian,
    hsvp: &DiagonalHamiltonian,
    schedule: &AnnealSchedule,
    dt: f64,
    initial: StateVector,
) -> Result<QaResult> {
    if hfold.len() != hsvp.len() {
        return Err(Error::DimensionMismatch {
            expected: hfold.len(),
            found: hsvp.len(),
        });
    }
    if initial.len() != hfold.len() {
        return Err(Error::DimensionMismatch {
            expected: hfold.len(),
            found: initial.len(),
        });
    }
    if !(dt > 0.0) || dt > schedule.total_time / 1000.0 * (1.0 + 1e-12) {
        return Err(Error::invalid("dt", "must be positive and at most T/1000"));
    }
    let steps = math::ceil(schedule.total_time / dt - 1e-9) as usize;
    let dt = schedule.total_time / steps as f64;
    let num_qubits = hfold.num_qubits();
    let energies = hfold.energies();
    let mut state = initial;
    {
        let psi = state.amplitudes_mut();
        for j in 0..steps {
            let t_mid = (j as f64 + 0.5) * dt;
            let (fp, fd) = schedule.coefficients(t_mid);
            apply_diagonal_phase(psi, energies, 0.5 * dt * fp);
            apply_driver(psi, num_qubits, dt * fd * schedule.driver_strength);
            apply_diagonal_phase(psi, energies, 0.5 * dt * fp);
        }
    }
    let drift = math::abs(state.norm_sqr() - 1.0);
    if drift > MAX_NORM_DRIFT {
        return Err(Error::StepSize { drift });
    }
    summarize(state, hfold, hsvp, steps)
}

fn summarize(
    state: StateVector,
    hfold: &DiagonalHamiltonian,
    hsvp: &DiagonalHamiltonian,
    steps: usize,
) -> Result<QaResult> {
    let moments = moments_unchecked(hsvp.energies(), &state);
    let ground_overlap = hfold
        .argmin(FOLD_GROUND_TOLERANCE)
        .iter()
        .map(|&i| state.probability(i))
        .sum();
    let spectrum = levels(hsvp, LEVEL_TOLERANCE);
    let mut populations: Vec<LevelPopulation> = spectrum
        .levels
        .iter()
        .map(|l| LevelPopulation {
            energy: l.value,
            population: 0.0,
        })
        .collect();
    let values = spectrum.values();
    for (i, e) in hsvp.energies().iter().enumerate() {
        let pos = values
            .partition_point(|v| *v <= *e + LEVEL_TOLERANCE)
            .saturating_sub(1);
        populations[pos].population += state.probability(i);
    }
    Ok(QaResult {
        state,
        energy: moments.mean,
        variance: moments.variance,
        ground_overlap,
        populations,
        steps,
    })
}

/// `ψ_s ← e^{-i c E_s} ψ_s`.
fn apply_diagonal_phase(psi: &mut [Complex64], energies: &[f64], c: f64) {
    if c == 0.0 {
        return;
    }
    for (a, e) in psi.iter_mut().zip(energies) {
        let phi = -c * e;
        *a *= Complex64::new(math::cos(phi), math::sin(phi));
    }
}

/// `e^{-i θ (-Σ σ_x)} = Π_q (cos θ + i sin θ σ_x^(q))`.
fn apply_driver(psi: &mut [Complex64], num_qubits: usize, theta: f64) {
    if theta == 0.0 {
        return;
    }
    let c = math::cos(theta);
    let s = Complex64::new(0.0, math::sin(theta));
    for q in 0..num_qubits {
        let stride = 1usize << q;
        for block in (0..psi.len()).step_by(2 * stride) {
            for i in block..block + stride {
                let a0 = psi[i];
                let a1 = psi[i + stride];
                psi[i] = a0 * c + a1 * s;
                psi[i + stride] = a0 * s + a1 * c;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepPoint {
    pub omega: f64,
    pub energy: f64,
    pub ground_overlap: f64,
}

/// One anneal per `ω` on the instance folded with `m = 1`.
pub fn omega_point(
    instance: &SvpInstance,
    omega: f64,
    schedule: &AnnealSchedule,
    dt: f64,
) -> Result<SweepPoint> {
    let hfold = instance.folded(FoldConfig::new(omega, 1)?);
    let r = qa_evolve(&hfold, instance.hamiltonian(), schedule, dt)?;
    Ok(SweepPoint {
        omega,
        energy: r.energy,
        ground_overlap: r.ground_overlap,
    })
}

pub fn omega_sweep(
    instance: &SvpInstance,
    omegas: &[f64],
    schedule: &AnnealSchedule,
    dt: f64,
) -> Result<Vec<SweepPoint>> {
    if omegas.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::invalid("omegas", "must be sorted ascending"));
    }
    omegas
        .iter()
        .map(|&w| omega_point(instance, w, schedule, dt))
        .collect()
}
