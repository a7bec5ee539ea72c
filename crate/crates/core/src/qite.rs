//! Exact imaginary-time evolution under diagonal folded operators.
//!
//! For a diagonal operator the propagator `e^{-Hτ}` is a per-amplitude
//! decay, so evolution is done in closed form rather than by stepping.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::encoding::{EncodingKind, EncodingScheme, LambdaStrategy};
use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::instance::SvpInstance;
use crate::lattice::LatticeBasis;
use crate::math;
use crate::spectrum::{moments_unchecked, FoldConfig};
use crate::state::StateVector;

/// Fidelity threshold used for the evolution-time experiments.
pub const DEFAULT_THRESHOLD: f64 = 0.99;
/// Two folded energies closer than this belong to the same ground space.
pub const FOLD_GROUND_TOLERANCE: f64 = 1e-9;

/// `ψ(τ) ∝ e^{-H τ} ψ0`, renormalized.
///
/// Energies are shifted by their minimum over the support of `psi0` before
/// exponentiating, which leaves the normalized result unchanged.
pub fn qite_evolve(
    hfold: &DiagonalHamiltonian,
    psi0: &StateVector,
    tau: f64,
) -> Result<StateVector> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::invalid("tau", "must be finite and non-negative"));
    }
    if psi0.len() != hfold.len() {
        return Err(Error::DimensionMismatch {
            expected: hfold.len(),
            found: psi0.len(),
        });
    }
    let shift = hfold
        .energies()
        .iter()
        .zip(psi0.amplitudes())
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(e, _)| *e)
        .fold(f64::INFINITY, f64::min);
    if !shift.is_finite() {
        return Err(Error::Underflow);
    }
    let amplitudes: Vec<Complex64> = hfold
        .energies()
        .iter()
        .zip(psi0.amplitudes())
        .map(|(e, a)| a * math::exp(-(e - shift) * tau))
        .collect();
    StateVector::normalized(amplitudes)
}

/// `Σ_{s ∈ target} |ψ_s|²`.
pub fn fidelity_to_subspace(psi: &StateVector, target: &[usize]) -> Result<f64> {
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let mut f = 0.0;
    for &s in target {
        if s >= psi.len() {
            return Err(Error::DimensionMismatch {
                expected: psi.len(),
                found: s,
            });
        }
        f += psi.probability(s);
    }
    Ok(f)
}

/// A folded-spectrum QITE run: the problem Hamiltonian, its folded
/// counterpart, the state set whose weight is tracked, and the start state.
#[derive(Debug, Clone)]
pub struct QiteProblem {
    hsvp: DiagonalHamiltonian,
    hfold: DiagonalHamiltonian,
    target: Vec<usize>,
    initial: StateVector,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QiteTrajectory {
    pub taus: Vec<f64>,
    pub fidelities: Vec<f64>,
    pub energies: Vec<f64>,
}

impl QiteProblem {
    /// Checks that the ground space of `hfold` is exactly `target`; the
    /// start state is the uniform superposition.
    pub fn new(
        hsvp: DiagonalHamiltonian,
        hfold: DiagonalHamiltonian,
        mut target: Vec<usize>,
    ) -> Result<Self> {
        if target.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if hsvp.len() != hfold.len() {
            return Err(Error::DimensionMismatch {
                expected: hsvp.len(),
                found: hfold.len(),
            });
        }
        target.sort_unstable();
        target.dedup();
        if hfold.argmin(FOLD_GROUND_TOLERANCE) != target {
            return Err(Error::FoldMismatch);
        }
        let initial = StateVector::uniform(hfold.num_qubits());
        Ok(QiteProblem {
            hsvp,
            hfold,
            target,
            initial,
        })
    }

    /// Folds the instance at `cfg` and targets every state whose `Ĥ_SVP`
    /// energy matches `target_energy`.
    pub fn from_instance(
        instance: &SvpInstance,
        cfg: FoldConfig,
        target_energy: f64,
    ) -> Result<Self> {
        let target = instance.states_at(target_energy, crate::spectrum::LEVEL_TOLERANCE);
        Self::new(instance.hamiltonian().clone(), instance.folded(cfg), target)
    }

    pub fn with_initial(mut self, psi0: StateVector) -> Result<Self> {
        if psi0.len() != self.hfold.len() {
            return Err(Error::DimensionMismatch {
                expected: self.hfold.len(),
                found: psi0.len(),
            });
        }
        self.initial = psi0;
        Ok(self)
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn folded(&self) -> &DiagonalHamiltonian {
        &self.hfold
    }

    pub fn evolve(&self, tau: f64) -> Result<StateVector> {
        qite_evolve(&self.hfold, &self.initial, tau)
    }

    pub fn fidelity(&self, tau: f64) -> Result<f64> {
        fidelity_to_subspace(&self.evolve(tau)?, &self.target)
    }

    /// Gap between the lowest and second-lowest folded levels.
    pub fn folded_gap(&self) -> f64 {
        let ground = self.hfold.min();
        self.hfold
            .energies()
            .iter()
            .copied()
            .filter(|e| *e - ground > FOLD_GROUND_TOLERANCE)
            .fold(f64::INFINITY, f64::min)
            - ground
    }

    pub fn trajectory(&self, taus: &[f64]) -> Result<QiteTrajectory> {
        if taus.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("taus", "must be strictly increasing"));
        }
        let mut out = QiteTrajectory {
            taus: taus.to_vec(),
            fidelities: Vec::with_capacity(taus.len()),
            energies: Vec::with_capacity(taus.len()),
        };
        for &tau in taus {
            let psi = self.evolve(tau)?;
            out.fidelities
                .push(fidelity_to_subspace(&psi, &self.target)?);
            out.energies
                .push(moments_unchecked(self.hsvp.energies(), &psi).mean);
        }
        Ok(out)
    }
}

/// Smallest `τ` at which the target fidelity reaches `f_th`, bracketed by
/// doubling and refined by bisection.
pub fn threshold_time(problem: &QiteProblem, f_th: f64, tau_max: f64) -> Result<f64> {
    if !(f_th > 0.0 && f_th < 1.0) {
        return Err(Error::invalid("f_th", "must lie in (0, 1)"));
    }
    if !(tau_max > 0.0) {
        return Err(Error::invalid("tau_max", "must be positive"));
    }
    if problem.fidelity(0.0)? >= f_th {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1e-6_f64.min(tau_max);
    while problem.fidelity(hi)? < f_th {
        if hi >= tau_max {
            return Err(Error::NotConverged {
                tau: tau_max,
                fidelity: problem.fidelity(tau_max)?,
            });
        }
        lo = hi;
        hi = (hi * 2.0).min(tau_max);
    }
    // relative width 1e-12 is far below the 1e-4 the experiments need
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if problem.fidelity(mid)? >= f_th {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Parameters shared by every point of an angle sweep over the normalized
/// two-dimensional family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AngleSweepConfig {
    pub k: u32,
    pub lambda: LambdaStrategy,
    pub m: u32,
    pub f_th: f64,
    pub tau_max: f64,
}

impl Default for AngleSweepConfig {
    fn default() -> Self {
        AngleSweepConfig {
            k: 2,
            lambda: LambdaStrategy::Fixed(2.5),
            m: 1,
            f_th: DEFAULT_THRESHOLD,
            tau_max: 1e9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnglePoint {
    pub theta: f64,
    /// Fold point used, the oracle first excited energy.
    pub omega: f64,
    pub time: Result<f64>,
}

/// One-hot QITE instance for angle `theta`, folded at the oracle `E₁`.
pub fn angle_problem(theta: f64, cfg: &AngleSweepConfig) -> Result<(QiteProblem, f64)> {
    let gram = LatticeBasis::normalized_2d(theta)?.gram()?;
    let scheme = EncodingScheme::new(EncodingKind::OneHot, cfg.k, 2)?;
    let instance = SvpInstance::new(gram, scheme, cfg.lambda)?;
    let omega = instance.oracle()?.shortest_norm_sq;
    let problem = QiteProblem::from_instance(&instance, FoldConfig::new(omega, cfg.m)?, omega)?;
    Ok((problem, omega))
}

pub fn angle_point(theta: f64, cfg: &AngleSweepConfig) -> AnglePoint {
    if !(theta > 0.0 && theta <= core::f64::consts::FRAC_PI_3 + 1e-12) {
        return AnglePoint {
            theta,
            omega: f64::NAN,
            time: Err(Error::invalid("theta", "sweep angles must lie in (0, π/3]")),
        };
    }
    match angle_problem(theta, cfg) {
        Ok((problem, omega)) => AnglePoint {
            theta,
            omega,
            time: threshold_time(&problem, cfg.f_th, cfg.tau_max),
        },
        Err(e) => AnglePoint {
            theta,
            omega: f64::NAN,
            time: Err(e),
        },
    }
}

pub fn angle_sweep(thetas: &[f64], cfg: &AngleSweepConfig) -> Vec<AnglePoint> {
    thetas.iter().map(|&t| angle_point(t, cfg)).collect()
}

/// `T = a θ^{-b}` fitted by least squares in log-log space.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PowerLawFit {
    pub a: f64,
    pub b: f64,
    pub r_squared: f64,
}

pub fn power_law_fit(records: &[(f64, f64)]) -> Result<PowerLawFit> {
    if records.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: records.len(),
        });
    }
    if records.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::invalid(
            "records",
            "angles and times must be positive",
        ));
    }
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|&(x, y)| (math::ln(x), math::ln(y)))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::invalid("records", "angles must not all coincide"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let ss_res: f64 = pts
        .iter()
        .map(|p| math::powu(p.1 - intercept - slope * p.0, 2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(PowerLawFit {
        a: math::exp(intercept),
        b: -slope,
        r_squared,
    })
}
