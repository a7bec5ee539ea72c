//! Variational imaginary-time evolution on a hardware-efficient
//! `R_y`/`R_z` ansatz, driven by McLachlan's linear system.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::linalg::solve_regularized;
use crate::math;
use crate::spectrum::moments_unchecked;
use crate::state::StateVector;

pub const DEFAULT_REPS: usize = 2;
pub const DEFAULT_DTAU: f64 = 1e-2;
pub const REGULARIZATION: f64 = 1e-6;
/// Half-width of the uniform initial-parameter distribution.
pub const INITIAL_SPREAD: f64 = 0.1;
/// Consecutive increases of the folded energy that abort a run.
pub const DIVERGENCE_STEPS: usize = 10;
/// Increases of the folded energy below this are not counted as violations.
pub const DESCENT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Ry { qubit: usize, param: usize },
    Rz { qubit: usize, param: usize },
    Cnot { control: usize, target: usize },
}

/// `reps + 1` layers of `R_y` then `R_z` on every qubit, with a linear
/// CNOT chain `(q, q+1)` between consecutive layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Ansatz {
    pub num_qubits: usize,
    pub reps: usize,
}

impl Ansatz {
    pub fn new(num_qubits: usize, reps: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > crate::encoding::MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: num_qubits,
                limit: crate::encoding::MAX_QUBITS,
            });
        }
        Ok(Ansatz { num_qubits, reps })
    }

    pub fn num_params(&self) -> usize {
        2 * self.num_qubits * (self.reps + 1)
    }

    pub fn gates(&self) -> Vec<Gate> {
        let n = self.num_qubits;
        let mut gates = Vec::new();
        for layer in 0..=self.reps {
            let base = layer * 2 * n;
            gates.extend((0..n).map(|q| Gate::Ry {
                qubit: q,
                param: base + q,
            }));
            gates.extend((0..n).map(|q| Gate::Rz {
                qubit: q,
                param: base + n + q,
            }));
            if layer < self.reps {
                gates.extend((0..n.saturating_sub(1)).map(|q| Gate::Cnot {
                    control: q,
                    target: q + 1,
                }));
            }
        }
        gates
    }

    /// Uniform draws in `[-0.1, 0.1]`.
    pub fn random_params(&self, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.num_params())
            .map(|_| rng.random_range(-INITIAL_SPREAD..=INITIAL_SPREAD))
            .collect()
    }

    fn check(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.num_params() {
            return Err(Error::DimensionMismatch {
                expected: self.num_params(),
                found: params.len(),
            });
        }
        Ok(())
    }
}

fn apply_gate(psi: &mut [Complex64], gate: Gate, params: &[f64]) {
    match gate {
        Gate::Ry { qubit, param } => {
            let half = 0.5 * params[param];
            let (c, s) = (math::cos(half), math::sin(half));
            for_pairs(psi, qubit, |a0, a1| (a0 * c - a1 * s, a0 * s + a1 * c));
        }
        Gate::Rz { qubit, param } => {
            let half = 0.5 * params[param];
            let p0 = Complex64::new(math::cos(half), -math::sin(half));
            let p1 = p0.conj();
            for_pairs(psi, qubit, |a0, a1| (a0 * p0, a1 * p1));
        }
        Gate::Cnot { control, target } => {
            let (cm, tm) = (1usize << control, 1usize << target);
            for i in 0..psi.len() {
                if i & cm != 0 && i & tm == 0 {
                    psi.swap(i, i | tm);
                }
            }
        }
    }
}

/// Multiplies by the generator derivative `-i/2 P` of a rotation.
fn apply_generator(psi: &mut [Complex64], gate: Gate) {
    let mi = Complex64::new(0.0, -0.5);
    match gate {
        Gate::Ry { qubit, .. } => {
            // -i/2 Y = 1/2 [[0, -1], [1, 0]]
            for_pairs(psi, qubit, |a0, a1| (-a1 * 0.5, a0 * 0.5));
        }
        Gate::Rz { qubit, .. } => for_pairs(psi, qubit, |a0, a1| (a0 * mi, -a1 * mi)),
        Gate::Cnot { .. } => unreachable!("CNOT carries no parameter"),
    }
}

fn for_pairs(
    psi: &mut [Complex64],
    qubit: usize,
    f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
) {
    let stride = 1usize << qubit;
    for block in (0..psi.len()).step_by(2 * stride) {
        for i in block..block + stride {
            let (b0, b1) = f(psi[i], psi[i + stride]);
            psi[i] = b0;
            psi[i + stride] = b1;
        }
    }
}

fn zero_state(num_qubits: usize) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
    psi[0] = Complex64::new(1.0, 0.0);
    psi
}

/// The ansatz applied to `|0…0⟩`.
pub fn ansatz_state(ansatz: &Ansatz, params: &[f64]) -> Result<StateVector> {
    ansatz.check(params)?;
    let mut psi = zero_state(ansatz.num_qubits);
    for gate in ansatz.gates() {
        apply_gate(&mut psi, gate, params);
    }
    Ok(StateVector::from_raw(psi))
}

/// `∂ψ/∂θ_i` for every parameter, in parameter order.
pub fn derivative_states(ansatz: &Ansatz, params: &[f64]) -> Result<Vec<Vec<Complex64>>> {
    ansatz.check(params)?;
    let gates = ansatz.gates();
    let mut out = vec![Vec::new(); ansatz.num_params()];
    let mut prefix = zero_state(ansatz.num_qubits);
    for (g, &gate) in gates.iter().enumerate() {
        apply_gate(&mut prefix, gate, params);
        let param = match gate {
            Gate::Ry { param, .. } | Gate::Rz { param, .. } => param,
            Gate::Cnot { .. } => continue,
        };
        let mut d = prefix.clone();
        apply_generator(&mut d, gate);
        for &rest in &gates[g + 1..] {
            apply_gate(&mut d, rest, params);
        }
        out[param] = d;
    }
    Ok(out)
}

/// McLachlan system `A θ̇ = -C` at one parameter point.
#[derive(Debug, Clone)]
pub struct McLachlanSystem {
    pub n: usize,
    /// Row-major `Re⟨∂ᵢψ|∂ⱼψ⟩`.
    pub a: Vec<f64>,
    /// `Re⟨∂ᵢψ|H|ψ⟩`.
    pub c: Vec<f64>,
}

pub fn mclachlan_system(
    ansatz: &Ansatz,
    params: &[f64],
    h: &DiagonalHamiltonian,
) -> Result<McLachlanSystem> {
    if h.num_qubits() != ansatz.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << ansatz.num_qubits,
            found: h.len(),
        });
    }
    let psi = ansatz_state(ansatz, params)?;
    let hpsi: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(h.energies())
        .map(|(a, e)| a * e)
        .collect();
    let ds = derivative_states(ansatz, params)?;
    let n = ds.len();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v: f64 = ds[i]
                .iter()
                .zip(&ds[j])
                .map(|(x, y)| (x.conj() * y).re)
                .sum();
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let c = ds
        .iter()
        .map(|d| d.iter().zip(&hpsi).map(|(x, y)| (x.conj() * y).re).sum())
        .collect();
    Ok(McLachlanSystem { n, a, c })
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub params: Vec<f64>,
    pub velocity: Vec<f64>,
    /// `‖A θ̇ + C‖` of the unregularized system.
    pub residual: f64,
}

/// One explicit Euler step of `(A + δI) θ̇ = -C`.
pub fn mclachlan_step(
    ansatz: &Ansatz,
    params: &[f64],
    h: &DiagonalHamiltonian,
    dtau: f64,
) -> Result<StepOutcome> {
    if !(dtau > 0.0 && dtau.is_finite()) {
        return Err(Error::invalid("dtau", "must be positive and finite"));
    }
    let sys = mclachlan_system(ansatz, params, h)?;
    let rhs: Vec<f64> = sys.c.iter().map(|c| -c).collect();
    let velocity = solve_regularized(&sys.a, &rhs, sys.n, REGULARIZATION)?;
    let mut residual = 0.0;
    for i in 0..sys.n {
        let row: f64 = (0..sys.n).map(|j| sys.a[i * sys.n + j] * velocity[j]).sum();
        let r = row + sys.c[i];
        residual += r * r;
    }
    let params = params
        .iter()
        .zip(&velocity)
        .map(|(p, v)| p + v * dtau)
        .collect();
    Ok(StepOutcome {
        params,
        velocity,
        residual: math::sqrt(residual),
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VarQiteStep {
    pub tau: f64,
    pub params: Vec<f64>,
    pub folded_energy: f64,
    pub svp_energy: f64,
    pub svp_variance: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VarQiteTrajectory {
    pub steps: Vec<VarQiteStep>,
    /// Steps where the folded energy rose by more than the descent tolerance.
    pub descent_violations: usize,
}

impl VarQiteTrajectory {
    pub fn last(&self) -> &VarQiteStep {
        self.steps
            .last()
            .expect("trajectory holds the initial point")
    }

    pub fn violation_fraction(&self) -> f64 {
        let n = self.steps.len().saturating_sub(1);
        if n == 0 {
            0.0
        } else {
            self.descent_violations as f64 / n as f64
        }
    }
}

/// Integrates from `params0` to `tau_max` in steps of `dtau`; `dtau = 0`
/// requires `tau_max = 0` and returns only the initial point.
pub fn varqite_run(
    hsvp: &DiagonalHamiltonian,
    hfold: &DiagonalHamiltonian,
    ansatz: &Ansatz,
    params0: &[f64],
    dtau: f64,
    tau_max: f64,
) -> Result<VarQiteTrajectory> {
    if hsvp.len() != hfold.len() {
        return Err(Error::DimensionMismatch {
            expected: hfold.len(),
            found: hsvp.len(),
        });
    }
    if !(tau_max >= 0.0 && tau_max.is_finite()) || !(dtau >= 0.0) || (dtau == 0.0 && tau_max > 0.0)
    {
        return Err(Error::invalid(
            "dtau",
            "need dtau > 0 and tau_max >= 0 (or both zero)",
        ));
    }
    let n_steps = if tau_max == 0.0 {
        0
    } else {
        math::ceil(tau_max / dtau - 1e-9) as usize
    };
    let record = |index: usize, params: Vec<f64>, residual: f64| -> Result<VarQiteStep> {
        let tau = index as f64 * dtau;
        let psi = ansatz_state(ansatz, &params)?;
        let f = moments_unchecked(hfold.energies(), &psi);
        let s = moments_unchecked(hsvp.energies(), &psi);
        if !f.mean.is_finite() {
            return Err(Error::Diverged {
                at: index,
                steps: 0,
            });
        }
        Ok(VarQiteStep {
            tau,
            params,
            folded_energy: f.mean,
            svp_energy: s.mean,
            svp_variance: s.variance,
            residual,
        })
    };
    let mut steps = vec![record(0, params0.to_vec(), 0.0)?];
    let mut violations = 0;
    let mut rising = 0;
    for j in 1..=n_steps {
        let prev = steps.last().expect("non-empty");
        let out = mclachlan_step(ansatz, &prev.params, hfold, dtau)?;
        let prev_energy = prev.folded_energy;
        let step = record(j, out.params, out.residual)?;
        if step.folded_energy > prev_energy + DESCENT_TOLERANCE {
            violations += 1;
            rising += 1;
            if rising >= DIVERGENCE_STEPS {
                return Err(Error::Diverged {
                    at: j,
                    steps: rising,
                });
            }
        } else {
            rising = 0;
        }
        steps.push(step);
    }
    Ok(VarQiteTrajectory {
        steps,
        descent_violations: violations,
    })
}
