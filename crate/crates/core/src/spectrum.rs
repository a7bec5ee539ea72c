//! Spectrum folding and level enumeration for diagonal Hamiltonians.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hamiltonian::{DiagonalHamiltonian, HamiltonianKind};
use crate::math;
use crate::state::{StateVector, NORM_TOLERANCE};

/// Default tolerance for merging nearly equal energies into one level.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

/// Fold point `ω` and exponent `m` of `(H - ω)^(2m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FoldConfig {
    pub omega: f64,
    pub m: u32,
}

impl FoldConfig {
    pub fn new(omega: f64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m", "fold exponent must be at least 1"));
        }
        if !omega.is_finite() {
            return Err(Error::invalid("omega", "must be finite"));
        }
        Ok(FoldConfig { omega, m })
    }

    pub fn at(omega: f64) -> Self {
        FoldConfig { omega, m: 1 }
    }

    #[inline]
    pub fn apply(&self, energy: f64) -> f64 {
        math::powu(energy - self.omega, 2 * self.m)
    }
}

impl Default for FoldConfig {
    fn default() -> Self {
        FoldConfig { omega: 0.0, m: 1 }
    }
}

/// Entrywise `(E - ω)^(2m)`. The basis-state ordering is untouched.
pub fn fold(h: &DiagonalHamiltonian, cfg: FoldConfig) -> DiagonalHamiltonian {
    let energies = h.energies().iter().map(|&e| cfg.apply(e)).collect();
    DiagonalHamiltonian::from_parts(HamiltonianKind::Folded, h.num_qubits(), energies)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Level {
    pub value: f64,
    pub degeneracy: usize,
    /// Lowest basis-state index in the level.
    pub representative: usize,
}

/// Distinct energies in increasing order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectrumLevels {
    pub tolerance: f64,
    pub levels: Vec<Level>,
}

impl SpectrumLevels {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Level> {
        self.levels.get(i)
    }

    pub fn values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.value).collect()
    }

    pub fn total_degeneracy(&self) -> usize {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }

    /// Level closest to `value`.
    pub fn nearest(&self, value: f64) -> Option<&Level> {
        self.levels
            .iter()
            .min_by(|a, b| math::abs(a.value - value).total_cmp(&math::abs(b.value - value)))
    }

    /// Values strictly inside `(lo, hi)`.
    pub fn values_between(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.levels
            .iter()
            .map(|l| l.value)
            .filter(|&v| v > lo && v < hi)
            .collect()
    }
}

/// Groups energies into levels. A level starts at its lowest member and
/// absorbs every energy within `tol` of it.
pub fn levels(h: &DiagonalHamiltonian, tol: f64) -> SpectrumLevels {
    let mut order: Vec<usize> = (0..h.len()).collect();
    order.sort_by(|&a, &b| h.energy(a).total_cmp(&h.energy(b)).then(a.cmp(&b)));
    let mut out: Vec<Level> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for idx in order {
        let e = h.energy(idx);
        match out.last_mut() {
            Some(level) if e - start <= tol => {
                level.degeneracy += 1;
                level.representative = level.representative.min(idx);
            }
            _ => {
                start = e;
                out.push(Level {
                    value: e,
                    degeneracy: 1,
                    representative: idx,
                });
            }
        }
    }
    SpectrumLevels {
        tolerance: tol,
        levels: out,
    }
}

/// Mean and variance of a diagonal observable.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

pub fn expectation(h: &DiagonalHamiltonian, psi: &StateVector) -> Result<Moments> {
    if psi.len() != h.len() {
        return Err(Error::DimensionMismatch {
            expected: h.len(),
            found: psi.len(),
        });
    }
    let norm_sqr = psi.norm_sqr();
    if math::abs(norm_sqr - 1.0) > NORM_TOLERANCE {
        return Err(Error::Unnormalized { norm_sqr });
    }
    Ok(moments_unchecked(h.energies(), psi))
}

pub(crate) fn moments_unchecked(energies: &[f64], psi: &StateVector) -> Moments {
    let mut mean = 0.0;
    let mut second = 0.0;
    for (e, a) in energies.iter().zip(psi.amplitudes()) {
        let p = a.norm_sqr();
        mean += e * p;
        second += e * e * p;
    }
    Moments {
        mean,
        variance: (second - mean * mean).max(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{
        build_penalty, build_problem, compose_svp, EncodingKind, EncodingScheme,
    };
    use crate::lattice::{brute_force_svp, GramMatrix, LatticeBasis};
    use alloc::vec;
    use core::f64::consts::PI;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn svp(theta: f64, lambda: f64) -> (EncodingScheme, DiagonalHamiltonian) {
        let g = LatticeBasis::normalized_2d(theta).unwrap().gram().unwrap();
        let s = EncodingScheme::new(EncodingKind::OneHot, 2, 2).unwrap();
        let h = compose_svp(
            &build_problem(&s, &g).unwrap(),
            Some(&build_penalty(&s, lambda).unwrap()),
        )
        .unwrap();
        (s, h)
    }

    #[test]
    fn fold_examples() {
        let h = DiagonalHamiltonian::new(HamiltonianKind::Svp, vec![0.0, 0.5]).unwrap();
        let f = fold(&h, FoldConfig::at(0.5));
        assert_eq!(f.energies(), &[0.25, 0.0]);
        assert_eq!(f.kind(), HamiltonianKind::Folded);
        assert_eq!(FoldConfig::new(1.0, 2).unwrap().apply(3.0), 16.0);
        assert!(FoldConfig::new(1.0, 0).is_err());
    }

    #[test]
    fn fold_ground_is_shortest_vector_subspace() {
        let (s, h) = svp(PI / 3.0, 13.0);
        let sol = brute_force_svp(&LatticeBasis::normalized_2d(PI / 3.0).unwrap(), 2).unwrap();
        let f = fold(&h, FoldConfig::at(0.9 * sol.shortest_norm_sq));
        let mut ground: Vec<usize> = f.argmin(1e-9);
        ground.sort();
        let mut expected: Vec<usize> = sol
            .minimizers
            .iter()
            .map(|x| s.encode(x).unwrap())
            .collect();
        expected.sort();
        assert_eq!(ground, expected);
    }

    #[test]
    fn levels_of_reference_instances() {
        let (_, h) = svp(PI / 3.0, 13.0);
        let lv = levels(&h, LEVEL_TOLERANCE);
        assert_eq!(lv.levels[0].value, 0.0);
        assert_eq!(lv.levels[0].degeneracy, 1);
        assert!((lv.levels[1].value - 1.0).abs() < 1e-9);
        assert_eq!(lv.levels[1].degeneracy, 6);
        assert_eq!(lv.total_degeneracy(), 1024);

        let (_, h) = svp(PI / 2.0, 13.0);
        let lv = levels(&h, LEVEL_TOLERANCE);
        assert!((lv.levels[1].value - 1.0).abs() < 1e-9);
        assert_eq!(lv.levels[1].degeneracy, 4);
        assert!(lv.levels.windows(2).all(|w| w[0].value < w[1].value));
    }

    #[test]
    fn one_dimensional_feasible_levels() {
        let g = GramMatrix::from_rows(&[vec![1.0]]).unwrap();
        let s = EncodingScheme::new(EncodingKind::OneHot, 1, 1).unwrap();
        let hp = build_problem(&s, &g).unwrap();
        let feasible: Vec<f64> = (0..s.state_count())
            .filter(|&i| s.decode_index(i).feasible().is_some())
            .map(|i| hp.energy(i))
            .collect();
        let h = DiagonalHamiltonian::new(HamiltonianKind::Problem, {
            let mut v = feasible.clone();
            v.push(1.0);
            v
        })
        .unwrap();
        assert_eq!(levels(&h, LEVEL_TOLERANCE).values(), vec![0.0, 1.0]);
    }

    #[test]
    fn expectation_examples() {
        let h = DiagonalHamiltonian::new(HamiltonianKind::Svp, vec![0.0, 1.0, 3.0, 3.0]).unwrap();
        let b = StateVector::basis(2, 2).unwrap();
        assert_eq!(expectation(&h, &b).unwrap().mean, 3.0);

        let s = 1.0 / 2f64.sqrt();
        let half = StateVector::from_amplitudes(vec![
            Complex64::new(s, 0.0),
            Complex64::new(0.0, s),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let m = expectation(&h, &half).unwrap();
        assert!((m.mean - 0.5).abs() < 1e-12);
        assert!((m.variance - 0.25).abs() < 1e-12);

        let level = StateVector::from_amplitudes(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, -0.8),
        ])
        .unwrap();
        assert!(expectation(&h, &level).unwrap().variance < 1e-9);
    }

    #[test]
    fn expectation_rejects_unnormalized() {
        let h = DiagonalHamiltonian::new(HamiltonianKind::Svp, vec![0.0, 1.0]).unwrap();
        let psi = StateVector::from_raw(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(matches!(
            expectation(&h, &psi),
            Err(Error::Unnormalized { .. })
        ));
    }

    proptest! {
        #[test]
        fn fold_argmin_is_nearest_to_omega(
            energies in proptest::collection::vec(0u32..40, 16),
            omega in -2.0f64..42.0,
            m in 1u32..4,
        ) {
            // quarter-integer energies keep distances exactly comparable
            let e: Vec<f64> = energies.iter().map(|&v| f64::from(v) * 0.25).collect();
            let h = DiagonalHamiltonian::new(HamiltonianKind::Svp, e.clone()).unwrap();
            let f = fold(&h, FoldConfig::new(omega, m).unwrap());
            let best = e.iter().map(|v| (v - omega).abs()).fold(f64::INFINITY, f64::min);
            for i in f.argmin(0.0) {
                prop_assert!(((e[i] - omega).abs() - best).abs() < 1e-12);
            }
            prop_assert_eq!(f.len(), h.len());
        }

        #[test]
        fn degeneracies_cover_the_space(energies in proptest::collection::vec(-5.0f64..5.0, 32)) {
            let h = DiagonalHamiltonian::new(HamiltonianKind::Svp, energies).unwrap();
            prop_assert_eq!(levels(&h, 1e-3).total_degeneracy(), 32);
        }
    }
}
