//! A fully encoded SVP instance: Gram matrix, encoding and `Ĥ_SVP`.

use alloc::vec::Vec;

use crate::encoding::{
    build_penalty, build_problem, choose_lambda, compose_svp, DecodeResult, EncodingScheme,
    LambdaStrategy,
};
use crate::error::{Error, Result};
use crate::hamiltonian::DiagonalHamiltonian;
use crate::lattice::{norm_squared, shortest_in_box, GramMatrix, SvpSolution};
use crate::spectrum::{fold, levels, FoldConfig, SpectrumLevels, LEVEL_TOLERANCE};

#[derive(Debug, Clone)]
pub struct SvpInstance {
    gram: GramMatrix,
    scheme: EncodingScheme,
    lambda: Option<f64>,
    hsvp: DiagonalHamiltonian,
}

impl SvpInstance {
    /// Builds `Ĥ_SVP`. The penalty strength is only used by the one-hot
    /// encoding; the other encodings are penalty-free and ignore it.
    pub fn new(gram: GramMatrix, scheme: EncodingScheme, lambda: LambdaStrategy) -> Result<Self> {
        if gram.dimension() != scheme.lattice_dimension() {
            return Err(Error::DimensionMismatch {
                expected: scheme.lattice_dimension(),
                found: gram.dimension(),
            });
        }
        let problem = build_problem(&scheme, &gram)?;
        let (lambda, hsvp) = if scheme.needs_penalty() {
            let value = choose_lambda(&gram, scheme.k(), lambda);
            let penalty = build_penalty(&scheme, value)?;
            (Some(value), compose_svp(&problem, Some(&penalty))?)
        } else {
            (None, compose_svp(&problem, None)?)
        };
        Ok(SvpInstance {
            gram,
            scheme,
            lambda,
            hsvp,
        })
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn scheme(&self) -> &EncodingScheme {
        &self.scheme
    }

    pub fn lambda(&self) -> Option<f64> {
        self.lambda
    }

    pub fn hamiltonian(&self) -> &DiagonalHamiltonian {
        &self.hsvp
    }

    pub fn num_qubits(&self) -> usize {
        self.scheme.num_qubits()
    }

    pub fn folded(&self, cfg: FoldConfig) -> DiagonalHamiltonian {
        fold(&self.hsvp, cfg)
    }

    pub fn levels(&self) -> SpectrumLevels {
        levels(&self.hsvp, LEVEL_TOLERANCE)
    }

    pub fn decode(&self, index: usize) -> DecodeResult {
        self.scheme.decode_index(index)
    }

    /// Squared norm of the lattice vector a basis state encodes, if feasible.
    pub fn norm_of_state(&self, index: usize) -> Option<f64> {
        match self.decode(index) {
            DecodeResult::Feasible(x) => norm_squared(&x, &self.gram).ok(),
            DecodeResult::Infeasible { .. } => None,
        }
    }

    /// Brute-force oracle over exactly the integer box this encoding spans.
    pub fn oracle(&self) -> Result<SvpSolution> {
        let (lo, hi) = self.scheme.coefficient_range();
        shortest_in_box(&self.gram, lo, hi)
    }

    /// Basis states whose `Ĥ_SVP` energy is within `tol` of `energy`.
    pub fn states_at(&self, energy: f64, tol: f64) -> Vec<usize> {
        self.hsvp.indices_near(energy, tol)
    }

    /// Largest `Ĥ_p` value over the feasible box, read off the box corners.
    pub fn max_feasible_norm(&self) -> f64 {
        let (lo, hi) = self.scheme.coefficient_range();
        let n = self.scheme.lattice_dimension();
        let mut best: f64 = 0.0;
        for mask in 0..(1usize << n) {
            let x: Vec<i64> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { hi } else { lo })
                .collect();
            if let Ok(e) = norm_squared(&x, &self.gram) {
                best = best.max(e);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodingKind;
    use crate::lattice::LatticeBasis;
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn one_hot_instance_structure() {
        let g = LatticeBasis::normalized_2d(PI / 3.0)
            .unwrap()
            .gram()
            .unwrap();
        let scheme = EncodingScheme::new(EncodingKind::OneHot, 2, 2).unwrap();
        let inst = SvpInstance::new(g, scheme, LambdaStrategy::Fixed(2.5)).unwrap();
        assert_eq!(inst.lambda(), Some(2.5));
        assert_eq!(
            inst.hamiltonian().argmin(0.0),
            vec![scheme.encode(&[0, 0]).unwrap()]
        );
        assert_eq!(inst.states_at(1.0, 1e-9).len(), 6);
        assert!((inst.max_feasible_norm() - 12.0).abs() < 1e-12);
        assert_eq!(inst.norm_of_state(0), None);
    }

    #[test]
    fn penalty_free_instances_ignore_lambda() {
        let g = LatticeBasis::normalized_2d(PI / 2.0)
            .unwrap()
            .gram()
            .unwrap();
        let scheme = EncodingScheme::new(EncodingKind::Binary, 1, 2).unwrap();
        let inst = SvpInstance::new(g, scheme, LambdaStrategy::Fixed(2.5)).unwrap();
        assert_eq!(inst.lambda(), None);
        assert_eq!(inst.oracle().unwrap().shortest_norm_sq, 1.0);
        // binary k=1 spans [-2, 1]; the corner (-2,-2) has norm 8
        assert_eq!(inst.max_feasible_norm(), 8.0);
    }

    #[test]
    fn dimension_mismatch() {
        let g = GramMatrix::from_rows(&[vec![1.0]]).unwrap();
        let scheme = EncodingScheme::new(EncodingKind::OneHot, 1, 2).unwrap();
        assert!(SvpInstance::new(g, scheme, LambdaStrategy::Conservative).is_err());
    }
}
