use std::f64::consts::PI;

use proptest::prelude::*;
use svpfold_core::qanneal::{qa_evolve, AnnealSchedule, DEFAULT_DT};
use svpfold_core::sanneal::{sa_histogram, SaConfig};
use svpfold_core::searchbound::{search_and_bound, Solver, DEFAULT_ALPHA, DEFAULT_MAX_ITER};
use svpfold_core::{
    EncodingKind, EncodingScheme, FoldConfig, LambdaStrategy, LatticeBasis, SvpInstance,
};

fn instance(basis: &LatticeBasis, kind: EncodingKind, lambda: LambdaStrategy) -> SvpInstance {
    let scheme = EncodingScheme::new(kind, 2, basis.dimension()).unwrap();
    SvpInstance::new(basis.gram().unwrap(), scheme, lambda).unwrap()
}

fn planar() -> impl Strategy<Value = LatticeBasis> {
    (0.5..2.0f64, 0.5..2.0f64, PI / 24.0..PI / 2.0)
        .prop_map(|(a, b, t)| LatticeBasis::planar(a, b, t).unwrap())
}

fn box_norms(basis: &LatticeBasis, lo: i64, hi: i64) -> Vec<f64> {
    let b = basis.vectors();
    let mut out = Vec::new();
    for x1 in lo..=hi {
        for x2 in lo..=hi {
            let v: Vec<f64> = (0..b[0].len())
                .map(|i| x1 as f64 * b[0][i] + x2 as f64 * b[1][i])
                .collect();
            out.push(v.iter().map(|c| c * c).sum::<f64>());
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn feasible_spectrum_matches_box_norms(basis in planar()) {
        for kind in [EncodingKind::OneHot, EncodingKind::HammingWeight, EncodingKind::Binary] {
            let inst = instance(&basis, kind, LambdaStrategy::Conservative);
            let (lo, hi) = inst.scheme().coefficient_range();
            let mut feasible: Vec<f64> = (0..1usize << inst.num_qubits()).filter_map(|s| inst.norm_of_state(s)).collect();
            feasible.sort_by(f64::total_cmp);
            feasible.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
            let expected = box_norms(&basis, lo, hi);
            prop_assert_eq!(feasible.len(), expected.len());
            for (a, b) in feasible.iter().zip(&expected) {
                prop_assert!((a - b).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn one_hot_first_excited_level_is_the_shortest_vector(basis in planar()) {
        let inst = instance(&basis, EncodingKind::OneHot, LambdaStrategy::Conservative);
        let oracle = inst.oracle().unwrap();
        let first = inst.levels().levels[1].value;
        prop_assert!((first - oracle.shortest_norm_sq).abs() <= 1e-9);
        for (s, &e) in inst.hamiltonian().energies().iter().enumerate() {
            if (e - first).abs() <= 1e-9 {
                let x = inst.decode(s).feasible().cloned();
                prop_assert!(x.is_some_and(|x| oracle.contains(&x)));
            }
        }
    }

    #[test]
    fn histogram_counts_sum_to_reads(reads in 1usize..40, seed in any::<u64>()) {
        let inst = instance(&LatticeBasis::normalized_2d(PI / 2.0).unwrap(), EncodingKind::OneHot, LambdaStrategy::Fixed(2.5));
        let h = sa_histogram(&inst, &SaConfig::new(0.8, reads, seed, 1.0)).unwrap();
        prop_assert_eq!(h.total(), reads);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_and_bound_keeps_alpha_and_brackets_e1(basis in planar()) {
        let inst = instance(&basis, EncodingKind::OneHot, LambdaStrategy::Conservative);
        let e1 = inst.oracle().unwrap().shortest_norm_sq;
        let levels = inst.levels().values();
        let report = search_and_bound(&inst, &Solver::exact_qite(), DEFAULT_MAX_ITER).unwrap();
        for round in &report.rounds {
            prop_assert_eq!(round.alpha, DEFAULT_ALPHA);
            prop_assert!(round.alpha <= e1 && e1 <= round.beta);
            for &f in &round.found {
                prop_assert!(levels.iter().any(|l| (l - f).abs() <= 1e-6));
            }
        }
        prop_assert!(report.betas.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn anneal_preserves_norm_at_default_step() {
    let inst = instance(
        &LatticeBasis::normalized_2d(PI / 2.0).unwrap(),
        EncodingKind::OneHot,
        LambdaStrategy::Fixed(2.5),
    );
    let hfold = inst.folded(FoldConfig::at(1.0));
    let r = qa_evolve(
        &hfold,
        inst.hamiltonian(),
        &AnnealSchedule::default(),
        DEFAULT_DT,
    )
    .unwrap();
    let norm: f64 = r.state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-8);
}

#[test]
fn ground_overlap_grows_with_anneal_time() {
    let inst = instance(
        &LatticeBasis::normalized_2d(PI / 2.0).unwrap(),
        EncodingKind::OneHot,
        LambdaStrategy::Fixed(2.5),
    );
    let hfold = inst.folded(FoldConfig::at(1.0));
    let overlaps: Vec<f64> = [10.0, 30.0, 100.0]
        .iter()
        .map(|&t| {
            qa_evolve(
                &hfold,
                inst.hamiltonian(),
                &AnnealSchedule::linear(t, 1.0).unwrap(),
                DEFAULT_DT,
            )
            .unwrap()
            .ground_overlap
        })
        .collect();
    assert!(overlaps.windows(2).all(|w| w[1] >= w[0]), "{overlaps:?}");
}
