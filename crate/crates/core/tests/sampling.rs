use qprop_core::clinalg;
use qprop_core::sampling::{
    find_gap_witness, gap_frequency, haar_state, overdetermination_report, random_projector,
};
use qprop_core::spin::spin32_fixtures;
use qprop_core::valuation::{membership, Membership, MembershipMethod};
use qprop_core::{Error, Projector, Tolerance};

#[test]
fn haar_coordinates_average_one_over_n() {
    // exchangeable coordinates: E|<e_1|psi>|^2 = 1/4 in C^4
    let samples = 100_000u64;
    let mean = (0..samples)
        .map(|s| haar_state(4, s).unwrap().vector()[(0, 0)].norm_sqr())
        .sum::<f64>()
        / samples as f64;
    assert!((mean - 0.25).abs() < 0.01, "mean = {mean}");
}

#[test]
fn every_random_line_leaves_states_gapped() {
    let tol = Tolerance::default();
    for n in [2, 4] {
        let stats = gap_frequency(n, 1, 10_000, 2024, &tol).unwrap();
        assert_eq!(stats.counts.gap, 10_000, "n = {n}");
        assert_eq!(stats.counts.total(), 10_000);
        assert_eq!(stats.gap_fraction(), 1.0);
    }
}

#[test]
fn higher_rank_propositions_also_gap() {
    let tol = Tolerance::default();
    let stats = gap_frequency(6, 3, 2_000, 8, &tol).unwrap();
    assert_eq!(stats.counts.gap, 2_000);
}

#[test]
fn nullity_of_rank_one_projectors() {
    let tol = Tolerance::default();
    for n in 2..=8 {
        let p = random_projector(n, 1, n as u64).unwrap();
        assert_eq!(clinalg::rank(p.matrix(), &tol), 1);
        assert_eq!(clinalg::null_space_basis(p.matrix(), &tol).cols(), n - 1);
    }
}

#[test]
fn fixture_projector_is_overdetermined_both_ways() {
    let tol = Tolerance::default();
    let fx = spin32_fixtures();
    let r = overdetermination_report(&fx.projector_y32, &tol);
    assert_eq!((r.n, r.m, r.k), (4, 1, 3));
    assert!(r.overdetermined_r && r.overdetermined_k);
}

#[test]
fn any_projector_splits_dimensions() {
    let tol = Tolerance::default();
    for n in 2..=6 {
        for rank in 1..n {
            let r = overdetermination_report(&random_projector(n, rank, 77).unwrap(), &tol);
            assert_eq!(r.m + r.k, n);
            assert_eq!(r.m, rank);
        }
    }
    let z = overdetermination_report(&Projector::zero(3), &tol);
    assert_eq!((z.m, z.k), (0, 3));
}

#[test]
fn fixture_and_sampled_witnesses() {
    let tol = Tolerance::default();
    let fx = spin32_fixtures();
    let out = membership(
        &fx.ket_x32,
        &fx.projector_y32,
        MembershipMethod::LinearSystem,
        &tol,
    )
    .unwrap();
    assert_eq!(out.membership, Membership::Neither);
    for n in [2, 3, 5, 8] {
        let w = find_gap_witness(n, 1, &tol).unwrap();
        assert_eq!(w.projector.dim(), n);
        assert_eq!(w.outcome.membership, Membership::Neither);
    }
    assert_eq!(
        find_gap_witness(1, 1, &tol).unwrap_err(),
        Error::TrivialRank { dim: 1, rank: 1 }
    );
}
