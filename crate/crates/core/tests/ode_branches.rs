use lmstat_core::verifier::{
    branch_sweep, case_b_half_k_solution, ode_branch_explore, BranchCase, OdeBranchSpec, DEFAULT_BRANCH_SEED,
    DEFAULT_S_GRID,
};

#[test]
fn case_a_obstruction() {
    let spec = OdeBranchSpec::new(1.0, 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
    let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
    assert_eq!(r.case, BranchCase::A);
    assert!((r.obstruction[0] + 1.0).abs() < 1e-6, "{:?}", r.obstruction);
    assert!(r.obstruction_nonzero);
}

#[test]
fn case_d_forces_c1_zero() {
    let spec = OdeBranchSpec::new(-1.0, 1.0, [1.0, 0.0, 0.0, 0.0]).unwrap();
    let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
    assert_eq!(r.case, BranchCase::D);
    assert!(r.obstruction_nonzero);
    assert!(r.obstruction.iter().any(|c| c.abs() > 0.1));
}

#[test]
fn zero_constants_give_the_plane_branch() {
    for case in BranchCase::ALL {
        let spec = OdeBranchSpec::with_case(case, case.mu(), case.representative_k(), [0.0; 4]).unwrap();
        let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
        assert!(r.degenerate && r.ab_residual_sup == 0.0, "{case}");
    }
}

#[test]
fn measured_obstructions_follow_the_recomputed_formulas() {
    for case in BranchCase::ALL {
        let spec =
            OdeBranchSpec::with_case(case, case.mu(), case.representative_k(), [0.7, -0.4, 0.3, 0.2]).unwrap();
        let r = ode_branch_explore(&spec, DEFAULT_S_GRID).unwrap();
        for (m, e) in r.obstruction.iter().zip(&r.obstruction_expected) {
            assert!((m - e).abs() <= 1e-5 * (1.0 + e.abs()), "{case}: {m} vs {e}");
        }
    }
}

#[test]
fn sweeps_are_sound_and_seed_stable() {
    for case in BranchCase::ALL {
        let a = branch_sweep(case, 100, DEFAULT_BRANCH_SEED).unwrap();
        assert!(a.sound(), "{a:?}");
        let b = branch_sweep(case, 100, DEFAULT_BRANCH_SEED).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn case_b_at_half_k_has_no_ab_obstruction() {
    let r = case_b_half_k_solution(0.6, -0.8).unwrap();
    assert!(r.ab_residual_sup < 1e-8, "{r:?}");
}
