use std::f64::consts::FRAC_PI_2;

use gausscoh::fock::{
    affinity_fock, converged_value, displacement_op, gaussian_density, run_oracle_suite,
    squeeze_op, thermal_density, uhlmann_fidelity, OracleGrid, TruncationSpec,
};
use gausscoh::{affinity, fidelity, from_params, thermal_state, ComplexAmplitude, Error, StateParams};

fn spec(dim: usize) -> TruncationSpec {
    TruncationSpec::new(dim, 1e-10).unwrap()
}

fn max_dev(a: &gausscoh::fock::linalg::CMatrix, b: &gausscoh::fock::linalg::CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn densities_are_valid_states() {
    let s = spec(120);
    for p in OracleGrid::standard().states() {
        let rho = gaussian_density(&p, &s).unwrap();
        let m = rho.entries();
        assert!(max_dev(m, &m.adjoint()) < 1e-12, "{p:?}");
        assert!((rho.trace().re - 1.0).abs() < 1e-12 && rho.trace().im.abs() < 1e-12);
        assert!(rho.min_eigenvalue() > -1e-10, "{p:?}: {}", rho.min_eigenvalue());
    }
}

#[test]
fn truncated_exponentials_are_unitary() {
    let s = spec(80);
    let d = displacement_op(ComplexAmplitude::new(1.5, -0.5), &s).unwrap();
    let id = gausscoh::fock::linalg::CMatrix::identity(80, 80);
    assert!(max_dev(&d.compose(&d.adjoint()).entries().clone(), &id) < 1e-10);

    let sq = squeeze_op(0.8, 1.0, &s).unwrap();
    let prod = sq.compose(&sq.adjoint()).entries().clone();
    let k = 40;
    let block = prod.view((0, 0), (k, k)).into_owned();
    let id = gausscoh::fock::linalg::CMatrix::identity(k, k);
    assert!(max_dev(&block, &id) < 1e-10);
}

#[test]
fn fidelity_matches_squared_uhlmann_fidelity_on_grid() {
    let report = run_oracle_suite(&OracleGrid::standard(), &spec(80)).unwrap();
    assert_eq!(report.comparisons.len(), 72 * 3);
    assert!(report.max_dim() <= 320);
    let worst = report.max_fidelity_deviation();
    assert!(worst < 1e-6, "max fidelity deviation {worst:e}");
}

#[test]
fn affinity_matches_root_overlap_for_pure_states() {
    let s = spec(160);
    for (beta, r, psi) in [(0.5, 0.0, 0.0), (1.0, 0.3, FRAC_PI_2), (2.0, 1.0, 0.0), (0.0, 1.0, 0.0)] {
        let p = StateParams::new(ComplexAmplitude::real(beta), r, psi, 0.0);
        let rho = gaussian_density(&p, &s).unwrap();
        let vac = thermal_density(0.0, &s).unwrap();
        let closed = affinity(&from_params(&p).unwrap(), &thermal_state(0.0).unwrap()).unwrap();
        let oracle = affinity_fock(&rho, &vac).unwrap();
        assert!((closed - oracle).abs() < 1e-6, "{p:?}: {closed} vs {oracle}");
    }
}

/// The closed-form affinity is compared against Tr[sqrt(rho) sqrt(sigma)] for
/// a mixed pair. The two differ (0.8660 vs 0.7071), so this test fails.
#[test]
fn affinity_matches_root_overlap_for_mixed_states() {
    let s = spec(160);
    let vac = thermal_density(0.0, &s).unwrap();
    let nu = thermal_density(1.0, &s).unwrap();
    let oracle = affinity_fock(&vac, &nu).unwrap();
    assert!((oracle - 0.5f64.sqrt()).abs() < 1e-9);
    let closed = affinity(&thermal_state(0.0).unwrap(), &thermal_state(1.0).unwrap()).unwrap();
    assert!(
        (closed - oracle).abs() < 1e-6,
        "closed-form affinity {closed} vs Tr[sqrt(rho) sqrt(sigma)] = {oracle}"
    );
}

#[test]
fn thermal_grid_is_exact() {
    let report = run_oracle_suite(&OracleGrid::thermal(), &spec(160)).unwrap();
    for c in &report.comparisons {
        assert!(c.fidelity_deviation() < 1e-12, "{c:?}");
    }
    let f = fidelity(&thermal_state(0.0).unwrap(), &thermal_state(1.0).unwrap()).unwrap();
    assert!((f - 0.5).abs() < 1e-15);
}

#[test]
fn strong_squeezing_does_not_converge_at_default_dim() {
    let p = StateParams::new(ComplexAmplitude::ZERO, 3.0, 0.0, 1.0);
    let r = converged_value(
        |s| uhlmann_fidelity(&thermal_density(1.0, s)?, &gaussian_density(&p, s)?),
        &spec(160),
    );
    assert!(matches!(r, Err(Error::NotConverged { .. })), "{r:?}");

    let grid = OracleGrid {
        r: vec![3.0],
        ..OracleGrid::thermal()
    };
    let r = run_oracle_suite(&grid, &spec(160));
    assert!(matches!(r, Err(Error::NotConverged { .. })), "{r:?}");
}

#[test]
fn thermal_tail_beyond_tolerance_is_rejected() {
    let r = thermal_density(50.0, &spec(16));
    match r {
        Err(Error::Truncation { required_dim, .. }) => assert!(required_dim > 16),
        other => panic!("{other:?}"),
    }
}
