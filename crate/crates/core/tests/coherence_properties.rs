use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use gausscoh::{
    coherence, cts, from_params, is_incoherent, sts, tss, ComplexAmplitude, Measure,
    OptimizerOptions, StateParams,
};
use proptest::prelude::*;

fn c(s: &gausscoh::GaussianState, m: Measure) -> f64 {
    coherence(s, m, &OptimizerOptions::default()).unwrap().value
}

#[test]
fn zero_exactly_on_incoherent_states() {
    for beta in [0.0, 0.1, 1.0] {
        for r in [0.0, 0.1, 1.0] {
            for n in [0.0, 1.0, 5.0] {
                let s = from_params(&StateParams::new(ComplexAmplitude::real(beta), r, 0.0, n)).unwrap();
                let families = [
                    s,
                    cts(ComplexAmplitude::real(beta), n).unwrap(),
                    sts(r, n, ComplexAmplitude::ZERO).unwrap(),
                    tss(r, n).unwrap(),
                ];
                for s in families {
                    for m in Measure::ALL {
                        let v = c(&s, m);
                        assert_eq!(v < 1e-8, is_incoherent(&s, 1e-9), "{s:?} {m}: {v}");
                    }
                }
            }
        }
    }
}

#[test]
fn displacement_phase_is_irrelevant() {
    for n in [0.0, 1.0, 3.0] {
        for m in Measure::ALL {
            let base = c(&cts(ComplexAmplitude::real(1.3), n).unwrap(), m);
            for theta in [0.0, FRAC_PI_4, FRAC_PI_2, PI] {
                let v = c(&cts(ComplexAmplitude::from_polar(1.3, theta), n).unwrap(), m);
                assert!((v - base).abs() < 1e-9, "{theta} {m}: {v} vs {base}");
            }
        }
    }
}

#[test]
fn squeezing_phase_is_irrelevant_without_displacement() {
    for (r, n) in [(0.5, 0.0), (1.0, 2.0), (2.0, 0.5)] {
        for m in Measure::ALL {
            let base = c(&from_params(&StateParams::new(ComplexAmplitude::ZERO, r, 0.0, n)).unwrap(), m);
            for psi in [0.3, FRAC_PI_2, 2.0, PI, 5.0] {
                let s = from_params(&StateParams::new(ComplexAmplitude::ZERO, r, psi, n)).unwrap();
                assert!((c(&s, m) - base).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn joint_rotation_leaves_coherence_unchanged() {
    let s = from_params(&StateParams::new(ComplexAmplitude::new(0.7, 0.4), 0.6, 0.9, 1.5)).unwrap();
    for m in Measure::ALL {
        let base = c(&s, m);
        for theta in [0.4, 1.3, 3.0] {
            assert!((c(&s.rotated(theta), m) - base).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coherent_bures_closed_form(beta in 0.0f64..5.0) {
        let expected = if beta <= 1.0 {
            1.0 - (-beta * beta / 2.0).exp()
        } else {
            1.0 - (-0.5f64).exp() / beta
        };
        let v = c(&cts(ComplexAmplitude::real(beta), 0.0).unwrap(), Measure::Bures);
        prop_assert!((v - expected).abs() < 1e-9, "{} vs {}", v, expected);
    }

    #[test]
    fn squeezed_hellinger_closed_form(r in 0.0f64..3.0, n in 0.0f64..10.0) {
        let expected = 1.0 - r.cosh().powf(-0.5);
        let v = c(&sts(r, n, ComplexAmplitude::ZERO).unwrap(), Measure::Hellinger);
        prop_assert!((v - expected).abs() < 1e-9, "{} vs {}", v, expected);
    }

    #[test]
    fn coherence_lies_in_unit_interval(
        re in -3.0f64..3.0, im in -3.0f64..3.0, r in 0.0f64..2.5, psi in 0.0f64..6.3, n in 0.0f64..20.0,
    ) {
        let s = from_params(&StateParams::new(ComplexAmplitude::new(re, im), r, psi, n)).unwrap();
        for m in Measure::ALL {
            let res = coherence(&s, m, &OptimizerOptions::default()).unwrap();
            prop_assert!((0.0..1.0).contains(&res.value));
            prop_assert!(res.converged);
        }
    }
}
