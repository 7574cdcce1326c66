use std::f64::consts::PI;

use nmwit::decoherence::{rtn_dn, OhmicSpectralDensity, RtnParams, SqueezedBathParams};
use nmwit::dynamics::{evolve, EnvironmentModel, Evolved, InitialState, Scenario, Spin, SpinLayout};
use nmwit::hilbert::C64;
use nmwit::witnesses::{hss, hss_finite_difference, mid, negativity, FD_STEP};
use proptest::prelude::*;

fn squeezed() -> EnvironmentModel {
    EnvironmentModel::SqueezedVacuum(SqueezedBathParams {
        spectral: OhmicSpectralDensity::new(0.1, 3.0, 20.0).unwrap(),
        r: 0.3,
        theta: 0.0,
    })
}

fn environments() -> Vec<EnvironmentModel> {
    let rtn = RtnParams::from_q(0.1).unwrap();
    vec![
        squeezed(),
        EnvironmentModel::RtnIndependent(rtn),
        EnvironmentModel::RtnCommon(rtn),
        EnvironmentModel::CompositeRtnSqueezed {
            rtn: RtnParams::new(100.0, 10.0).unwrap(),
            bath: match squeezed() {
                EnvironmentModel::SqueezedVacuum(b) => b,
                _ => unreachable!(),
            },
        },
    ]
}

fn qq(env: EnvironmentModel) -> Scenario {
    Scenario::new(SpinLayout::qubit_qutrit(), env).unwrap()
}

fn family_hss(sc: &Scenario, tau: f64, phi: f64) -> f64 {
    match evolve(sc, &InitialState::PurePhase { phi }, tau).unwrap() {
        Evolved::Family(f) => hss(&f),
        Evolved::State(_) => panic!("pure input must give a family"),
    }
}

#[test]
fn hss_does_not_depend_on_phase() {
    for env in environments() {
        let sc = qq(env);
        for tau in [0.0, 0.7, 2.9] {
            let reference = family_hss(&sc, tau, 0.0);
            for k in 0..10 {
                let phi = -PI + 2.0 * PI * k as f64 / 10.0;
                assert!((family_hss(&sc, tau, phi) - reference).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn states_are_phase_covariant() {
    // ρ(φ) = U ρ(0) U† with U = diag(e^{iφ}, 1, ..., 1)
    for env in environments() {
        let sc = qq(env);
        for &(tau, phi) in &[(0.4, 1.1), (2.5, -2.0)] {
            let base = evolve(&sc, &InitialState::PurePhase { phi: 0.0 }, tau).unwrap().state().unwrap();
            let rotated = evolve(&sc, &InitialState::PurePhase { phi }, tau).unwrap().state().unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    let u = |k: usize| if k == 0 { C64::from_polar(1.0, phi) } else { C64::new(1.0, 0.0) };
                    let expected = u(i) * base.matrix()[(i, j)] * u(j).conj();
                    assert!((rotated.matrix()[(i, j)] - expected).norm() < 1e-14);
                }
            }
        }
    }
}

#[test]
fn hss_agrees_with_finite_difference_over_time() {
    let sc = qq(squeezed());
    for k in 0..50 {
        let tau = 3.0 * k as f64 / 49.0;
        let fd = hss_finite_difference(&sc, tau, PI, FD_STEP).unwrap();
        assert!((family_hss(&sc, tau, PI) - fd).abs() < 1e-6, "tau = {tau}");
    }
}

#[test]
fn qudit_hss_decays_from_its_initial_value() {
    let sc = Scenario::new(SpinLayout::qudit(Spin::from_twice(2).unwrap()), squeezed()).unwrap();
    let h0 = family_hss(&sc, 0.0, PI);
    for k in 1..30 {
        assert!(family_hss(&sc, 0.1 * k as f64, PI) <= h0 + 1e-15);
    }
}

#[test]
fn telegraph_average_is_continuous_across_resonance() {
    for n in 1..=4u32 {
        let q = f64::from(n);
        for tau in [0.3, 1.0, 4.0] {
            let left = rtn_dn(n, q - 1e-6, tau).unwrap();
            let right = rtn_dn(n, q + 1e-6, tau).unwrap();
            let mid = rtn_dn(n, q, tau).unwrap();
            assert!((left - right).abs() < 1e-6 && (left - mid).abs() < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolved_mixed_states_have_nonnegative_correlations(
        env_index in 0usize..4,
        p in 0.0f64..=0.5,
        tau in 0.0f64..30.0,
    ) {
        let sc = qq(environments()[env_index]);
        let rho = evolve(&sc, &InitialState::MixedP { p }, tau).unwrap().state().unwrap();
        prop_assert!((rho.matrix().trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(rho.matrix().is_hermitian(1e-14));
        prop_assert!(rho.eigenvalues().unwrap().iter().all(|&l| l > -1e-12));
        prop_assert!(negativity(&rho).unwrap() >= -1e-12);
        prop_assert!(mid(&rho).unwrap() >= -1e-9);
    }

    #[test]
    fn telegraph_average_is_bounded(n in 1u32..=4, q in 0.0f64..20.0, tau in 0.0f64..40.0) {
        let d = rtn_dn(n, q, tau).unwrap();
        prop_assert!(d.is_finite() && d.abs() <= 1.0 + 1e-12);
    }
}
