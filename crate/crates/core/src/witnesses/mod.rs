//! Hilbert-Schmidt speed (HSS), its time derivative χ(t), and the
//! correlation measures it is compared against.
//!
//! For a phase family `ρ_φ` the HSS is `sqrt(½ Tr[(dρ_φ/dφ)²])`. Memory effects
//! show up as intervals where χ = d HSS/dt is positive.

pub mod correlations;
pub mod extrema;

use rayon::prelude::*;
use serde::Serialize;

use crate::decoherence::finite_difference;
use crate::dynamics::{
    evolve_family, evolve_prepared, initial_pure, EnvironmentModel, EnvironmentState, Evolved,
    InitialState, Scenario, Spin,
};
use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, PhiFamily};

pub use correlations::{
    mid, mid_closed, negativity, negativity_closed, negativity_closed_printed,
    negativity_via_trace_norm, CorrelationTopology,
};
pub use extrema::{extrema_report, Alignment, ExtremaReport, Extremum, ExtremumKind, EPS_NEGATIVITY};

/// χ above this counts as non-Markovian.
pub const EPS_CHI: f64 = 1e-8;
/// Phase step of the finite-difference HSS.
pub const FD_STEP: f64 = 1e-4;

/// `sqrt(½ Tr[D²])` for a Hermitian `D`.
pub fn speed_of_derivative(d: &ComplexMatrix) -> f64 {
    let n = d.dim();
    let mut tr = 0.0;
    for i in 0..n {
        for j in 0..n {
            tr += (d[(i, j)] * d[(j, i)]).re;
        }
    }
    (0.5 * tr).max(0.0).sqrt()
}

/// Analytic HSS of a phase family: `dρ/dφ` is `i m_ij ρ_ij` entrywise.
pub fn hss(family: &PhiFamily) -> f64 {
    let n = family.dim();
    let rho = family.base();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let m = f64::from(family.mask(i, j));
            sum += m * m * rho[(i, j)].norm_sqr();
        }
    }
    (0.5 * sum).sqrt()
}

/// HSS from a central difference `(ρ(φ+h) - ρ(φ-h))/2h` of the evolved pure state.
pub fn hss_finite_difference(scenario: &Scenario, tau: f64, phi: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParams("finite-difference step must be > 0".into()));
    }
    let env = scenario.environment_state(tau)?;
    let plus = evolve_family(scenario, &initial_pure(&scenario.layout, phi + h)?, &env)?;
    let minus = evolve_family(scenario, &initial_pure(&scenario.layout, phi - h)?, &env)?;
    let (a, b) = (plus.base().matrix(), minus.base().matrix());
    let d = ComplexMatrix::from_fn(a.dim(), |i, j| (a[(i, j)] - b[(i, j)]) / (2.0 * h))?;
    Ok(speed_of_derivative(&d))
}

/// χ = d HSS/dτ on the grid: central differences inside, one-sided at the ends.
pub fn chi_series(hss_values: &[f64], tau_grid: &[f64]) -> Result<Vec<f64>> {
    if hss_values.len() != tau_grid.len() {
        return Err(Error::DimensionMismatch(tau_grid.len(), hss_values.len()));
    }
    if tau_grid.len() < 2 || tau_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams("tau grid must be strictly increasing".into()));
    }
    Ok(finite_difference(hss_values, tau_grid))
}

/// Maximal `(τ_start, τ_end)` intervals where `χ > eps`. A single positive
/// node gives a zero-width interval.
pub fn nonmarkov_intervals(chi: &[f64], tau_grid: &[f64], eps: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..=chi.len() {
        let above = i < chi.len() && chi[i] > eps;
        match (above, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((tau_grid[s], tau_grid[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn qudit_sums(spin: Spin, gamma: f64) -> (f64, f64) {
    (1..=spin.twice()).fold((0.0, 0.0), |(w, k2w), k| {
        let k2 = f64::from(k * k);
        let e = (-2.0 * k2 * gamma).exp();
        (w + e, k2w + k2 * e)
    })
}

/// Qudit HSS `sqrt(Σ_{k=1}^{2s} e^{-2k²γ}) / (2s+1)`.
pub fn hss_qudit_closed(spin: Spin, gamma: f64) -> f64 {
    qudit_sums(spin, gamma).0.sqrt() / spin.dim() as f64
}

/// χ for the dephased qudit by differentiating [`hss_qudit_closed`]:
/// `-(γ'/(2s+1)) Σk² e^{-2k²γ} / sqrt(Σ e^{-2k²γ})`.
pub fn chi_qudit_closed(spin: Spin, gamma: f64, dgamma_dt: f64) -> f64 {
    let (w, k2w) = qudit_sums(spin, gamma);
    -dgamma_dt / spin.dim() as f64 * k2w / w.sqrt()
}

/// The commonly printed variant with `Σ e^{-2k²γ}` (no square root) in the
/// denominator. Same sign as [`chi_qudit_closed`], different magnitude.
pub fn chi_qudit_printed(spin: Spin, gamma: f64, dgamma_dt: f64) -> f64 {
    let (w, k2w) = qudit_sums(spin, gamma);
    -dgamma_dt / spin.dim() as f64 * k2w / w
}

/// Closed-form HSS of the pure qubit⊗qutrit state in each environment.
pub fn hss_qubit_qutrit_closed(environment: &EnvironmentModel, env: &EnvironmentState) -> f64 {
    let g = env.gamma;
    let e = |k: f64| (-k * g).exp();
    let inner = match environment {
        EnvironmentModel::ThermalOhmic(_) | EnvironmentModel::SqueezedVacuum(_) => {
            2.0 * e(2.0) + e(4.0) + e(8.0) + e(10.0)
        }
        EnvironmentModel::RtnIndependent(_) => {
            let (d1, d2) = (env.d(1), env.d(2));
            d1 * d1 + 2.0 * d2 * d2 + d2 * d2 * d1 * d1 + d2.powi(4)
        }
        EnvironmentModel::RtnCommon(_) => {
            let sq = |n| env.d(n) * env.d(n);
            sq(1) + 2.0 * sq(2) + sq(3) + sq(4)
        }
        EnvironmentModel::CompositeRtnSqueezed { .. } => {
            let d2 = env.d(2);
            (e(2.0) + e(8.0)) * (1.0 + d2 * d2) + d2 * d2
        }
    };
    inner.sqrt() / 6.0
}

/// Time series of every quantifier on one grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSeries {
    pub tau_grid: Vec<f64>,
    pub hss: Vec<f64>,
    pub chi: Vec<f64>,
    /// Zero for single-subsystem layouts.
    pub negativity: Vec<f64>,
    /// Zero for single-subsystem layouts.
    pub mid: Vec<f64>,
    pub nonmarkov_intervals: Vec<(f64, f64)>,
}

/// Evolve the pure phase-encoded state (for HSS and χ) and the
/// `correlations` initial state (for negativity and MID) over `tau_grid`.
pub fn witness_series(
    scenario: &Scenario,
    phi: f64,
    correlations: &InitialState,
    tau_grid: &[f64],
) -> Result<WitnessSeries> {
    scenario.validate()?;
    let envs = scenario.environment_states(tau_grid)?;
    let rho0 = initial_pure(&scenario.layout, phi)?;
    let bipartite = scenario.layout.spins().len() == 2;
    let rows: Vec<(f64, f64, f64)> = envs
        .par_iter()
        .map(|env| {
            let family = evolve_family(scenario, &rho0, env)?;
            let speed = hss(&family);
            if !bipartite {
                return Ok((speed, 0.0, 0.0));
            }
            let state = match correlations {
                InitialState::PurePhase { phi: p } if *p == phi => family.base().clone(),
                other => match evolve_prepared(scenario, other, env)? {
                    Evolved::Family(f) => f.base().clone(),
                    Evolved::State(s) => s,
                },
            };
            Ok((speed, negativity(&state)?, mid(&state)?))
        })
        .collect::<Result<_>>()?;
    let hss: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let chi = chi_series(&hss, tau_grid)?;
    let series = WitnessSeries {
        tau_grid: tau_grid.to_vec(),
        nonmarkov_intervals: nonmarkov_intervals(&chi, tau_grid, EPS_CHI),
        hss,
        chi,
        negativity: rows.iter().map(|r| r.1).collect(),
        mid: rows.iter().map(|r| r.2).collect(),
    };
    if [&series.hss, &series.chi, &series.negativity, &series.mid]
        .iter()
        .any(|v| v.iter().any(|x| !x.is_finite()))
    {
        return Err(Error::NumericalFailure("non-finite witness value".into()));
    }
    Ok(series)
}

/// Uniform grid of `points` nodes on `[0, tau_max]`.
pub fn uniform_grid(tau_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(tau_max > 0.0 && tau_max.is_finite()) || points < 2 {
        return Err(Error::InvalidParams(format!(
            "grid needs tau_max > 0 and >= 2 points (got {tau_max}, {points})"
        )));
    }
    Ok((0..points)
        .map(|i| tau_max * i as f64 / (points - 1) as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoherence::{OhmicSpectralDensity, RtnParams, SqueezedBathParams};
    use crate::dynamics::SpinLayout;

    fn squeezed() -> EnvironmentModel {
        EnvironmentModel::SqueezedVacuum(SqueezedBathParams {
            spectral: OhmicSpectralDensity::new(0.1, 3.0, 20.0).unwrap(),
            r: 0.3,
            theta: 0.0,
        })
    }

    #[test]
    fn initial_hss_of_qubit_qutrit() {
        let f = initial_pure(&SpinLayout::qubit_qutrit(), 0.3).unwrap();
        assert!((hss(&f) - 5f64.sqrt() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn hss_of_dephased_qubit() {
        let sc = Scenario::new(SpinLayout::qudit(Spin::HALF), squeezed()).unwrap();
        let env = sc.environment_state(0.2).unwrap();
        let f = evolve_family(&sc, &initial_pure(&sc.layout, 0.0).unwrap(), &env).unwrap();
        assert!((hss(&f) - 0.5 * (-env.gamma).exp()).abs() < 1e-15);
        let fd = hss_finite_difference(&sc, 0.2, 0.0, FD_STEP).unwrap();
        assert!((fd - hss(&f)).abs() < 1e-8);
    }

    #[test]
    fn finite_difference_is_phase_independent() {
        let sc = Scenario::new(
            SpinLayout::qubit_qutrit(),
            EnvironmentModel::RtnIndependent(RtnParams::from_q(0.1).unwrap()),
        )
        .unwrap();
        let a = hss_finite_difference(&sc, 1.3, 0.2, FD_STEP).unwrap();
        let b = hss_finite_difference(&sc, 1.3, 0.2 + std::f64::consts::PI, FD_STEP).unwrap();
        assert!((a - b).abs() < 1e-9);
        let z = hss_finite_difference(&sc, 0.0, 0.0, FD_STEP).unwrap();
        assert!((z - 5f64.sqrt() / 6.0).abs() < 1e-6);
    }

    #[test]
    fn chi_of_constant_is_zero() {
        let tau = uniform_grid(1.0, 11).unwrap();
        let chi = chi_series(&[0.3; 11], &tau).unwrap();
        assert!(chi.iter().all(|&c| c == 0.0));
        assert!(nonmarkov_intervals(&chi, &tau, EPS_CHI).is_empty());
        assert!(chi_series(&[0.3; 10], &tau).is_err());
    }

    #[test]
    fn intervals_cover_positive_runs() {
        let tau = uniform_grid(1.0, 8).unwrap();
        let chi = [0.0, 1.0, 1.0, 0.0, -1.0, 1.0, 0.0, 2.0];
        let iv = nonmarkov_intervals(&chi, &tau, EPS_CHI);
        assert_eq!(iv, vec![(tau[1], tau[2]), (tau[5], tau[5]), (tau[7], tau[7])]);
    }

    #[test]
    fn qudit_closed_chi_forms() {
        assert_eq!(chi_qudit_closed(Spin::ONE, 0.3, 0.0), 0.0);
        // s = 1/2: direct form is d/dt[½ e^{-γ}]
        let (g, dg) = (0.4, -0.7);
        let direct = chi_qudit_closed(Spin::HALF, g, dg);
        assert!((direct - (-0.5 * dg * (-g).exp())).abs() < 1e-15);
        for twice in 1..=6 {
            let s = Spin::from_twice(twice).unwrap();
            for &dg in &[-1.0, 1.0] {
                let a = chi_qudit_closed(s, 0.2, dg);
                let b = chi_qudit_printed(s, 0.2, dg);
                assert_eq!(a.signum(), b.signum());
                assert_eq!(a.signum(), -dg);
            }
            // derivative check of the closed HSS
            let h = 1e-6;
            let numeric = (hss_qudit_closed(s, 0.2 + h) - hss_qudit_closed(s, 0.2 - h)) / (2.0 * h);
            assert!((numeric - chi_qudit_closed(s, 0.2, 1.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn witness_series_for_qudit_has_zero_correlations() {
        let sc = Scenario::new(SpinLayout::qudit(Spin::ONE), squeezed()).unwrap();
        let tau = uniform_grid(0.5, 20).unwrap();
        let s = witness_series(&sc, 0.0, &InitialState::PurePhase { phi: 0.0 }, &tau).unwrap();
        assert!(s.negativity.iter().chain(&s.mid).all(|&x| x == 0.0));
        for (h, env) in s.hss.iter().zip(sc.environment_states(&tau).unwrap()) {
            assert!((h - hss_qudit_closed(Spin::ONE, env.gamma)).abs() < 1e-14);
        }
    }
}
