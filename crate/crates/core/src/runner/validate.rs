//! Self-check suites: transcribed element tables, closed-form equivalence and
//! telegraph-noise Monte Carlo against the analytic averages.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Preset, PRESET_P_VALUES};
use crate::decoherence::{rtn_dn, rtn_dn_montecarlo};
use crate::dynamics::{evolve_prepared, EnvironmentModel, InitialState, Scenario, SpinLayout};
use crate::error::Result;
use crate::golden::{mixed_table, pure_table, ElementTable};
use crate::witnesses::{
    hss, hss_finite_difference, hss_qubit_qutrit_closed, mid, mid_closed, negativity,
    negativity_closed, uniform_grid, CorrelationTopology, FD_STEP,
};

pub const GOLDEN_TOL: f64 = 1e-12;
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const FD_TOL: f64 = 1e-6;
pub const GOLDEN_TIMES: usize = 20;
pub const MC_TRIALS: usize = 100_000;
pub const MC_ABS_TOL: f64 = 5e-3;
const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} [{}] {}: {}", c.suite, c.name, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Environment used to check a table, with the τ range of its figure.
pub fn table_scenario(table: ElementTable) -> (Scenario, f64) {
    let preset = match table {
        ElementTable::A1 | ElementTable::B1 => Preset::Fig2,
        ElementTable::A2 | ElementTable::B2 => Preset::Fig4,
        ElementTable::A3 | ElementTable::B3 => Preset::Fig6,
        ElementTable::A4 | ElementTable::B4 => Preset::Fig7,
    };
    let cfg = preset.config();
    let scenario = Scenario::new(SpinLayout::qubit_qutrit(), cfg.environment)
        .expect("preset scenarios are valid");
    (scenario, cfg.tau_max)
}

fn topology(env: &EnvironmentModel) -> CorrelationTopology {
    match env {
        EnvironmentModel::RtnCommon(_) => CorrelationTopology::Common,
        _ => CorrelationTopology::Independent,
    }
}

/// Largest entrywise deviation of the engine from a table over
/// `GOLDEN_TIMES` random times, phases and mixing parameters.
pub fn golden_deviation(table: ElementTable, seed: u64) -> Result<f64> {
    let (scenario, tau_max) = table_scenario(table);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..GOLDEN_TIMES {
        let tau = rng.random_range(0.0..tau_max);
        let env = scenario.environment_state(tau)?;
        let (initial, expected) = if table.is_pure() {
            let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            (InitialState::PurePhase { phi }, pure_table(table, phi, &env)?)
        } else {
            let p = rng.random_range(0.0..=0.5);
            (InitialState::MixedP { p }, mixed_table(table, p, &env)?)
        };
        let got = evolve_prepared(&scenario, &initial, &env)?.state()?;
        worst = worst.max(got.matrix().max_abs_diff(&expected));
    }
    Ok(worst)
}

fn golden_suite(out: &mut Vec<Check>) -> Result<()> {
    for (k, table) in ElementTable::ALL.into_iter().enumerate() {
        let dev = golden_deviation(table, SEED + k as u64)?;
        out.push(Check {
            suite: "golden",
            name: format!("table {}", table.label()),
            passed: dev <= GOLDEN_TOL,
            detail: format!("max |Δρ| = {dev:.2e} over {GOLDEN_TIMES} times"),
        });
    }
    Ok(())
}

fn closed_form_suite(out: &mut Vec<Check>) -> Result<()> {
    let mixed_presets = [Preset::Fig3, Preset::Fig5, Preset::Fig6, Preset::Fig8];
    for preset in mixed_presets {
        let cfg = preset.config();
        let scenario = cfg.scenario()?;
        let grid = cfg.grid()?;
        let envs = scenario.environment_states(&grid)?;
        let topo = topology(&cfg.environment);
        let (neg_dev, mid_dev) = PRESET_P_VALUES
            .iter()
            .flat_map(|&p| envs.iter().map(move |e| (p, e)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(p, env)| -> Result<(f64, f64)> {
                let rho = evolve_prepared(&scenario, &InitialState::MixedP { p }, env)?.state()?;
                let f = scenario.mixed_coherence_factor(env)?;
                Ok((
                    (negativity(&rho)? - negativity_closed(p, f, topo)).abs(),
                    (mid(&rho)? - mid_closed(p, f, topo)).abs(),
                ))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold((0.0f64, 0.0f64), |(a, b), (x, y)| (a.max(x), b.max(y)));
        for (what, dev) in [("negativity", neg_dev), ("MID", mid_dev)] {
            out.push(Check {
                suite: "closed-form",
                name: format!("{} {what}", preset.name()),
                passed: dev <= CLOSED_FORM_TOL,
                detail: format!(
                    "max deviation {dev:.2e} over p in {PRESET_P_VALUES:?}, {} times",
                    grid.len()
                ),
            });
        }
    }
    for preset in [Preset::Fig2, Preset::Fig4, Preset::Fig6, Preset::Fig7] {
        let cfg = preset.config();
        let scenario = cfg.scenario()?;
        let grid = uniform_grid(cfg.tau_max, 50)?;
        let mut closed_dev: f64 = 0.0;
        let mut fd_dev: f64 = 0.0;
        for env in scenario.environment_states(&grid)? {
            let state = evolve_prepared(&scenario, &InitialState::PurePhase { phi: cfg.phi }, &env)?;
            let crate::dynamics::Evolved::Family(family) = state else {
                unreachable!("pure states evolve as phase families")
            };
            let analytic = hss(&family);
            closed_dev = closed_dev.max((analytic - hss_qubit_qutrit_closed(&cfg.environment, &env)).abs());
            let fd = hss_finite_difference(&scenario, env.tau, cfg.phi, FD_STEP)?;
            fd_dev = fd_dev.max((analytic - fd).abs());
        }
        out.push(Check {
            suite: "closed-form",
            name: format!("{} HSS closed form", preset.name()),
            passed: closed_dev <= FD_TOL,
            detail: format!("max deviation {closed_dev:.2e}"),
        });
        out.push(Check {
            suite: "closed-form",
            name: format!("{} HSS finite difference", preset.name()),
            passed: fd_dev <= FD_TOL,
            detail: format!("max deviation {fd_dev:.2e} (h = {FD_STEP})"),
        });
    }
    Ok(())
}

/// The twelve `(n, q, τ)` points of the Monte-Carlo comparison: every
/// `(q, τ)` pair with two orders each, covering `n = 1..4`.
pub fn monte_carlo_points() -> Vec<(u32, f64, f64)> {
    let mut pts = Vec::new();
    let pairs = [0.1, 1.0, 10.0]
        .into_iter()
        .flat_map(|q| [0.5, 3.0].into_iter().map(move |t| (q, t)));
    for (k, (q, tau)) in pairs.enumerate() {
        pts.push((k as u32 % 4 + 1, q, tau));
        pts.push(((k as u32 + 2) % 4 + 1, q, tau));
    }
    pts
}

fn monte_carlo_suite(out: &mut Vec<Check>) -> Result<()> {
    for (k, (n, q, tau)) in monte_carlo_points().into_iter().enumerate() {
        let exact = rtn_dn(n, q, tau)?;
        let mc = rtn_dn_montecarlo(n, q, tau, MC_TRIALS, SEED + k as u64)?;
        let err = (mc.mean - exact).abs();
        out.push(Check {
            suite: "monte-carlo",
            name: format!("D_{n}(q={q}, tau={tau})"),
            passed: err <= 3.0 * mc.stderr.max(f64::EPSILON) && err <= MC_ABS_TOL,
            detail: format!(
                "closed {exact:.6}, MC {:.6} ± {:.1e} ({} trials)",
                mc.mean, mc.stderr, mc.trials
            ),
        });
    }
    Ok(())
}

/// Run all suites.
pub fn validate() -> Result<ValidationReport> {
    let mut checks = Vec::new();
    golden_suite(&mut checks)?;
    closed_form_suite(&mut checks)?;
    monte_carlo_suite(&mut checks)?;
    Ok(ValidationReport { checks })
}
