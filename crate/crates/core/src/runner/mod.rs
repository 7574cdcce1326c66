//! Run configuration, figure presets and batch execution.

pub mod output;
pub mod validate;

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::decoherence::{rtn_dn, rtn_dn_montecarlo, OhmicSpectralDensity, RtnParams, SqueezedBathParams};
use crate::dynamics::{EnvironmentModel, InitialState, Scenario, Spin, SpinLayout};
use crate::error::{Error, Result};
use crate::witnesses::{
    extrema_report, uniform_grid, witness_series, ExtremaReport, WitnessSeries, EPS_NEGATIVITY,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const MIN_GRID_POINTS: usize = 16;
pub const DEFAULT_GRID_POINTS: usize = 600;
/// Default alignment window for extrema, in grid steps.
pub const DEFAULT_WINDOW: usize = 2;
/// Mixing parameters of the mixed-state presets.
pub const PRESET_P_VALUES: [f64; 4] = [0.0, 0.1, 0.3, 0.4];
/// Orders of `D_n` written by the telegraph-noise oracle.
const ORACLE_ORDERS: u32 = 4;
/// Oracle sample times per run.
const ORACLE_TIMES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| {
                Error::ConfigInvalid(format!("unknown preset '{name}' (expected fig2..fig8)"))
            })
    }

    pub fn config(self) -> RunConfig {
        let squeezed = SqueezedBathParams {
            spectral: OhmicSpectralDensity {
                alpha: 0.1,
                s_ohmic: 3.0,
                omega_c: 20.0,
            },
            r: 0.3,
            theta: 0.0,
        };
        let slow = RtnParams {
            nu: 1.0,
            gamma_rate: 0.1,
        };
        let composite = EnvironmentModel::CompositeRtnSqueezed {
            rtn: RtnParams {
                nu: 100.0,
                gamma_rate: 10.0,
            },
            bath: squeezed,
        };
        let (environment, tau_max, mixed) = match self {
            Preset::Fig2 => (EnvironmentModel::SqueezedVacuum(squeezed), 3.0, false),
            Preset::Fig3 => (EnvironmentModel::SqueezedVacuum(squeezed), 3.0, true),
            Preset::Fig4 => (EnvironmentModel::RtnIndependent(slow), 30.0, false),
            Preset::Fig5 => (EnvironmentModel::RtnIndependent(slow), 30.0, true),
            Preset::Fig6 => (EnvironmentModel::RtnCommon(slow), 30.0, true),
            Preset::Fig7 => (composite, 30.0, false),
            Preset::Fig8 => (composite, 30.0, true),
        };
        RunConfig {
            schema_version: SCHEMA_VERSION,
            name: self.name().into(),
            spins: vec![Spin::HALF, Spin::ONE],
            environment,
            phi: PI,
            p_values: if mixed { PRESET_P_VALUES.to_vec() } else { Vec::new() },
            tau_max,
            grid_points: DEFAULT_GRID_POINTS,
            outputs: vec![OutputKind::Csv, OutputKind::Svg],
            seed: 0,
            oracle_trials: 0,
            extrema_window: DEFAULT_WINDOW,
        }
    }
}

/// A fully resolved run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub schema_version: u32,
    pub name: String,
    pub spins: Vec<Spin>,
    pub environment: EnvironmentModel,
    /// Encoded phase of the pure state used for HSS.
    pub phi: f64,
    /// Mixed initial states for negativity and MID; empty means the pure
    /// state is used for every series.
    pub p_values: Vec<f64>,
    pub tau_max: f64,
    pub grid_points: usize,
    pub outputs: Vec<OutputKind>,
    pub seed: u64,
    /// Telegraph-noise trajectories for the `D_n` oracle; 0 disables it.
    pub oracle_trials: usize,
    pub extrema_window: usize,
}

/// On-disk config: either a preset plus overrides or a full parameter block.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema_version: u32,
    pub preset: Option<String>,
    pub name: Option<String>,
    pub spins: Option<Vec<Spin>>,
    pub environment: Option<EnvironmentModel>,
    pub phi: Option<f64>,
    pub p_values: Option<Vec<f64>>,
    pub tau_max: Option<f64>,
    pub grid_points: Option<usize>,
    pub outputs: Option<Vec<OutputKind>>,
    pub seed: Option<u64>,
    pub oracle_trials: Option<usize>,
    pub extrema_window: Option<usize>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    pub fn resolve(self) -> Result<RunConfig> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::ConfigInvalid(format!(
                "schema_version {} not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let mut cfg = match &self.preset {
            Some(name) => Preset::from_name(name)?.config(),
            None => {
                let missing = |field: &str| Error::ConfigInvalid(format!("missing field '{field}'"));
                RunConfig {
                    schema_version: SCHEMA_VERSION,
                    name: self.name.clone().ok_or_else(|| missing("name"))?,
                    spins: self.spins.clone().ok_or_else(|| missing("spins"))?,
                    environment: self.environment.ok_or_else(|| missing("environment"))?,
                    phi: PI,
                    p_values: Vec::new(),
                    tau_max: self.tau_max.ok_or_else(|| missing("tau_max"))?,
                    grid_points: DEFAULT_GRID_POINTS,
                    outputs: vec![OutputKind::Csv, OutputKind::Svg],
                    seed: 0,
                    oracle_trials: 0,
                    extrema_window: DEFAULT_WINDOW,
                }
            }
        };
        if let Some(v) = self.name {
            cfg.name = v;
        }
        if let Some(v) = self.spins {
            cfg.spins = v;
        }
        if let Some(v) = self.environment {
            cfg.environment = v;
        }
        if let Some(v) = self.phi {
            cfg.phi = v;
        }
        if let Some(v) = self.p_values {
            cfg.p_values = v;
        }
        if let Some(v) = self.tau_max {
            cfg.tau_max = v;
        }
        if let Some(v) = self.grid_points {
            cfg.grid_points = v;
        }
        if let Some(v) = self.outputs {
            cfg.outputs = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.oracle_trials {
            cfg.oracle_trials = v;
        }
        if let Some(v) = self.extrema_window {
            cfg.extrema_window = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        ConfigFile::parse(text)?.resolve()
    }

    /// Check ranges; every failure is reported as `ConfigInvalid`.
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return invalid(format!("name '{}' must be non-empty [A-Za-z0-9_-]", self.name));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return invalid(format!(
                "grid_points = {} must be >= {MIN_GRID_POINTS}",
                self.grid_points
            ));
        }
        if !(self.tau_max > 0.0 && self.tau_max.is_finite()) {
            return invalid(format!("tau_max = {} must be > 0", self.tau_max));
        }
        if !self.phi.is_finite() {
            return invalid("phi must be finite".into());
        }
        if let Some(p) = self.p_values.iter().find(|p| !(0.0..=0.5).contains(*p)) {
            return invalid(format!("p = {p} outside [0, 1/2]"));
        }
        if self.oracle_trials != 0 && self.oracle_trials < crate::decoherence::rtn::MIN_TRIALS {
            return invalid(format!(
                "oracle_trials = {} must be 0 or >= {}",
                self.oracle_trials,
                crate::decoherence::rtn::MIN_TRIALS
            ));
        }
        self.scenario().map(|_| ())
    }

    pub fn scenario(&self) -> Result<Scenario> {
        let as_config = |e: Error| Error::ConfigInvalid(e.to_string());
        let layout = SpinLayout::new(self.spins.clone()).map_err(as_config)?;
        let scenario = Scenario::new(layout, self.environment).map_err(as_config)?;
        if !self.p_values.is_empty() && !scenario.layout.is_qubit_qutrit() {
            return Err(Error::ConfigInvalid(
                "p_values need the qubit-qutrit layout [0.5, 1]".into(),
            ));
        }
        Ok(scenario)
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        uniform_grid(self.tau_max, self.grid_points)
    }
}

/// One series of a run: the pure-state series, or one mixing parameter.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSeries {
    pub p: Option<f64>,
    pub series: WitnessSeries,
    pub extrema: ExtremaReport,
}

impl RunSeries {
    pub fn stem(&self, name: &str) -> String {
        match self.p {
            Some(p) => format!("{name}_p{p}"),
            None => name.to_string(),
        }
    }
}

/// Closed form against Monte Carlo at one `(n, τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleRow {
    pub n: u32,
    pub q: f64,
    pub tau: f64,
    pub closed: f64,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunResult {
    pub config: RunConfig,
    pub series: Vec<RunSeries>,
    pub oracle: Vec<OracleRow>,
}

/// Compute every series of `config` without touching the filesystem.
pub fn execute(config: &RunConfig) -> Result<RunResult> {
    config.validate()?;
    let scenario = config.scenario()?;
    let grid = config.grid()?;
    let initials: Vec<(Option<f64>, InitialState)> = if config.p_values.is_empty() {
        vec![(None, InitialState::PurePhase { phi: config.phi })]
    } else {
        config
            .p_values
            .iter()
            .map(|&p| (Some(p), InitialState::MixedP { p }))
            .collect()
    };
    let series = initials
        .into_iter()
        .map(|(p, initial)| {
            let series = witness_series(&scenario, config.phi, &initial, &grid)?;
            let mut extrema = extrema_report(&series, EPS_NEGATIVITY, config.extrema_window);
            if !scenario.layout.is_qubit_qutrit() {
                // no bipartite correlations, so nothing can die
                extrema.sudden_death.clear();
                extrema.sudden_death_tau.clear();
                extrema.alignments.iter_mut().for_each(|a| a.in_sudden_death = false);
            }
            Ok(RunSeries { p, series, extrema })
        })
        .collect::<Result<Vec<_>>>()?;
    let oracle = match (config.oracle_trials, telegraph_q(&config.environment)) {
        (0, _) | (_, None) => Vec::new(),
        (trials, Some(q)) => dn_oracle(q, &grid, trials, config.seed)?,
    };
    Ok(RunResult {
        config: config.clone(),
        series,
        oracle,
    })
}

fn telegraph_q(env: &EnvironmentModel) -> Option<f64> {
    match env {
        EnvironmentModel::RtnIndependent(r) | EnvironmentModel::RtnCommon(r) => Some(r.q()),
        EnvironmentModel::CompositeRtnSqueezed { rtn, .. } => Some(rtn.q()),
        _ => None,
    }
}

fn dn_oracle(q: f64, grid: &[f64], trials: usize, seed: u64) -> Result<Vec<OracleRow>> {
    let step = (grid.len() - 1) / ORACLE_TIMES;
    let mut rows = Vec::new();
    for k in 1..=ORACLE_TIMES {
        let tau = grid[(k * step).min(grid.len() - 1)];
        for n in 1..=ORACLE_ORDERS {
            let closed = rtn_dn(n, q, tau)?;
            let stream_seed = seed.wrapping_add(1000 * k as u64 + u64::from(n));
            let mc = rtn_dn_montecarlo(n, q, tau, trials, stream_seed)?;
            rows.push(OracleRow {
                n,
                q,
                tau,
                closed,
                mean: mc.mean,
                stderr: mc.stderr,
            });
        }
    }
    Ok(rows)
}

pub fn oracle_csv(rows: &[OracleRow]) -> String {
    use output::format_sig12 as f;
    let mut out = String::from("n,q,tau,closed,mc_mean,mc_stderr\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            f(r.q),
            f(r.tau),
            f(r.closed),
            f(r.mean),
            f(r.stderr)
        ));
    }
    out
}

/// Write the outputs of `result` into `out_dir`; returns the written paths.
pub fn write_outputs(result: &RunResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let name = &result.config.name;
    let mut written = Vec::new();
    let mut write = |file: String, body: String| -> Result<()> {
        let path = out_dir.join(file);
        fs::write(&path, body)?;
        written.push(path);
        Ok(())
    };
    for s in &result.series {
        let stem = s.stem(name);
        if result.config.outputs.contains(&OutputKind::Csv) {
            write(format!("{stem}.csv"), output::series_csv(&s.series))?;
        }
        if result.config.outputs.contains(&OutputKind::Svg) {
            let title = match s.p {
                Some(p) => format!("{name}, p = {p}"),
                None => name.clone(),
            };
            write(format!("{stem}.svg"), output::series_svg(&s.series, &title))?;
        }
        let report = serde_json::to_string_pretty(&s.extrema)
            .map_err(|e| Error::NumericalFailure(e.to_string()))?;
        write(format!("{stem}_extrema.json"), report + "\n")?;
    }
    if !result.oracle.is_empty() {
        write(format!("{name}_dn_oracle.csv"), oracle_csv(&result.oracle))?;
    }
    Ok(written)
}

/// [`execute`] then [`write_outputs`].
pub fn run(config: &RunConfig, out_dir: &Path) -> Result<(RunResult, Vec<PathBuf>)> {
    let result = execute(config)?;
    let files = write_outputs(&result, out_dir)?;
    Ok((result, files))
}
