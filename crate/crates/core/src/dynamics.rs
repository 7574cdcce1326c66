//! Pure-dephasing evolution of qudits and of the qubit⊗qutrit pair.
//!
//! Every scenario here is diagonal in the computational basis, so an evolved
//! state is the initial state multiplied entrywise by a real damping factor
//! that depends only on the coupling-operator eigenvalues of the row and
//! column basis states:
//!
//! * bosonic bath on a subsystem: `exp(-Δ² γ)` with `Δ` the `S_z` difference;
//! * local telegraph noise: `D_{|Δ|}(τ)`;
//! * one telegraph fluctuator shared by all subsystems: `D_{|ΣΔ|}(τ)`.
//!
//! A spin-1/2 coupled to telegraph noise couples through `σ_z = 2 S_z`, so its
//! differences are doubled.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decoherence::{
    gamma_squeezed_estimate, gamma_thermal_estimate, memoize_on_grid, rtn_dn, Estimate,
    RtnParams, SqueezedBathParams, ThermalBathParams,
};
use crate::error::{Error, Result};
use crate::hilbert::{ComplexMatrix, DensityMatrix, PhiFamily, C64};

/// Spin quantum number stored as `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Spin(u32);

impl Spin {
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);

    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice == 0 {
            return Err(Error::InvalidParams("spin must be at least 1/2".into()));
        }
        Ok(Spin(twice))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `2·m` for basis index `k`, ordered `m = s, s-1, …, -s`.
    fn doubled_m(self, k: usize) -> i32 {
        self.0 as i32 - 2 * k as i32
    }
}

impl TryFrom<f64> for Spin {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !(twice >= 1.0 && twice.fract() == 0.0 && twice < 1e6) {
            return Err(Error::InvalidParams(format!("{s} is not a positive half-integer spin")));
        }
        Spin::from_twice(twice as u32)
    }
}

impl From<Spin> for f64 {
    fn from(s: Spin) -> f64 {
        s.value()
    }
}

/// Ordered list of subsystem spins; the basis is the tensor product of the
/// `S_z` eigenbases, each ordered from `m = s` down to `m = -s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinLayout {
    spins: Vec<Spin>,
}

impl SpinLayout {
    pub fn new(spins: Vec<Spin>) -> Result<Self> {
        if spins.is_empty() {
            return Err(Error::InvalidParams("layout needs at least one subsystem".into()));
        }
        Ok(Self { spins })
    }

    pub fn qudit(spin: Spin) -> Self {
        Self { spins: vec![spin] }
    }

    pub fn qubit_qutrit() -> Self {
        Self {
            spins: vec![Spin::HALF, Spin::ONE],
        }
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spins.iter().map(|s| s.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spins.iter().map(|s| s.dim()).product()
    }

    pub fn is_qubit_qutrit(&self) -> bool {
        self.spins == [Spin::HALF, Spin::ONE]
    }

    /// Per-subsystem basis indices of a global basis index.
    pub fn split_index(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.spins.len()];
        for (slot, spin) in out.iter_mut().zip(&self.spins).rev() {
            *slot = index % spin.dim();
            index /= spin.dim();
        }
        out
    }

    /// Coupling-operator eigenvalue differences between two basis states,
    /// per subsystem. For telegraph coupling a spin-1/2 uses `σ_z`.
    fn coupling_deltas(&self, row: &[usize], col: &[usize], rtn: bool) -> Vec<i32> {
        self.spins
            .iter()
            .zip(row.iter().zip(col))
            .map(|(spin, (&r, &c))| {
                let d2 = spin.doubled_m(r) - spin.doubled_m(c);
                if rtn && *spin == Spin::HALF {
                    d2
                } else {
                    d2 / 2
                }
            })
            .collect()
    }
}

/// Environment acting on the system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnvironmentModel {
    /// Identical independent thermal Ohmic baths on every subsystem.
    ThermalOhmic(ThermalBathParams),
    /// Identical independent squeezed-vacuum baths on every subsystem.
    SqueezedVacuum(SqueezedBathParams),
    /// Independent telegraph fluctuators with equal parameters on every subsystem.
    RtnIndependent(RtnParams),
    /// A single telegraph fluctuator coupled to all subsystems.
    RtnCommon(RtnParams),
    /// Telegraph noise on the qubit, squeezed vacuum on the qutrit.
    CompositeRtnSqueezed {
        rtn: RtnParams,
        bath: SqueezedBathParams,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Independent,
    Common,
    Composite,
}

impl EnvironmentModel {
    pub fn topology(&self) -> Topology {
        match self {
            Self::ThermalOhmic(_) | Self::SqueezedVacuum(_) | Self::RtnIndependent(_) => {
                Topology::Independent
            }
            Self::RtnCommon(_) => Topology::Common,
            Self::CompositeRtnSqueezed { .. } => Topology::Composite,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::ThermalOhmic(p) => p.validate(),
            Self::SqueezedVacuum(p) => p.validate(),
            Self::RtnIndependent(p) | Self::RtnCommon(p) => p.validate(),
            Self::CompositeRtnSqueezed { rtn, bath } => {
                rtn.validate()?;
                bath.validate()
            }
        }
    }

    fn rtn(&self) -> Option<&RtnParams> {
        match self {
            Self::RtnIndependent(p) | Self::RtnCommon(p) => Some(p),
            Self::CompositeRtnSqueezed { rtn, .. } => Some(rtn),
            _ => None,
        }
    }

    /// Bath decoherence function at scaled time `tau`.
    ///
    /// Bath-only scenarios use `τ = ω0 t`. The composite scenario runs on the
    /// telegraph clock `τ = ν t`, so its bath sees `t = τ/ν`.
    fn gamma_estimate(&self, tau: f64) -> Result<Estimate> {
        let est = match self {
            Self::ThermalOhmic(p) => gamma_thermal_estimate(tau, p)?,
            Self::SqueezedVacuum(p) => gamma_squeezed_estimate(tau, p)?,
            Self::CompositeRtnSqueezed { rtn, bath } => {
                gamma_squeezed_estimate(tau / rtn.nu, bath)?
            }
            Self::RtnIndependent(_) | Self::RtnCommon(_) => return Ok(Estimate::exact(0.0)),
        };
        Ok(Estimate {
            value: est.value,
            error: est.abs_error,
        })
    }
}

/// Decoherence inputs at one instant: `γ` for baths and `D_0..D_max` for
/// telegraph noise.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvironmentState {
    pub tau: f64,
    pub gamma: f64,
    pub dn: Vec<f64>,
}

impl EnvironmentState {
    pub fn d(&self, n: u32) -> f64 {
        self.dn[n as usize]
    }
}

/// System layout × environment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub layout: SpinLayout,
    pub environment: EnvironmentModel,
}

impl Scenario {
    pub fn new(layout: SpinLayout, environment: EnvironmentModel) -> Result<Self> {
        let s = Self {
            layout,
            environment,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.environment.validate()?;
        if self.topology() == Topology::Composite && !self.layout.is_qubit_qutrit() {
            return Err(Error::UnsupportedScenario(
                "composite environment requires the qubit⊗qutrit layout [1/2, 1]".into(),
            ));
        }
        Ok(())
    }

    pub fn topology(&self) -> Topology {
        self.environment.topology()
    }

    /// Largest `n` of `D_n` any matrix element can need.
    fn max_dn_order(&self) -> u32 {
        let per_sub = |spin: &Spin| if *spin == Spin::HALF { 2 } else { spin.twice() };
        match self.topology() {
            Topology::Common => self.layout.spins().iter().map(per_sub).sum(),
            _ => self.layout.spins().iter().map(per_sub).max().unwrap_or(0),
        }
    }

    fn state_with_gamma(&self, tau: f64, gamma: f64) -> Result<EnvironmentState> {
        let dn = match self.environment.rtn() {
            Some(rtn) => (0..=self.max_dn_order())
                .map(|n| rtn_dn(n, rtn.q(), tau))
                .collect::<Result<_>>()?,
            None => vec![1.0],
        };
        Ok(EnvironmentState { tau, gamma, dn })
    }

    pub fn environment_state(&self, tau: f64) -> Result<EnvironmentState> {
        let gamma = self.environment.gamma_estimate(tau)?.value;
        self.state_with_gamma(tau, gamma)
    }

    /// Environment states on a whole grid; bath integrals are evaluated in
    /// parallel once per node.
    pub fn environment_states(&self, grid: &[f64]) -> Result<Vec<EnvironmentState>> {
        let gamma = memoize_on_grid(|t| self.environment.gamma_estimate(t), grid)?;
        grid.par_iter()
            .zip(gamma.values().par_iter())
            .map(|(&tau, &g)| self.state_with_gamma(tau, g))
            .collect()
    }

    /// Damping factor of the element `|row⟩⟨col|`, with `row` and `col`
    /// given as per-subsystem basis indices.
    pub fn element_factor(&self, row: &[usize], col: &[usize], env: &EnvironmentState) -> Result<f64> {
        let n = self.layout.spins().len();
        if row.len() != n || col.len() != n {
            return Err(Error::DimensionMismatch(n, row.len().min(col.len())));
        }
        for (k, spin) in self.layout.spins().iter().enumerate() {
            if row[k] >= spin.dim() || col[k] >= spin.dim() {
                return Err(Error::BadSubsystemIndex {
                    index: k,
                    dims: self.layout.dims(),
                });
            }
        }
        let bath = |deltas: &[i32]| (-(deltas.iter().map(|d| d * d).sum::<i32>() as f64) * env.gamma).exp();
        let d = |k: i32| env.d(k.unsigned_abs());
        let factor = match self.topology() {
            Topology::Independent if self.environment.rtn().is_none() => {
                bath(&self.layout.coupling_deltas(row, col, false))
            }
            Topology::Independent => self
                .layout
                .coupling_deltas(row, col, true)
                .into_iter()
                .map(d)
                .product(),
            Topology::Common => d(self.layout.coupling_deltas(row, col, true).iter().sum()),
            Topology::Composite => {
                let qubit = self.layout.coupling_deltas(row, col, true)[0];
                let qutrit = self.layout.coupling_deltas(row, col, false)[1];
                d(qubit) * bath(&[qutrit])
            }
        };
        Ok(factor)
    }

    /// Full real damping matrix at one instant.
    pub fn dephasing_factors(&self, env: &EnvironmentState) -> Result<DephasingFactor> {
        let dim = self.layout.total_dim();
        let split: Vec<Vec<usize>> = (0..dim).map(|i| self.layout.split_index(i)).collect();
        let mut values = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                values[i * dim + j] = self.element_factor(&split[i], &split[j], env)?;
            }
        }
        Ok(DephasingFactor { dim, values })
    }

    /// The single coherence factor 𝓕 that the mixed initial state acquires
    /// on its `|00⟩⟨12|` element in each qubit⊗qutrit scenario.
    pub fn mixed_coherence_factor(&self, env: &EnvironmentState) -> Result<f64> {
        if !self.layout.is_qubit_qutrit() {
            return Err(Error::UnsupportedScenario(
                "mixed-state coherence factor is defined for qubit⊗qutrit only".into(),
            ));
        }
        Ok(match self.environment {
            EnvironmentModel::ThermalOhmic(_) | EnvironmentModel::SqueezedVacuum(_) => {
                (-5.0 * env.gamma).exp()
            }
            EnvironmentModel::RtnIndependent(_) => env.d(2).powi(2),
            EnvironmentModel::RtnCommon(_) => env.d(4),
            EnvironmentModel::CompositeRtnSqueezed { .. } => env.d(2) * (-4.0 * env.gamma).exp(),
        })
    }
}

/// Real damping value for every matrix element.
#[derive(Clone, Debug, PartialEq)]
pub struct DephasingFactor {
    dim: usize,
    values: Vec<f64>,
}

impl DephasingFactor {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// How the system is prepared.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    /// Uniform superposition with `e^{iφ}` on the first basis state.
    PurePhase { phi: f64 },
    /// Qubit⊗qutrit mixture `p/2(|01⟩⟨01| + |11⟩⟨11|) + p|ψ+⟩⟨ψ+| + (1-2p)|ψ-⟩⟨ψ-|`.
    MixedP { p: f64 },
}

/// Evolution output: pure initial states keep their phase structure.
#[derive(Clone, Debug, PartialEq)]
pub enum Evolved {
    Family(PhiFamily),
    State(DensityMatrix),
}

impl Evolved {
    pub fn state(&self) -> Result<DensityMatrix> {
        match self {
            Evolved::Family(f) => Ok(f.base().clone()),
            Evolved::State(s) => Ok(s.clone()),
        }
    }
}

/// `(e^{iφ}|ψ_1⟩ + |ψ_2⟩ + … + |ψ_d⟩)/√d` as a phase family.
pub fn initial_pure(layout: &SpinLayout, phi: f64) -> Result<PhiFamily> {
    let d = layout.total_dim();
    let amp = 1.0 / (d as f64).sqrt();
    let mut ket = vec![C64::new(amp, 0.0); d];
    ket[0] = C64::from_polar(amp, phi);
    let rho = DensityMatrix::from_pure(&ket, layout.dims())?;
    let mask = (0..d * d)
        .map(|k| match (k / d, k % d) {
            (0, 0) => 0,
            (0, _) => 1,
            (_, 0) => -1,
            _ => 0,
        })
        .collect();
    PhiFamily::new(rho, phi, mask)
}

/// One-parameter mixed entangled qubit⊗qutrit state, `0 ≤ p ≤ 1/2`.
pub fn initial_mixed(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidP(p));
    }
    // basis |00⟩,|01⟩,|02⟩,|10⟩,|11⟩,|12⟩; ψ+ on {0,5}, ψ- on {2,3}
    let plus = 0.5 * p;
    let minus = 0.5 * (1.0 - 2.0 * p);
    let m = ComplexMatrix::from_fn(6, |i, j| {
        let v = match (i, j) {
            (1, 1) | (4, 4) => plus,
            (0, 0) | (5, 5) | (0, 5) | (5, 0) => plus,
            (2, 2) | (3, 3) | (2, 3) | (3, 2) => minus,
            _ => 0.0,
        };
        C64::new(v, 0.0)
    })?;
    DensityMatrix::new(m, vec![2, 3])
}

/// Single-qudit dephasing: `ρ_nm → ρ_nm exp[-(n-m)² γ(t)]`.
pub fn dephase_single(
    rho0: &PhiFamily,
    spin: Spin,
    gamma_fn: impl Fn(f64) -> Result<f64>,
    t: f64,
) -> Result<PhiFamily> {
    if rho0.dim() != spin.dim() {
        return Err(Error::DimensionMismatch(spin.dim(), rho0.dim()));
    }
    let gamma = gamma_fn(t)?;
    rho0.map_entries(|i, j| {
        let dm = (i as f64) - (j as f64);
        (-dm * dm * gamma).exp()
    })
}

/// Evolve a phase family under `scenario` at scaled time `tau`.
pub fn evolve_family(scenario: &Scenario, rho0: &PhiFamily, env: &EnvironmentState) -> Result<PhiFamily> {
    let factors = scenario.dephasing_factors(env)?;
    if factors.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch(factors.dim(), rho0.dim()));
    }
    rho0.map_entries(|i, j| factors.get(i, j))
}

/// Evolve an arbitrary density matrix under `scenario`.
pub fn evolve_state(
    scenario: &Scenario,
    rho0: &DensityMatrix,
    env: &EnvironmentState,
) -> Result<DensityMatrix> {
    let factors = scenario.dephasing_factors(env)?;
    if factors.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch(factors.dim(), rho0.dim()));
    }
    let m = rho0.matrix();
    let out = ComplexMatrix::from_fn(rho0.dim(), |i, j| m[(i, j)] * factors.get(i, j))?;
    DensityMatrix::new(out, rho0.subsystem_dims().to_vec())
}

/// Prepare `initial` and evolve it to scaled time `tau`.
pub fn evolve(scenario: &Scenario, initial: &InitialState, tau: f64) -> Result<Evolved> {
    scenario.validate()?;
    let env = scenario.environment_state(tau)?;
    evolve_prepared(scenario, initial, &env)
}

/// As [`evolve`], with the environment state already computed.
pub fn evolve_prepared(
    scenario: &Scenario,
    initial: &InitialState,
    env: &EnvironmentState,
) -> Result<Evolved> {
    match *initial {
        InitialState::PurePhase { phi } => {
            let rho0 = initial_pure(&scenario.layout, phi)?;
            Ok(Evolved::Family(evolve_family(scenario, &rho0, env)?))
        }
        InitialState::MixedP { p } => {
            if !scenario.layout.is_qubit_qutrit() {
                return Err(Error::UnsupportedScenario(
                    "mixed initial state is defined for qubit⊗qutrit only".into(),
                ));
            }
            let rho0 = initial_mixed(p)?;
            Ok(Evolved::State(evolve_state(scenario, &rho0, env)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoherence::OhmicSpectralDensity;

    fn squeezed() -> SqueezedBathParams {
        SqueezedBathParams {
            spectral: OhmicSpectralDensity::new(0.1, 3.0, 20.0).unwrap(),
            r: 0.3,
            theta: 0.0,
        }
    }

    fn env(gamma: f64, dn: &[f64]) -> EnvironmentState {
        EnvironmentState {
            tau: 0.0,
            gamma,
            dn: dn.to_vec(),
        }
    }

    #[test]
    fn spin_parsing() {
        assert_eq!(Spin::try_from(0.5).unwrap(), Spin::HALF);
        assert_eq!(Spin::try_from(1.5).unwrap().dim(), 4);
        assert!(Spin::try_from(0.0).is_err());
        assert!(Spin::try_from(0.7).is_err());
    }

    #[test]
    fn split_index_is_row_major() {
        let l = SpinLayout::qubit_qutrit();
        assert_eq!(l.split_index(0), vec![0, 0]);
        assert_eq!(l.split_index(2), vec![0, 2]);
        assert_eq!(l.split_index(4), vec![1, 1]);
    }

    #[test]
    fn initial_pure_examples() {
        let q = initial_pure(&SpinLayout::qudit(Spin::HALF), 0.0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((q.base()[(i, j)] - C64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }
        let f = initial_pure(&SpinLayout::qubit_qutrit(), std::f64::consts::PI).unwrap();
        let rho = f.base();
        assert!((rho.matrix().trace() - C64::new(1.0, 0.0)).norm() < 1e-15);
        for j in 1..6 {
            assert!((rho[(0, j)] - C64::new(-1.0 / 6.0, 0.0)).norm() < 1e-15);
            assert!((rho[(j, 0)] - C64::new(-1.0 / 6.0, 0.0)).norm() < 1e-15);
        }
        assert!((rho[(2, 4)] - C64::new(1.0 / 6.0, 0.0)).norm() < 1e-15);
        assert_eq!(f.mask(0, 3), 1);
        assert_eq!(f.mask(3, 0), -1);
        assert_eq!(f.mask(2, 3), 0);
    }

    #[test]
    fn initial_mixed_examples() {
        let pure = initial_mixed(0.0).unwrap();
        let ev = pure.eigenvalues().unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12 && ev[1].abs() < 1e-12);

        let rho = initial_mixed(0.4).unwrap();
        let ev = rho.eigenvalues().unwrap();
        let expected = [0.4, 0.2, 0.2, 0.2, 0.0, 0.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
        assert!(matches!(initial_mixed(0.6), Err(Error::InvalidP(_))));
        assert!(matches!(initial_mixed(-0.1), Err(Error::InvalidP(_))));
    }

    #[test]
    fn dephase_single_exponents() {
        let rho0 = initial_pure(&SpinLayout::qudit(Spin::from_twice(3).unwrap()), 0.4).unwrap();
        let same = dephase_single(&rho0, Spin::from_twice(3).unwrap(), |_| Ok(0.0), 1.0).unwrap();
        assert!(same.base().matrix().max_abs_diff(rho0.base().matrix()) < 1e-16);
        let g = 0.07;
        let out = dephase_single(&rho0, Spin::from_twice(3).unwrap(), |_| Ok(g), 1.0).unwrap();
        let ratio = out.base()[(0, 3)] / rho0.base()[(0, 3)];
        assert!((ratio.re - (-9.0 * g).exp()).abs() < 1e-15);
        let half = initial_pure(&SpinLayout::qudit(Spin::HALF), 0.0).unwrap();
        let out = dephase_single(&half, Spin::HALF, |_| Ok(g), 1.0).unwrap();
        assert!((out.base()[(0, 1)].re - 0.5 * (-g).exp()).abs() < 1e-15);
        assert!(dephase_single(&half, Spin::ONE, |_| Ok(g), 1.0).is_err());
    }

    #[test]
    fn element_factor_examples() {
        let l = SpinLayout::qubit_qutrit();
        let rtn = RtnParams::from_q(0.1).unwrap();
        let e = env(0.0, &[1.0, 0.9, 0.8, 0.7, 0.6]);

        let common = Scenario::new(l.clone(), EnvironmentModel::RtnCommon(rtn)).unwrap();
        // |02⟩⟨10| is decoherence-free
        assert_eq!(common.element_factor(&[0, 2], &[1, 0], &e).unwrap(), 1.0);
        assert_eq!(common.element_factor(&[0, 0], &[1, 2], &e).unwrap(), 0.6);

        let indep = Scenario::new(l.clone(), EnvironmentModel::RtnIndependent(rtn)).unwrap();
        assert!((indep.element_factor(&[0, 0], &[1, 1], &e).unwrap() - 0.8 * 0.9).abs() < 1e-15);
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(indep.element_factor(&[a, b], &[a, b], &e).unwrap(), 1.0);
                assert_eq!(common.element_factor(&[a, b], &[a, b], &e).unwrap(), 1.0);
            }
        }
        assert!(indep.element_factor(&[0, 3], &[0, 0], &e).is_err());
    }

    #[test]
    fn composite_requires_qubit_qutrit() {
        let env = EnvironmentModel::CompositeRtnSqueezed {
            rtn: RtnParams::new(100.0, 10.0).unwrap(),
            bath: squeezed(),
        };
        assert!(matches!(
            Scenario::new(SpinLayout::qudit(Spin::ONE), env),
            Err(Error::UnsupportedScenario(_))
        ));
        assert!(Scenario::new(SpinLayout::qubit_qutrit(), env).is_ok());
    }

    #[test]
    fn evolution_at_zero_is_identity() {
        let sc = Scenario::new(SpinLayout::qubit_qutrit(), EnvironmentModel::SqueezedVacuum(squeezed()))
            .unwrap();
        let out = evolve(&sc, &InitialState::PurePhase { phi: 1.1 }, 0.0).unwrap();
        let Evolved::Family(f) = out else { panic!() };
        let rho0 = initial_pure(&sc.layout, 1.1).unwrap();
        assert!(f.base().matrix().max_abs_diff(rho0.base().matrix()) < 1e-16);
        let out = evolve(&sc, &InitialState::MixedP { p: 0.3 }, 0.0).unwrap();
        assert_eq!(out.state().unwrap(), initial_mixed(0.3).unwrap());
    }

    #[test]
    fn mixed_initial_state_needs_qubit_qutrit() {
        let sc = Scenario::new(
            SpinLayout::qudit(Spin::ONE),
            EnvironmentModel::SqueezedVacuum(squeezed()),
        )
        .unwrap();
        assert!(evolve(&sc, &InitialState::MixedP { p: 0.1 }, 0.5).is_err());
    }

    #[test]
    fn scenario_json_roundtrip() {
        let sc = Scenario::new(
            SpinLayout::qubit_qutrit(),
            EnvironmentModel::CompositeRtnSqueezed {
                rtn: RtnParams::new(100.0, 10.0).unwrap(),
                bath: squeezed(),
            },
        )
        .unwrap();
        let text = serde_json::to_string(&sc).unwrap();
        assert!(text.contains("\"composite_rtn_squeezed\""));
        let back: Scenario = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sc);
    }
}
