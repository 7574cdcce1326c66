//! Environment response functions: bath decoherence integrals Γ(t), γ(t)
//! and telegraph-noise averages D_n(τ).

pub mod bath;
pub mod grid;
pub mod quadrature;
pub mod rtn;

pub use bath::{
    gamma_squeezed, gamma_squeezed_estimate, gamma_thermal, gamma_thermal_estimate,
    OhmicSpectralDensity, SqueezedBathParams, ThermalBathParams,
};
pub use grid::{finite_difference, memoize_on_grid, DecoherenceFunction, Estimate};
pub use rtn::{rtn_dn, rtn_dn_montecarlo, MonteCarloEstimate, RtnParams, RtnRegime};
