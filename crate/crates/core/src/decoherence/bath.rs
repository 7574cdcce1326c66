//! Decoherence functions of bosonic dephasing baths with an Ohmic-family
//! spectral density. Units: ħ = k_B = 1, frequencies in units of ω0.

use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, AdaptiveOptions, QuadratureResult};
use crate::error::{Error, Result};

/// Cutoff multiple used as the upper integration limit.
pub const CUTOFF_MULTIPLE: f64 = 50.0;
/// The integrand envelope at the upper limit must fall below this.
pub const TAIL_BOUND: f64 = 1e-14;
/// Relative accuracy requested from the quadrature.
pub const REL_TOL: f64 = 1e-8;

/// `J(ω) = α ω^s / ω_c^{s-1} · e^{-ω/ω_c}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OhmicSpectralDensity {
    pub alpha: f64,
    pub s_ohmic: f64,
    pub omega_c: f64,
}

impl OhmicSpectralDensity {
    pub fn new(alpha: f64, s_ohmic: f64, omega_c: f64) -> Result<Self> {
        let j = Self {
            alpha,
            s_ohmic,
            omega_c,
        };
        j.validate()?;
        Ok(j)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParams(format!("alpha = {} must be >= 0", self.alpha)));
        }
        if !(self.s_ohmic > 0.0 && self.s_ohmic.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "Ohmic exponent s = {} must be > 0",
                self.s_ohmic
            )));
        }
        if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "cutoff omega_c = {} must be > 0",
                self.omega_c
            )));
        }
        Ok(())
    }

    pub fn eval(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        self.alpha * omega.powf(self.s_ohmic) * self.omega_c.powf(1.0 - self.s_ohmic)
            * (-omega / self.omega_c).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalBathParams {
    pub spectral: OhmicSpectralDensity,
    /// Temperature with k_B = 1; zero means vacuum.
    pub temperature: f64,
}

impl ThermalBathParams {
    pub fn validate(&self) -> Result<()> {
        self.spectral.validate()?;
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "temperature = {} must be >= 0",
                self.temperature
            )));
        }
        Ok(())
    }

    fn coth_factor(&self, omega: f64) -> f64 {
        if self.temperature == 0.0 {
            1.0
        } else {
            1.0 / (omega / (2.0 * self.temperature)).tanh()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezedBathParams {
    pub spectral: OhmicSpectralDensity,
    /// Squeezing amplitude r.
    pub r: f64,
    /// Squeezing angle in radians.
    #[serde(default)]
    pub theta: f64,
}

impl SqueezedBathParams {
    pub fn validate(&self) -> Result<()> {
        self.spectral.validate()?;
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(Error::InvalidParams(format!("squeezing r = {} must be >= 0", self.r)));
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidParams("squeezing angle must be finite".into()));
        }
        Ok(())
    }
}

/// `(1 - cos ωt)/ω²` without cancellation at small `ωt`.
#[inline]
fn one_minus_cos_over_sq(omega: f64, t: f64) -> f64 {
    let s = (0.5 * omega * t).sin() / omega;
    2.0 * s * s
}

/// Integrate a decoherence integrand over `(0, Ω_max]`, where `Ω_max` starts at
/// `CUTOFF_MULTIPLE·ω_c` and grows until `envelope(Ω_max) < TAIL_BOUND`.
///
/// Panels are at most a quarter of the fastest oscillation period wide and the
/// first panel is mapped through `ω = u²` to soften an integrable `ω → 0`
/// singularity.
fn integrate_spectrum(
    spectral: &OhmicSpectralDensity,
    t: f64,
    integrand: impl Fn(f64) -> f64,
    envelope: impl Fn(f64) -> f64,
) -> Result<QuadratureResult> {
    let wc = spectral.omega_c;
    let mut upper = CUTOFF_MULTIPLE * wc;
    let mut grow = 0;
    while envelope(upper) >= TAIL_BOUND {
        upper += 10.0 * wc;
        grow += 1;
        if grow > 100 {
            return Err(Error::InvalidParams(format!(
                "spectral tail does not decay below {TAIL_BOUND:e} by {upper:.3e}"
            )));
        }
    }
    // two oscillation frequencies appear in the squeezed integrand (t and 2t)
    let width = if t > 0.0 {
        (std::f64::consts::FRAC_PI_2 / t).min(wc)
    } else {
        wc
    };
    let width = width.max(upper / 50_000.0);
    let panels = (upper / width).ceil() as usize;
    let first = upper / panels as f64;

    let opts = AdaptiveOptions {
        rel_tol: REL_TOL,
        abs_tol: 1e-15,
        ..AdaptiveOptions::default()
    };
    let head = integrate(
        |u| 2.0 * u * integrand(u * u),
        &[0.0, first.sqrt()],
        opts,
    )?;
    if panels == 1 {
        return Ok(head);
    }
    let breaks: Vec<f64> = (1..=panels).map(|k| first * k as f64).collect();
    let tail = integrate(&integrand, &breaks, opts)?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        abs_error: head.abs_error + tail.abs_error,
        segments: head.segments + tail.segments,
    })
}

/// Thermal decoherence function Γ(t) with its quadrature error estimate.
pub fn gamma_thermal_estimate(t: f64, params: &ThermalBathParams) -> Result<QuadratureResult> {
    params.validate()?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error: 0.0,
            segments: 0,
        });
    }
    let j = params.spectral;
    integrate_spectrum(
        &j,
        t,
        |w| j.eval(w) * params.coth_factor(w) * one_minus_cos_over_sq(w, t),
        |w| j.eval(w) * params.coth_factor(w) * 2.0 / (w * w),
    )
}

/// `Γ(t) = ∫ J(ω) coth(ω/2T) (1 - cos ωt)/ω² dω`.
pub fn gamma_thermal(t: f64, params: &ThermalBathParams) -> Result<f64> {
    Ok(gamma_thermal_estimate(t, params)?.value)
}

/// Squeezed-vacuum decoherence function γ(t) with its quadrature error estimate.
pub fn gamma_squeezed_estimate(t: f64, params: &SqueezedBathParams) -> Result<QuadratureResult> {
    params.validate()?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error: 0.0,
            segments: 0,
        });
    }
    let j = params.spectral;
    let (ch, sh) = ((2.0 * params.r).cosh(), (2.0 * params.r).sinh());
    integrate_spectrum(
        &j,
        t,
        |w| j.eval(w) * one_minus_cos_over_sq(w, t) * (ch - sh * (w * t - params.theta).cos()),
        |w| j.eval(w) * 2.0 / (w * w) * (ch + sh),
    )
}

/// `γ(t) = ∫ J(ω) (1 - cos ωt)/ω² [cosh 2r - sinh 2r cos(ωt - θ)] dω`.
pub fn gamma_squeezed(t: f64, params: &SqueezedBathParams) -> Result<f64> {
    Ok(gamma_squeezed_estimate(t, params)?.value)
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("time t = {t} must be finite and >= 0")))
    }
}
