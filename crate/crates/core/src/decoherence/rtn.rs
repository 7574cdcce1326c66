//! Random telegraph noise: ensemble averages `D_n(τ) = ⟨cos nθ(τ)⟩` of the
//! accumulated phase of a symmetric ±1 fluctuator, in scaled time `τ = ν t`
//! with switching rate `q = γ/ν`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|q - n|` the closed form switches to its `ξ → 0` limit.
pub const SEAM_WIDTH: f64 = 1e-6;
/// Trials per independently seeded Monte-Carlo chunk.
pub const CHUNK_TRIALS: usize = 4096;
pub const MIN_TRIALS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RtnParams {
    /// Coupling strength ν (units of ω0).
    pub nu: f64,
    /// Switching rate γ.
    pub gamma_rate: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RtnRegime {
    /// Fast noise, `q ≥ 10`.
    Markovian,
    /// Slow noise, `q ≤ 0.1`.
    NonMarkovian,
    Crossover,
}

impl RtnParams {
    pub fn new(nu: f64, gamma_rate: f64) -> Result<Self> {
        let p = Self { nu, gamma_rate };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with `ν = 1`, so that `q = gamma_rate`.
    pub fn from_q(q: f64) -> Result<Self> {
        Self::new(1.0, q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidParams(format!("RTN coupling nu = {} must be > 0", self.nu)));
        }
        if !(self.gamma_rate >= 0.0 && self.gamma_rate.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "RTN switching rate = {} must be >= 0",
                self.gamma_rate
            )));
        }
        Ok(())
    }

    pub fn q(&self) -> f64 {
        self.gamma_rate / self.nu
    }

    pub fn regime(&self) -> RtnRegime {
        let q = self.q();
        if q >= 10.0 {
            RtnRegime::Markovian
        } else if q <= 0.1 {
            RtnRegime::NonMarkovian
        } else {
            RtnRegime::Crossover
        }
    }
}

fn check_args(q: f64, tau: f64) -> Result<()> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::InvalidParams(format!("q = {q} must be finite and >= 0")));
    }
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParams(format!("tau = {tau} must be finite and >= 0")));
    }
    Ok(())
}

/// Closed-form `D_n(τ)`; `D_0 = 1`.
pub fn rtn_dn(n: u32, q: f64, tau: f64) -> Result<f64> {
    check_args(q, tau)?;
    if n == 0 || tau == 0.0 {
        return Ok(1.0);
    }
    let nf = f64::from(n);
    let gap = q - nf;
    let value = if gap.abs() < SEAM_WIDTH {
        (-q * tau).exp() * (1.0 + q * tau)
    } else if gap > 0.0 {
        // e^{-qτ}[cosh ξτ + (q/ξ) sinh ξτ], expanded into decaying exponentials
        let xi = (gap * (q + nf)).sqrt();
        let slow = (-(q - xi) * tau).exp();
        let fast = (-(q + xi) * tau).exp();
        0.5 * (slow + fast) + 0.5 * (q / xi) * (slow - fast)
    } else {
        let xi = (-gap * (q + nf)).sqrt();
        (-q * tau).exp() * ((xi * tau).cos() + (q / xi) * (xi * tau).sin())
    };
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Accumulated phase `θ(τ) = ∫₀^τ L` of one telegraph trajectory.
fn telegraph_phase(rng: &mut ChaCha8Rng, flips: Option<&Exp<f64>>, tau: f64) -> f64 {
    let mut sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let Some(flips) = flips else {
        return sign * tau;
    };
    let mut t = 0.0;
    let mut theta = 0.0;
    loop {
        let dt = flips.sample(rng);
        if t + dt >= tau {
            return theta + sign * (tau - t);
        }
        theta += sign * dt;
        t += dt;
        sign = -sign;
    }
}

/// Monte-Carlo estimate of `D_n(τ)` from `trials` telegraph trajectories.
///
/// Trials are split into fixed chunks of `CHUNK_TRIALS`; chunk `k` draws from
/// the ChaCha8 stream `k` of `seed`, so the result does not depend on the
/// number of worker threads.
pub fn rtn_dn_montecarlo(
    n: u32,
    q: f64,
    tau: f64,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    check_args(q, tau)?;
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParams(format!(
            "at least {MIN_TRIALS} trials required, got {trials}"
        )));
    }
    let flips = if q > 0.0 {
        Some(Exp::new(q).map_err(|e| Error::InvalidParams(e.to_string()))?)
    } else {
        None
    };
    let nf = f64::from(n);
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let count = CHUNK_TRIALS.min(trials - k * CHUNK_TRIALS);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let c = (nf * telegraph_phase(&mut rng, flips.as_ref(), tau)).cos();
                sum += c;
                sum_sq += c * c;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partial
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, ss)| (a + s, b + ss));
    let count = trials as f64;
    let mean = sum / count;
    let var = ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    Ok(MonteCarloEstimate {
        mean,
        stderr: (var / count).sqrt(),
        trials,
    })
}
