//! Fading laws and link-budget algebra: the shadowed-Rician power CDF for
//! the satellite-gateway hop, its composite sampler, and the propagation
//! constant that folds the whole budget into a single coverage test
//! `W^2 / D^2 >= c`.
//!
//! Everything here works in linear units; dB conversion happens once at
//! configuration ingestion.

use crate::numerics::{self, SeriesSpec};
use crate::SPEED_OF_LIGHT;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Normal};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shadowed-Rician series failed to converge: {0}")]
    NonConvergence(#[from] numerics::NumericsError),
}

/// Shadowed-Rician fading parameters: line-of-sight power `omega`,
/// per-component scatter variance `b0` (scatter power `2 b0`), and the
/// Nakagami shadowing parameter `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SRFadingParams {
    pub omega: f64,
    pub b0: f64,
    pub m: f64,
}

impl SRFadingParams {
    pub fn new(omega: f64, b0: f64, m: f64) -> Result<Self, ChannelError> {
        let p = SRFadingParams { omega, b0, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        for (name, v) in [("omega", self.omega), ("b0", self.b0), ("m", self.m)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(ChannelError::InvalidParameter(format!(
                    "shadowed-Rician {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Series weight `beta = omega / (2 b0 m + omega)`, always in (0, 1).
    pub(crate) fn beta(&self) -> f64 {
        self.omega / (2.0 * self.b0 * self.m + self.omega)
    }

    /// Prefactor `(2 b0 m / (2 b0 m + omega))^m = (1 - beta)^m`.
    pub(crate) fn prefactor(&self) -> f64 {
        (2.0 * self.b0 * self.m / (2.0 * self.b0 * self.m + self.omega)).powf(self.m)
    }

    /// Bound `q` such that consecutive dominating-series terms satisfy
    /// `a_{k+1} <= q a_k` for every `k >= z`, where `a_z = (m)_z beta^z/z!`.
    /// The term ratio `beta (m+z)/(z+1)` is monotone toward `beta`, from
    /// above when `m >= 1` and from below when `m < 1`.
    pub(crate) fn tail_ratio_bound(&self, z: usize) -> f64 {
        let zf = z as f64;
        self.beta() * ((self.m + zf + 1.0) / (zf + 2.0)).max(1.0)
    }
}

/// Linear-unit link budget shared by the three links.
///
/// `gr2` is the receive antenna power gain used on the satellite-gateway
/// hop (the source tables label it a user antenna gain; it enters only the
/// S-GW budget). `rain_s` is the rain attenuation as an amplitude factor;
/// the beam phase contributes `|e^{j phi}| = 1` and never appears.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Carrier frequency of the satellite-gateway link [Hz].
    pub carrier_freq_hz: f64,
    /// Satellite transmit power [W].
    pub rho_s_w: f64,
    /// Gateway transmit power [W].
    pub rho_g_w: f64,
    /// Anchored-base-station transmit power [W].
    pub rho_a_w: f64,
    /// Noise power at the gateway [W].
    pub sigma2_g_w: f64,
    /// Noise power at the user [W].
    pub sigma2_u_w: f64,
    /// Receive antenna power gain, linear.
    pub gr2: f64,
    /// Rain attenuation amplitude coefficient, linear.
    pub rain_s: f64,
    /// Antenna-pattern amplitude factor, linear.
    pub xi: f64,
    /// Path-loss exponent of the terrestrial links.
    pub alpha: f64,
}

impl LinkBudget {
    pub fn validate(&self) -> Result<(), ChannelError> {
        for (name, v) in [
            ("carrier_freq_hz", self.carrier_freq_hz),
            ("rho_s_w", self.rho_s_w),
            ("rho_g_w", self.rho_g_w),
            ("rho_a_w", self.rho_a_w),
            ("sigma2_g_w", self.sigma2_g_w),
            ("sigma2_u_w", self.sigma2_u_w),
            ("gr2", self.gr2),
            ("rain_s", self.rain_s),
            ("xi", self.xi),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(ChannelError::InvalidParameter(format!(
                    "link budget {name} must be positive, got {v}"
                )));
            }
        }
        if !self.alpha.is_finite() || self.alpha <= 2.0 {
            return Err(ChannelError::InvalidParameter(format!(
                "path-loss exponent must exceed 2, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Carrier wavelength [m].
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq_hz
    }
}

/// SNR thresholds, linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub gamma_g: f64,
    pub gamma_u: f64,
}

impl Thresholds {
    pub fn validate(&self) -> Result<(), ChannelError> {
        for (name, v) in [("gamma_g", self.gamma_g), ("gamma_u", self.gamma_u)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(ChannelError::InvalidParameter(format!(
                    "threshold {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

// ============================================================================
// Shadowed-Rician power CDF
// ============================================================================

/// CDF of the shadowed-Rician fading power `W^2` at `t`:
///
/// `(1-beta)^m sum_z [(m)_z / (z! Gamma(z+1))] beta^z gamma(z+1, t/(2 b0))`
///
/// summed until the certified geometric tail bound drops below `tol`.
///
/// Terms are built by recurrence — `(m)_z beta^z / z!` from the previous
/// term and the regularized `gamma(z+1, x)/z!` by subtracting successive
/// Poisson masses — so no bare factorial or Gamma ever overflows.
/// Accumulation runs in increasing `z`.
pub fn sr_cdf(t: f64, params: &SRFadingParams, tol: f64) -> Result<f64, ChannelError> {
    params.validate()?;
    if !t.is_finite() && t != f64::INFINITY {
        return Err(ChannelError::InvalidParameter(format!("power {t}")));
    }
    if t < 0.0 {
        return Err(ChannelError::InvalidParameter(format!(
            "power must be non-negative, got {t}"
        )));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(ChannelError::InvalidParameter(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }

    let x = t / (2.0 * params.b0);
    let beta = params.beta();
    let pref = params.prefactor();
    let m = params.m;

    // State advanced once per z, in order.
    let mut weight = 1.0; // (m)_z beta^z / z!
    let mut pmf = (-x).exp(); // Poisson(x) mass at z
    let mut p_reg = 1.0 - pmf; // regularized gamma(z+1, x) / z!
    let term = move |z: usize| {
        let value = pref * weight * p_reg;
        let zf = z as f64;
        weight *= beta * (m + zf) / (zf + 1.0);
        if pmf > 0.0 {
            pmf *= x / (zf + 1.0);
            p_reg = (p_reg - pmf).max(0.0);
        } else if (zf + 2.0) > x - 10.0 * x.sqrt() {
            // exp(-x) underflowed and z approaches x: the Poisson-mass
            // recurrence is no longer usable, fall back to the generic
            // evaluation.
            p_reg = numerics::lower_gamma_regularized(zf + 2.0, x);
        }
        value
    };

    let sum = numerics::sum_series(SeriesSpec {
        term,
        // The incomplete-gamma factor only shrinks with z, so the weight
        // ratio bounds the full term ratio.
        ratio_bound: |z| params.tail_ratio_bound(z),
        tolerance: tol,
        max_terms: 100_000,
    })?;
    Ok(sum.value.clamp(0.0, 1.0))
}

// ============================================================================
// Composite sampler
// ============================================================================

/// Draws of the shadowed-Rician power `W^2 = |A + Z|^2`: `A` is a real
/// Nakagami-m amplitude with mean power `omega` (`A^2 ~ Gamma(m, omega/m)`)
/// and `Z` is circularly-symmetric complex Gaussian with per-component
/// variance `b0`. The mean power is `omega + 2 b0`.
#[derive(Debug, Clone)]
pub struct SrSampler {
    los_power: Gamma<f64>,
    scatter: Normal<f64>,
}

impl SrSampler {
    pub fn new(params: &SRFadingParams) -> Result<Self, ChannelError> {
        params.validate()?;
        let los_power = Gamma::new(params.m, params.omega / params.m)
            .map_err(|e| ChannelError::InvalidParameter(e.to_string()))?;
        let scatter = Normal::new(0.0, params.b0.sqrt())
            .map_err(|e| ChannelError::InvalidParameter(e.to_string()))?;
        Ok(SrSampler { los_power, scatter })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.los_power.sample(rng).sqrt();
        let re = a + self.scatter.sample(rng);
        let im = self.scatter.sample(rng);
        re * re + im * im
    }
}

/// One composite draw of the shadowed-Rician power; see [`SrSampler`].
pub fn sample_sr_power<R: Rng + ?Sized>(
    params: &SRFadingParams,
    rng: &mut R,
) -> Result<f64, ChannelError> {
    Ok(SrSampler::new(params)?.sample(rng))
}

// ============================================================================
// Propagation constant
// ============================================================================

/// The satellite-gateway coverage constant
///
/// `c = 16 pi^2 gamma_g sigma_g^2 / (rho_s lambda^2 G_R^2 s^2 xi^2)` [1/m^2]
///
/// with `lambda = c_light / f_c`; the hop is covered iff `W^2 / D^2 >= c`.
pub fn link_constant_c(budget: &LinkBudget, thresholds: &Thresholds) -> Result<f64, ChannelError> {
    budget.validate()?;
    thresholds.validate()?;
    let lambda = budget.wavelength_m();
    let denom = budget.rho_s_w
        * (lambda * lambda)
        * budget.gr2
        * (budget.rain_s * budget.rain_s)
        * (budget.xi * budget.xi);
    if denom == 0.0 || !denom.is_finite() {
        return Err(ChannelError::InvalidParameter(format!(
            "propagation-loss denominator is {denom}"
        )));
    }
    Ok(16.0 * PI * PI * thresholds.gamma_g * budget.sigma2_g_w / denom)
}
