//! Channel parameters, cooperative covariance construction and the Gaussian
//! mutual-information kernel shared by the region and bound modules.
//!
//! All rates are in bits per channel use (log base 2). Noise variances are
//! normalized to 1 and never stored; arbitrary noise levels are expressible
//! by rescaling the powers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the positive-semidefiniteness check on the
/// cooperative covariance.
pub const PSD_REL_TOL: f64 = 1e-12;

/// Two-user Gaussian interference channel
/// `Y1 = X1 + a X2 + Z1`, `Y2 = b X1 + X2 + Z2` with unit-variance noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Cross gain from transmitter 2 into receiver 1.
    pub a: f64,
    /// Cross gain from transmitter 1 into receiver 2.
    pub b: f64,
    /// Average power constraint of transmitter 1.
    pub p1: f64,
    /// Average power constraint of transmitter 2.
    pub p2: f64,
}

impl ChannelParams {
    pub fn new(a: f64, b: f64, p1: f64, p2: f64) -> Self {
        Self { a, b, p1, p2 }
    }

    /// The channel with the roles of the two transmitters exchanged:
    /// gains swapped and powers swapped.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            p1: self.p2,
            p2: self.p1,
        }
    }
}

/// Power split of the informed transmitter: fraction `alpha` of its power
/// carries the private message, the rest cooperates on the other message
/// with cross-covariance `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoopSplit {
    pub alpha: f64,
    pub gamma: f64,
}

impl CoopSplit {
    pub fn new(alpha: f64, gamma: f64) -> Self {
        Self { alpha, gamma }
    }
}

/// 2x2 covariance of the cooperative signal pair (informed transmitter's
/// cooperative component, other transmitter's signal).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Covariance2 {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

/// An achievable or bounding rate pair, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }
}

/// Validates powers and gains, optionally enforcing the weak-interference
/// condition on either cross gain.
pub fn validate_channel(
    params: ChannelParams,
    require_weak_b: bool,
    require_weak_a: bool,
) -> Result<ChannelParams> {
    for (name, v) in [
        ("a", params.a),
        ("b", params.b),
        ("p1", params.p1),
        ("p2", params.p2),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFinite(name));
        }
    }
    if params.p1 < 0.0 {
        return Err(Error::NegativePower(params.p1));
    }
    if params.p2 < 0.0 {
        return Err(Error::NegativePower(params.p2));
    }
    if require_weak_b && params.b.abs() > 1.0 {
        return Err(Error::NotWeakInterference {
            gain: "b",
            value: params.b.abs(),
        });
    }
    if require_weak_a && params.a.abs() > 1.0 {
        return Err(Error::NotWeakInterference {
            gain: "a",
            value: params.a.abs(),
        });
    }
    Ok(params)
}

/// Builds the cooperative covariance `[(1-alpha)P1, gamma; gamma, P2]`,
/// rejecting splits whose `gamma` exceeds the PSD limit.
pub fn build_sigma(params: ChannelParams, split: CoopSplit) -> Result<Covariance2> {
    let s11 = (1.0 - split.alpha) * params.p1;
    let s22 = params.p2;
    let limit = s11 * s22;
    let gamma_sq = split.gamma * split.gamma;
    if gamma_sq > limit + PSD_REL_TOL * limit.max(1.0) {
        return Err(Error::NotPsd { gamma_sq, limit });
    }
    Ok(Covariance2 {
        s11,
        s12: split.gamma,
        s22,
    })
}

/// Quadratic form `h Sigma h^t` with `h = [b 1]`:
/// the received cooperative power at receiver 2.
pub fn quadratic_form(params: ChannelParams, sigma: Covariance2) -> f64 {
    params.b * params.b * sigma.s11 + 2.0 * params.b * sigma.s12 + sigma.s22
}

/// Capacity of a scalar Gaussian channel, `1/2 log2(1 + S/N)` bits.
pub fn mi_gaussian_scalar(signal_power: f64, noise_power: f64) -> Result<f64> {
    if noise_power <= 0.0 {
        return Err(Error::ZeroNoise(noise_power));
    }
    Ok(0.5 * (1.0 + signal_power / noise_power).log2())
}
