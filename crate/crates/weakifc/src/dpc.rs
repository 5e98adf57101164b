//! Dirty-paper-coding achievability checks, two ways: exact Gaussian
//! covariance algebra for the Costa auxiliary-variable identity, and a
//! seeded Monte-Carlo estimator of the same rates from sampled signals.
//!
//! The auxiliary variable is `U = X1p + lambda * S` with the Costa scaling
//! `lambda = alpha*P1 / (1 + alpha*P1)`, where `S = a*X2 + X1c` is the full
//! interference known at the informed transmitter. With that choice
//! `I(U;Y1) - I(U;S) = 1/2 log2(1 + alpha*P1)` regardless of the
//! interference power.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    build_sigma, quadratic_form, validate_channel, ChannelParams, CoopSplit, RatePair,
};
use crate::regions::{achievable_rates_t1, optimal_gamma};

/// Minimum sample count accepted by the estimators.
pub const MIN_SAMPLES: usize = 1000;
/// Number of sub-batches used for the standard-error estimate.
pub const SUB_BATCHES: usize = 10;
/// Identity of the sample generator, recorded in reports.
pub const GENERATOR_ID: &str = "chacha20/seed_from_u64(splitmix64(seed, batch))";

/// Costa precoder at a given power split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostaCoder {
    pub lambda: f64,
    pub alpha: f64,
    pub params: ChannelParams,
}

impl CostaCoder {
    /// The capacity-achieving coder: `lambda = alpha*P1 / (1 + alpha*P1)`.
    pub fn capacity_achieving(params: ChannelParams, alpha: f64) -> Self {
        let p = alpha * params.p1;
        Self {
            lambda: p / (1.0 + p),
            alpha,
            params,
        }
    }
}

/// Monte-Carlo configuration. Noise variance is fixed at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_samples: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        Self { n_samples, seed }
    }

    fn check(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(Error::InsufficientSamples {
                got: self.n_samples,
                min: MIN_SAMPLES,
            });
        }
        Ok(())
    }
}

/// A Monte-Carlo rate estimate with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub rate_hat: f64,
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// One batch of sampled channel uses; the received vectors satisfy the
/// channel equations exactly given the transmitted ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SimBatch {
    pub x1p: Vec<f64>,
    pub x1c: Vec<f64>,
    pub x2: Vec<f64>,
    pub z1: Vec<f64>,
    pub z2: Vec<f64>,
    pub y1: Vec<f64>,
    pub y2: Vec<f64>,
}

/// Exact I(U;Y1) - I(U;S) from joint-Gaussian log-det algebra.
pub fn costa_rate_analytic(coder: &CostaCoder) -> Result<f64> {
    let params = validate_channel(coder.params, true, false)?;
    let alpha = coder.alpha;
    let gamma = optimal_gamma(params, alpha);
    let sigma = build_sigma(params, CoopSplit::new(alpha, gamma))?;

    let p_priv = alpha * params.p1;
    // S = a*X2 + X1c
    let var_s = params.a * params.a * sigma.s22 + sigma.s11 + 2.0 * params.a * sigma.s12;
    let lambda = coder.lambda;

    let var_u = p_priv + lambda * lambda * var_s;
    if var_u <= 1e-300 {
        // U degenerates to a constant; both informations vanish
        return Ok(0.0);
    }
    let var_y1 = p_priv + var_s + 1.0;
    let cov_uy = p_priv + lambda * var_s;
    let cov_us = lambda * var_s;

    let det_uy = var_u * var_y1 - cov_uy * cov_uy;
    if det_uy <= 0.0 {
        return Err(Error::SingularCovariance);
    }
    let i_uy = 0.5 * (var_u * var_y1 / det_uy).log2();
    let i_us = if var_s <= 1e-300 {
        0.0
    } else {
        let det_us = var_u * var_s - cov_us * cov_us;
        if det_us <= 0.0 {
            return Err(Error::SingularCovariance);
        }
        0.5 * (var_u * var_s / det_us).log2()
    };
    Ok(i_uy - i_us)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-sub-batch seed derivation; sub-batches are independent streams.
fn sub_batch_seed(seed: u64, batch: usize) -> u64 {
    splitmix64(seed ^ splitmix64(batch as u64))
}

/// Boundaries of the sub-batches inside a batch of `n` samples.
pub(crate) fn sub_batch_ranges(n: usize) -> Vec<std::ops::Range<usize>> {
    let base = n / SUB_BATCHES;
    let mut out = Vec::with_capacity(SUB_BATCHES);
    let mut start = 0;
    for i in 0..SUB_BATCHES {
        let len = if i + 1 == SUB_BATCHES { n - start } else { base };
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Draws a seeded batch of channel uses with the cooperative covariance of
/// `split`. Fully determined by `cfg.seed`.
pub fn simulate_batch(
    params: ChannelParams,
    split: CoopSplit,
    cfg: &SimConfig,
) -> Result<SimBatch> {
    let params = validate_channel(params, false, false)?;
    let sigma = build_sigma(params, split)?;
    let n = cfg.n_samples;

    // x1c = (gamma/P2) x2 + w with w making up the residual cooperative power
    let (coupling, resid_sd) = if sigma.s22 > 0.0 {
        let coupling = sigma.s12 / sigma.s22;
        let resid = (sigma.s11 - sigma.s12 * sigma.s12 / sigma.s22).max(0.0);
        (coupling, resid.sqrt())
    } else {
        (0.0, sigma.s11.sqrt())
    };
    let p2_sd = sigma.s22.sqrt();
    let p1p_sd = (split.alpha * params.p1).sqrt();

    let mut batch = SimBatch {
        x1p: Vec::with_capacity(n),
        x1c: Vec::with_capacity(n),
        x2: Vec::with_capacity(n),
        z1: Vec::with_capacity(n),
        z2: Vec::with_capacity(n),
        y1: Vec::with_capacity(n),
        y2: Vec::with_capacity(n),
    };
    for (i, range) in sub_batch_ranges(n).into_iter().enumerate() {
        let mut rng = ChaCha20Rng::seed_from_u64(sub_batch_seed(cfg.seed, i));
        for _ in range {
            let g2: f64 = rng.sample(StandardNormal);
            let gw: f64 = rng.sample(StandardNormal);
            let gp: f64 = rng.sample(StandardNormal);
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            let x2 = p2_sd * g2;
            let x1c = coupling * x2 + resid_sd * gw;
            let x1p = p1p_sd * gp;
            let y1 = x1p + x1c + params.a * x2 + z1;
            let y2 = params.b * (x1p + x1c) + x2 + z2;
            batch.x1p.push(x1p);
            batch.x1c.push(x1c);
            batch.x2.push(x2);
            batch.z1.push(z1);
            batch.z2.push(z2);
            batch.y1.push(y1);
            batch.y2.push(y2);
        }
    }
    Ok(batch)
}

fn mean_prod(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64
}

fn rates_from_slice(params: ChannelParams, batch: &SimBatch, r: std::ops::Range<usize>) -> (f64, f64) {
    let x1p = &batch.x1p[r.clone()];
    let x1c = &batch.x1c[r.clone()];
    let x2 = &batch.x2[r.clone()];
    let z1 = &batch.z1[r];
    let p1p_hat = mean_prod(x1p, x1p);
    let noise_hat = mean_prod(z1, z1);
    let r1 = 0.5 * (1.0 + p1p_hat / noise_hat).log2();
    let sigma_hat = crate::model::Covariance2 {
        s11: mean_prod(x1c, x1c),
        s12: mean_prod(x1c, x2),
        s22: mean_prod(x2, x2),
    };
    let qf = quadratic_form(params, sigma_hat);
    let r2 = 0.5 * (1.0 + qf / (1.0 + params.b * params.b * p1p_hat)).log2();
    (r1, r2)
}

/// Monte-Carlo rate estimates with sub-batch standard errors.
///
/// Receiver 1 applies the Costa identity to the empirical private power;
/// receiver 2 treats the private codeword as Gaussian noise.
pub fn estimate_rates_mc(
    params: ChannelParams,
    split: CoopSplit,
    cfg: &SimConfig,
) -> Result<(SimEstimate, SimEstimate)> {
    cfg.check()?;
    let batch = simulate_batch(params, split, cfg)?;
    let n = cfg.n_samples;
    let (r1, r2) = rates_from_slice(params, &batch, 0..n);
    let subs: Vec<(f64, f64)> = sub_batch_ranges(n)
        .into_iter()
        .map(|r| rates_from_slice(params, &batch, r))
        .collect();
    let stderr = |pick: &dyn Fn(&(f64, f64)) -> f64| {
        let m = subs.iter().map(|s| pick(s)).sum::<f64>() / subs.len() as f64;
        let var = subs
            .iter()
            .map(|s| (pick(s) - m).powi(2))
            .sum::<f64>()
            / (subs.len() - 1) as f64;
        (var / subs.len() as f64).sqrt()
    };
    let est = |rate: f64, se: f64| SimEstimate {
        rate_hat: rate.max(0.0),
        stderr: se,
        n_samples: n,
        seed: cfg.seed,
    };
    Ok((est(r1, stderr(&|s| s.0)), est(r2, stderr(&|s| s.1))))
}

/// One rate check inside a [`VerifyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateCheck {
    pub analytic: f64,
    pub estimate: SimEstimate,
    pub deviation: f64,
    pub pass: bool,
}

/// Outcome of [`verify_point`]: analytic rates, Monte-Carlo rates, the Costa
/// identity residual, and pass/fail at the requested tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: ChannelParams,
    pub alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub tol: f64,
    pub generator: String,
    pub analytic_rates: RatePair,
    pub costa_rate: f64,
    pub costa_residual: f64,
    pub costa_pass: bool,
    pub r1: RateCheck,
    pub r2: RateCheck,
    pub pass: bool,
}

/// Residual threshold for the exact-algebra Costa identity.
pub const COSTA_TOL: f64 = 1e-9;

/// Checks one sweep point both analytically and by simulation. Failures are
/// reported, not raised.
pub fn verify_point(
    params: ChannelParams,
    alpha: f64,
    cfg: &SimConfig,
    tol: f64,
) -> Result<VerifyReport> {
    let params = validate_channel(params, true, false)?;
    cfg.check()?;
    let gamma = optimal_gamma(params, alpha);
    let split = CoopSplit::new(alpha, gamma);
    let analytic = achievable_rates_t1(params, split)?;

    let coder = CostaCoder::capacity_achieving(params, alpha);
    let costa_rate = costa_rate_analytic(&coder)?;
    let costa_residual = (costa_rate - 0.5 * (1.0 + alpha * params.p1).log2()).abs();
    let costa_pass = costa_residual <= COSTA_TOL;

    let (e1, e2) = estimate_rates_mc(params, split, cfg)?;
    let check = |analytic: f64, est: SimEstimate| {
        let deviation = (est.rate_hat - analytic).abs();
        RateCheck {
            analytic,
            estimate: est,
            deviation,
            pass: deviation <= tol,
        }
    };
    let r1 = check(analytic.r1, e1);
    let r2 = check(analytic.r2, e2);
    let pass = costa_pass && r1.pass && r2.pass;
    Ok(VerifyReport {
        params,
        alpha,
        gamma,
        lambda: coder.lambda,
        tol,
        generator: GENERATOR_ID.to_string(),
        analytic_rates: analytic,
        costa_rate,
        costa_residual,
        costa_pass,
        r1,
        r2,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> ChannelParams {
        let g = 0.3f64.sqrt();
        ChannelParams::new(g, g, 6.0, 6.0)
    }

    #[test]
    fn costa_alpha_one_is_single_user_capacity() {
        let coder = CostaCoder::capacity_achieving(fig2(), 1.0);
        let r = costa_rate_analytic(&coder).unwrap();
        assert!((r - 1.4036774610288020).abs() < 1e-12);
    }

    #[test]
    fn costa_alpha_zero_is_zero() {
        let coder = CostaCoder::capacity_achieving(fig2(), 0.0);
        assert_eq!(costa_rate_analytic(&coder).unwrap(), 0.0);
    }

    #[test]
    fn costa_alpha_half_lambda_and_rate() {
        let coder = CostaCoder::capacity_achieving(fig2(), 0.5);
        assert!((coder.lambda - 0.75).abs() < 1e-15);
        // 1/2 log2(1 + 3) exactly
        assert!((costa_rate_analytic(&coder).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn costa_identity_random_channels() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..100 {
            let params = ChannelParams::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.01..20.0),
                rng.gen_range(0.01..20.0),
            );
            let alpha = rng.gen_range(0.0..1.0);
            let coder = CostaCoder::capacity_achieving(params, alpha);
            let r = costa_rate_analytic(&coder).unwrap();
            let target = 0.5 * (1.0 + alpha * params.p1).log2();
            assert!((r - target).abs() <= 1e-9, "residual at {params:?} {alpha}");
        }
    }

    #[test]
    fn batch_deterministic_and_channel_exact() {
        let cfg = SimConfig::new(5000, 42);
        let split = CoopSplit::new(0.5, optimal_gamma(fig2(), 0.5));
        let a = simulate_batch(fig2(), split, &cfg).unwrap();
        let b = simulate_batch(fig2(), split, &cfg).unwrap();
        assert_eq!(a, b);
        let p = fig2();
        for i in 0..a.x1p.len() {
            let y1 = a.x1p[i] + a.x1c[i] + p.a * a.x2[i] + a.z1[i];
            let y2 = p.b * (a.x1p[i] + a.x1c[i]) + a.x2[i] + a.z2[i];
            assert_eq!(a.y1[i], y1);
            assert_eq!(a.y2[i], y2);
        }
    }

    #[test]
    fn batch_zero_p2_silences_x2() {
        let p = ChannelParams::new(0.2, 0.2, 6.0, 0.0);
        let cfg = SimConfig::new(2000, 1);
        let b = simulate_batch(p, CoopSplit::new(0.5, 0.0), &cfg).unwrap();
        assert!(b.x2.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn batch_sample_covariance_matches_sigma() {
        let cfg = SimConfig::new(1_000_000, 42);
        let split = CoopSplit::new(0.5, optimal_gamma(fig2(), 0.5));
        let sigma = build_sigma(fig2(), split).unwrap();
        let b = simulate_batch(fig2(), split, &cfg).unwrap();
        let n = cfg.n_samples as f64;
        let s11 = mean_prod(&b.x1c, &b.x1c);
        let s12 = mean_prod(&b.x1c, &b.x2);
        let s22 = mean_prod(&b.x2, &b.x2);
        // var of a second moment of a Gaussian is 2 sigma^2 / n
        let se = |s: f64| (2.0 * s * s / n).sqrt();
        assert!((s11 - sigma.s11).abs() < 5.0 * se(sigma.s11).max(1e-3));
        assert!((s12 - sigma.s12).abs() < 5.0 * se(sigma.s12.abs()).max(1e-3));
        assert!((s22 - sigma.s22).abs() < 5.0 * se(sigma.s22));
    }

    #[test]
    fn estimate_rejects_small_batches() {
        let cfg = SimConfig::new(100, 1);
        assert!(matches!(
            estimate_rates_mc(fig2(), CoopSplit::new(0.5, 0.0), &cfg),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn estimate_zero_power_is_exact_zero() {
        let p = ChannelParams::new(0.1, 0.1, 0.0, 0.0);
        let cfg = SimConfig::new(2000, 3);
        let (r1, r2) = estimate_rates_mc(p, CoopSplit::new(0.5, 0.0), &cfg).unwrap();
        assert_eq!(r1.rate_hat, 0.0);
        assert_eq!(r2.rate_hat, 0.0);
    }

    #[test]
    fn estimate_tracks_analytic_rates() {
        let cfg = SimConfig::new(1_000_000, 7);
        let split = CoopSplit::new(0.5, optimal_gamma(fig2(), 0.5));
        let analytic = achievable_rates_t1(fig2(), split).unwrap();
        let (e1, e2) = estimate_rates_mc(fig2(), split, &cfg).unwrap();
        assert!((e1.rate_hat - 1.0).abs() < 0.02, "{e1:?}");
        assert!((e2.rate_hat - analytic.r2).abs() < 0.02, "{e2:?}");
    }

    #[test]
    fn verify_point_reports() {
        let cfg = SimConfig::new(100_000, 5);
        let report = verify_point(fig2(), 1.0, &cfg, 0.02).unwrap();
        assert!(report.costa_pass);
        assert!((report.r2.analytic - 0.8260383482898466).abs() < 1e-12);
        assert!(report.pass, "{report:?}");

        // statistical noise exceeds an analytic-scale tolerance
        let tight = verify_point(fig2(), 0.5, &SimConfig::new(1000, 5), 1e-9).unwrap();
        assert!(tight.costa_pass);
        assert!(!tight.r1.pass || !tight.r2.pass);

        let strong = ChannelParams::new(0.2, 1.2, 6.0, 6.0);
        assert!(matches!(
            verify_point(strong, 0.5, &cfg, 0.02),
            Err(Error::NotWeakInterference { .. })
        ));
    }
}
