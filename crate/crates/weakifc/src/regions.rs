//! Gaussian-input capacity regions of the weak interference channel with one
//! fully informed transmitter: achievable rate pairs along the power-split
//! sweep, the optimal cross-covariance, full region construction by sweep +
//! hull, and the scalarized boundary optimization.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{convex_hull, ConvexRegion, Point2};
use crate::model::{
    build_sigma, mi_gaussian_scalar, quadratic_form, validate_channel, ChannelParams, CoopSplit,
    RatePair,
};

/// Which transmitter knows both messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InformedTx {
    T1,
    T2,
}

/// Parameters of a region construction: channel, informed side and the
/// resolution of the power-split sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub params: ChannelParams,
    pub informed_tx: InformedTx,
    pub n_alpha: usize,
}

impl RegionSpec {
    pub fn new(params: ChannelParams, informed_tx: InformedTx, n_alpha: usize) -> Self {
        assert!(n_alpha >= 2, "n_alpha must be at least 2");
        Self {
            params,
            informed_tx,
            n_alpha,
        }
    }
}

/// Weight on R2 in the boundary scalarization `sup R1 + mu*R2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffQuery {
    pub mu: f64,
}

impl TradeoffQuery {
    pub fn new(mu: f64) -> Self {
        assert!(mu >= 0.0 && mu.is_finite(), "mu must be finite and >= 0");
        Self { mu }
    }
}

/// Achievable rate pair when T1 knows both messages:
/// `R1 = 1/2 log2(1 + alpha*P1)`,
/// `R2 = 1/2 log2(1 + h Sigma h^t / (1 + b^2 alpha P1))`.
pub fn achievable_rates_t1(params: ChannelParams, split: CoopSplit) -> Result<RatePair> {
    let params = validate_channel(params, true, false)?;
    let sigma = build_sigma(params, split)?;
    let r1 = mi_gaussian_scalar(split.alpha * params.p1, 1.0)?;
    let r2 = mi_gaussian_scalar(
        quadratic_form(params, sigma),
        1.0 + params.b * params.b * split.alpha * params.p1,
    )?;
    Ok(RatePair::new(r1, r2))
}

/// The R2-maximizing cross-covariance `sign(b) * sqrt((1-alpha) P1 P2)`.
///
/// The sign follows b so the cross term `2 b gamma` is always constructive;
/// for b = 0 the positive root is returned (R2 is then gamma-independent).
pub fn optimal_gamma(params: ChannelParams, alpha: f64) -> f64 {
    let magnitude = ((1.0 - alpha) * params.p1 * params.p2).max(0.0).sqrt();
    if params.b < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

fn sweep_t1(params: ChannelParams, n_alpha: usize) -> Result<Vec<(f64, RatePair)>> {
    let mut out = Vec::with_capacity(n_alpha);
    for i in 0..n_alpha {
        let alpha = i as f64 / (n_alpha - 1) as f64;
        let gamma = optimal_gamma(params, alpha);
        let rates = achievable_rates_t1(params, CoopSplit::new(alpha, gamma))?;
        out.push((alpha, rates));
    }
    Ok(out)
}

/// The T1-informed Gaussian-input capacity region: sweep alpha with the
/// optimal gamma, anchor the axes, and hull.
pub fn region_boundary_t1(spec: &RegionSpec) -> Result<ConvexRegion> {
    assert_eq!(spec.informed_tx, InformedTx::T1);
    let swept = sweep_t1(spec.params, spec.n_alpha)?;
    let mut pts: Vec<Point2> = swept.iter().map(|(_, r)| Point2::new(r.r1, r.r2)).collect();
    let r1_max = swept.last().unwrap().1.r1;
    let r2_max = swept.first().unwrap().1.r2;
    pts.push(Point2::new(r1_max, 0.0));
    pts.push(Point2::new(0.0, r2_max));
    pts.push(Point2::new(0.0, 0.0));
    convex_hull(&pts)
}

/// The T2-informed region of the swapped channel, mirrored back into the
/// (R1, R2) plane.
pub fn region_boundary_t2(spec: &RegionSpec) -> Result<ConvexRegion> {
    assert_eq!(spec.informed_tx, InformedTx::T2);
    validate_channel(spec.params, false, true)?;
    let swapped = RegionSpec::new(spec.params.swapped(), InformedTx::T1, spec.n_alpha);
    let region = region_boundary_t1(&swapped)?;
    let mirrored: Vec<Point2> = region
        .vertices
        .iter()
        .map(|p| Point2::new(p.y, p.x))
        .collect();
    convex_hull(&mirrored)
}

/// The swept (alpha, R1, R2) triples backing a region, for CSV export.
pub fn sweep_points(spec: &RegionSpec) -> Result<Vec<(f64, RatePair)>> {
    match spec.informed_tx {
        InformedTx::T1 => sweep_t1(spec.params, spec.n_alpha),
        InformedTx::T2 => {
            validate_channel(spec.params, false, true)?;
            let swept = sweep_t1(spec.params.swapped(), spec.n_alpha)?;
            Ok(swept
                .into_iter()
                .map(|(beta, r)| (beta, RatePair::new(r.r2, r.r1)))
                .collect())
        }
    }
}

const SCALARIZE_COARSE: usize = 256;
const SCALARIZE_INTERVAL: f64 = 1e-8;

/// Maximizes `R1(alpha) + mu * R2(alpha)` over the split, with gamma optimal.
///
/// Coarse 256-point grid followed by golden-section refinement down to an
/// interval of 1e-8 in alpha; ties break toward smaller alpha.
pub fn scalarized_boundary(
    params: ChannelParams,
    q: TradeoffQuery,
) -> Result<(f64, f64, RatePair)> {
    let params = validate_channel(params, true, false)?;
    let eval = |alpha: f64| -> Result<(f64, RatePair)> {
        let rates = achievable_rates_t1(
            params,
            CoopSplit::new(alpha, optimal_gamma(params, alpha)),
        )?;
        Ok((rates.r1 + q.mu * rates.r2, rates))
    };

    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..SCALARIZE_COARSE {
        let alpha = i as f64 / (SCALARIZE_COARSE - 1) as f64;
        let (v, _) = eval(alpha)?;
        if v > best_v + 1e-15 {
            best_v = v;
            best_i = i;
        }
    }
    let step = 1.0 / (SCALARIZE_COARSE - 1) as f64;
    let mut lo = (best_i as f64 * step - step).max(0.0);
    let mut hi = (best_i as f64 * step + step).min(1.0);

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1)?.0;
    let mut f2 = eval(x2)?.0;
    while hi - lo > SCALARIZE_INTERVAL {
        // ties move toward smaller alpha
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1)?.0;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2)?.0;
        }
    }
    let alpha_star = 0.5 * (lo + hi);
    let (value, rates) = eval(alpha_star)?;
    // the refined point can only improve on the coarse grid
    if value < best_v {
        let alpha = best_i as f64 * step;
        let (v, r) = eval(alpha)?;
        return Ok((alpha, v, r));
    }
    Ok((alpha_star, value, rates))
}
