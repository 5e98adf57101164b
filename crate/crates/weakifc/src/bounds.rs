//! Classical comparison regions: the strong-interference capacity polytope,
//! Kramer's genie-aided outer bound, and the two-sided cooperative
//! intersection bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{intersect_regions, ConvexRegion, Halfspace, HalfspaceSet};
use crate::model::{validate_channel, ChannelParams, RatePair};
use crate::regions::{region_boundary_t1, region_boundary_t2, InformedTx, RegionSpec};

/// Selector over the comparison bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    StrongInterference,
    KramerOuter,
    IntersectionT1T2,
}

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

/// Capacity polytope under strong interference (a^2 >= 1 and b^2 >= 1).
pub fn strong_interference_region(params: ChannelParams) -> Result<HalfspaceSet> {
    let params = validate_channel(params, false, false)?;
    let (a_sq, b_sq) = (params.a * params.a, params.b * params.b);
    if a_sq < 1.0 || b_sq < 1.0 {
        return Err(Error::NotStrongInterference { a_sq, b_sq });
    }
    Ok(HalfspaceSet::new(vec![
        Halfspace::new(1.0, 0.0, half_log2(1.0 + params.p1)),
        Halfspace::new(0.0, 1.0, half_log2(1.0 + params.p2)),
        Halfspace::new(1.0, 1.0, half_log2(params.p1 + a_sq * params.p2 + 1.0)),
        Halfspace::new(1.0, 1.0, half_log2(b_sq * params.p1 + params.p2 + 1.0)),
    ]))
}

/// Kramer's outer bound: individual rate constraints plus two genie-aided
/// sum-rate constraints.
pub fn kramer_outer(params: ChannelParams) -> Result<HalfspaceSet> {
    let params = validate_channel(params, false, false)?;
    let (a_sq, b_sq) = (params.a * params.a, params.b * params.b);
    let sum_a = half_log2(
        (params.p1 + a_sq * params.p2 + 1.0) * (params.p2 + 1.0)
            / (a_sq.min(1.0) * params.p2 + 1.0),
    );
    let sum_b = half_log2(
        (params.p2 + b_sq * params.p1 + 1.0) * (params.p1 + 1.0)
            / (b_sq.min(1.0) * params.p1 + 1.0),
    );
    Ok(HalfspaceSet::new(vec![
        Halfspace::new(1.0, 0.0, half_log2(1.0 + params.p1)),
        Halfspace::new(0.0, 1.0, half_log2(1.0 + params.p2)),
        Halfspace::new(1.0, 1.0, sum_a),
        Halfspace::new(1.0, 1.0, sum_b),
    ]))
}

/// Intersection of the two single-informed-transmitter capacity regions,
/// valid only when both cross gains are weak.
pub fn intersection_outer(params: ChannelParams, n_alpha: usize) -> Result<ConvexRegion> {
    let params = validate_channel(params, true, true)?;
    let t1 = region_boundary_t1(&RegionSpec::new(params, InformedTx::T1, n_alpha))?;
    let t2 = region_boundary_t2(&RegionSpec::new(params, InformedTx::T2, n_alpha))?;
    Ok(intersect_regions(&t1, &t2))
}

/// The two frontier corner points where the cooperative regions meet
/// Kramer's bound: A from the T1 region at full private power, B its
/// swapped analog.
pub fn corner_points(params: ChannelParams) -> Result<(RatePair, RatePair)> {
    let params = validate_channel(params, true, true)?;
    let (a_sq, b_sq) = (params.a * params.a, params.b * params.b);
    let a = RatePair::new(
        half_log2(1.0 + params.p1),
        half_log2((1.0 + b_sq * params.p1 + params.p2) / (1.0 + b_sq * params.p1)),
    );
    let b = RatePair::new(
        half_log2((1.0 + a_sq * params.p2 + params.p1) / (1.0 + a_sq * params.p2)),
        half_log2(1.0 + params.p2),
    );
    Ok((a, b))
}
