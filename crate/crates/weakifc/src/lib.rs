//! Rate regions for the two-user Gaussian weak interference channel in which
//! one transmitter knows both messages.
//!
//! The crate computes the Gaussian-input capacity regions of the cooperative
//! channel for either informed transmitter, classical comparison bounds
//! (strong-interference capacity, Kramer's outer bound) and their
//! intersection, and verifies the dirty-paper-coding achievability both by
//! exact covariance algebra and by seeded Monte-Carlo simulation.
//!
//! All rates are in bits per channel use; noise variances are normalized
//! to 1.

pub mod bounds;
pub mod dpc;
pub mod error;
pub mod geometry;
pub mod model;
pub mod regions;

pub use error::{Error, Result};
pub use geometry::{ConvexRegion, Halfspace, HalfspaceSet, Point2};
pub use model::{ChannelParams, CoopSplit, Covariance2, RatePair};
pub use regions::{InformedTx, RegionSpec, TradeoffQuery};
