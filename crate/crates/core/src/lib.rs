//! Classification and numerical verification of planar cubic vector fields
//! with an invariant octothorpe — the replicator dynamics of two players with
//! two strategies each.
//!
//! The pipeline: build a [`replicator::RawSystem`] from payoff data, translate
//! it to the octothorpe-centered [`canonical::CanonicalSystem`], gate on the
//! necessary genericity condition, normalize to a representative family,
//! classify against the case tables, and verify numerically by integration,
//! separatrix tracing and return-map cycle detection.

pub mod algebra;
pub mod canonical;
pub mod compactification;
pub mod error;
pub mod genericity;
pub mod par;
pub mod classifier;
pub mod portrait;
pub mod replicator;
pub mod singularities;

pub use error::{Error, Result};
