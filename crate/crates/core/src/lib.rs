//! Exact tools for finite point configurations: rigidity of bar-joint
//! frameworks, congruence classes of labelled tuples, and censuses of
//! graph-distance sets, pinned distances and distance energy.
//!
//! Every count is computed with exact rational arithmetic. Floating point
//! appears only in the canonical-form triangular factor, unsquared distance
//! vectors and the fitted exponents of sweeps.

pub mod census;
pub mod congruence;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod rigidity;
pub mod sweep;

pub use census::{CensusOptions, CensusReport, Energy, PinReport};
pub use congruence::{CanonicalForm, CongruenceReport, Group};
pub use error::{Error, Result};
pub use geometry::{ConfigTuple, Point, PointSet};
pub use graph::Graph;
pub use rigidity::{GenericClass, RigidityReport};
