//! Standardisation, Minkowski aggregation and distance-based learning for
//! high-dimensional, low-sample-size data, with a simulation harness for
//! comparing the combinations.

pub mod data;
pub mod distance;
pub mod error;
pub mod evaluate;
pub mod harness;
pub mod io;
pub mod learn;
pub mod simgen;
pub mod standardise;

pub use data::{CondensedDistanceMatrix, CrossDistanceMatrix, DataMatrix, LabelVector};
pub use distance::AggregationOrder;
pub use error::{Error, Result};
pub use standardise::{FittedStandardisation, StandardisationMethod};
