//! Distance-based learners: PAM, hierarchical linkage and k-nearest neighbours.

mod knn;
mod linkage;
mod pam;

pub use knn::knn_classify;
pub use linkage::{cut_tree, linkage, Dendrogram, LinkageMethod, Merge};
pub use pam::{medoid_objective, pam};

use crate::data::LabelVector;

/// A partition of `n` objects into `k` nonempty clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub labels: LabelVector,
    /// Medoid object indices in ascending order (PAM only).
    pub medoids: Option<Vec<usize>>,
    /// Total distance to the nearest medoid (PAM only).
    pub objective: Option<f64>,
}
