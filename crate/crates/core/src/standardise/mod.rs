//! Per-variable standardisation: linear scale statistics (plain and pooled
//! within-class) and the boxplot transformation.

mod boxplot;
mod quantile;
mod scale;

pub use boxplot::{
    apply_boxplot, fit_boxplot, solve_tail_exponent, BoxplotParams, BoxplotVariable,
};
pub use quantile::{median, quantile, quantile_sorted};
pub use scale::{scale_statistic, standardise_matrix, ScaleFit, StandardisationMethod, Standardised};

use serde::{Deserialize, Serialize};

use crate::data::{DataMatrix, LabelVector};
use crate::error::Result;

/// A standardisation fitted on training data, ready to transform that data
/// and later observations. Serialises to JSON so a fit can be persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FittedStandardisation {
    Linear(ScaleFit),
    Boxplot(BoxplotParams),
}

impl FittedStandardisation {
    /// Fits `method` on `train`. Only the training data (and, for pooled
    /// methods, its labels) enter the fitted parameters.
    pub fn fit(
        train: &DataMatrix,
        method: StandardisationMethod,
        labels: Option<&LabelVector>,
    ) -> Result<Self> {
        Ok(match method {
            StandardisationMethod::Boxplot => Self::Boxplot(fit_boxplot(train)?),
            _ => Self::Linear(ScaleFit::fit(train, method, labels)?),
        })
    }

    pub fn method(&self) -> StandardisationMethod {
        match self {
            Self::Linear(fit) => fit.method,
            Self::Boxplot(_) => StandardisationMethod::Boxplot,
        }
    }

    /// Transforms the data the fit was computed on.
    pub fn apply_training(&self, x: &DataMatrix) -> Result<DataMatrix> {
        match self {
            Self::Linear(fit) => fit.apply(x),
            Self::Boxplot(params) => apply_boxplot(x, params, false),
        }
    }

    /// Transforms new observations; boxplot output is capped to `[-2, 2]`.
    pub fn apply_new(&self, x: &DataMatrix) -> Result<DataMatrix> {
        match self {
            Self::Linear(fit) => fit.apply(x),
            Self::Boxplot(params) => apply_boxplot(x, params, true),
        }
    }

    /// Variables mapped to all-zero because their scale is zero.
    pub fn constant_variables(&self) -> Vec<usize> {
        match self {
            Self::Linear(fit) => fit.zero_scale_variables(),
            Self::Boxplot(params) => params.degenerate_variables(),
        }
    }
}
