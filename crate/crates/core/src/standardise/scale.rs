use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quantile::median;
use crate::data::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// Per-variable standardisation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardisationMethod {
    None,
    UnitVariance,
    Mad,
    Range,
    PooledVariance,
    PooledMadWeights,
    PooledMadShift,
    PooledRangeWeights,
    PooledRangeShift,
    Boxplot,
}

impl StandardisationMethod {
    pub const ALL: [StandardisationMethod; 10] = [
        Self::None,
        Self::UnitVariance,
        Self::Mad,
        Self::Range,
        Self::PooledVariance,
        Self::PooledMadWeights,
        Self::PooledMadShift,
        Self::PooledRangeWeights,
        Self::PooledRangeShift,
        Self::Boxplot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::UnitVariance => "unit_variance",
            Self::Mad => "mad",
            Self::Range => "range",
            Self::PooledVariance => "pooled_variance",
            Self::PooledMadWeights => "pooled_mad_weights",
            Self::PooledMadShift => "pooled_mad_shift",
            Self::PooledRangeWeights => "pooled_range_weights",
            Self::PooledRangeShift => "pooled_range_shift",
            Self::Boxplot => "boxplot",
        }
    }

    /// Whether the scale statistic needs class labels.
    pub fn is_pooled(self) -> bool {
        matches!(
            self,
            Self::PooledVariance
                | Self::PooledMadWeights
                | Self::PooledMadShift
                | Self::PooledRangeWeights
                | Self::PooledRangeShift
        )
    }

    /// Smallest class size the pooled statistic is defined for.
    fn min_class_size(self) -> usize {
        match self {
            Self::PooledVariance => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for StandardisationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StandardisationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .or(match key.as_str() {
                // short names used in the literature's figure legends
                "sd" | "variance" => Some(Self::UnitVariance),
                "pvar" => Some(Self::PooledVariance),
                "pm1" => Some(Self::PooledMadWeights),
                "pm2" => Some(Self::PooledMadShift),
                "pr1" => Some(Self::PooledRangeWeights),
                "pr2" => Some(Self::PooledRangeShift),
                _ => None,
            })
            .ok_or_else(|| Error::usage(format!("unknown standardisation {s:?}")))
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sum_sq_dev(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum()
}

fn mad(values: &[f64]) -> f64 {
    // inputs are non-empty here, so median cannot fail
    let med = median(values).expect("non-empty");
    let dev: Vec<f64> = values.iter().map(|v| (v - med).abs()).collect();
    median(&dev).expect("non-empty")
}

fn range(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

/// Splits a column into per-class samples, in class order `1..=k`.
fn split_by_class(column: &[f64], labels: &LabelVector) -> Vec<Vec<f64>> {
    let mut groups = vec![Vec::new(); labels.k() as usize];
    for (&v, &l) in column.iter().zip(labels.as_slice()) {
        groups[l as usize - 1].push(v);
    }
    groups
}

#[cfg(test)]
/// Sum over classes of squared deviations from the class mean.
pub(crate) fn pooled_sum_of_squares(column: &[f64], labels: &LabelVector) -> f64 {
    split_by_class(column, labels)
        .iter()
        .map(|g| sum_sq_dev(g))
        .sum()
}

/// Scale statistic of one variable.
///
/// `unit_variance` returns the sample standard deviation (denominator
/// `n - 1`) and `pooled_variance` the square root of the pooled within-class
/// variance. MADs carry no consistency factor. `none` returns 1.
pub fn scale_statistic(
    column: &[f64],
    method: StandardisationMethod,
    labels: Option<&LabelVector>,
) -> Result<f64> {
    use StandardisationMethod as M;
    if column.len() < 2 {
        return Err(Error::usage(format!(
            "scale statistic needs at least 2 values, got {}",
            column.len()
        )));
    }
    let groups = if method.is_pooled() {
        let labels = labels.ok_or_else(|| {
            Error::usage(format!("{method} standardisation requires class labels"))
        })?;
        if labels.len() != column.len() {
            return Err(Error::usage(format!(
                "{} labels for a variable of {} values",
                labels.len(),
                column.len()
            )));
        }
        let groups = split_by_class(column, labels);
        let required = method.min_class_size();
        if let Some((l, g)) = groups.iter().enumerate().find(|(_, g)| g.len() < required) {
            return Err(Error::DegenerateClass {
                class: l as u32 + 1,
                size: g.len(),
                required,
            });
        }
        groups
    } else {
        Vec::new()
    };
    let n = column.len() as f64;

    let s = match method {
        M::None => 1.0,
        M::UnitVariance => (sum_sq_dev(column) / (n - 1.0)).sqrt(),
        M::Mad => mad(column),
        M::Range => range(column),
        M::PooledVariance => {
            let dof: usize = groups.iter().map(|g| g.len() - 1).sum();
            let ss: f64 = groups.iter().map(|g| sum_sq_dev(g)).sum();
            (ss / dof as f64).sqrt()
        }
        M::PooledMadWeights => groups.iter().map(|g| g.len() as f64 * mad(g)).sum::<f64>() / n,
        M::PooledRangeWeights => {
            groups.iter().map(|g| g.len() as f64 * range(g)).sum::<f64>() / n
        }
        M::PooledMadShift => {
            let labels = labels.expect("checked above");
            let medians: Vec<f64> = groups.iter().map(|g| median(g).expect("non-empty")).collect();
            let shifted: Vec<f64> = column
                .iter()
                .zip(labels.as_slice())
                .map(|(v, &l)| (v - medians[l as usize - 1]).abs())
                .collect();
            median(&shifted)?
        }
        M::PooledRangeShift => groups.iter().map(|g| range(g)).fold(0.0, f64::max),
        M::Boxplot => {
            return Err(Error::usage(
                "boxplot is not a linear scale statistic; use fit_boxplot",
            ))
        }
    };
    Ok(s)
}

/// Fitted per-variable scale statistics of a linear standardisation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleFit {
    pub method: StandardisationMethod,
    pub scales: Vec<f64>,
}

impl ScaleFit {
    pub fn fit(
        x: &DataMatrix,
        method: StandardisationMethod,
        labels: Option<&LabelVector>,
    ) -> Result<Self> {
        if method == StandardisationMethod::Boxplot {
            return Err(Error::usage(
                "boxplot has its own fit/apply pair (fit_boxplot / apply_boxplot)",
            ));
        }
        if let Some(l) = labels {
            if l.len() != x.n_rows() {
                return Err(Error::usage(format!(
                    "{} labels for {} observations",
                    l.len(),
                    x.n_rows()
                )));
            }
        }
        let scales = (0..x.n_cols())
            .into_par_iter()
            .map(|j| scale_statistic(x.column(j), method, labels))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { method, scales })
    }

    /// Variables whose scale statistic is zero; they standardise to all-zero.
    pub fn zero_scale_variables(&self) -> Vec<usize> {
        self.scales
            .iter()
            .enumerate()
            .filter(|(_, s)| !is_usable_scale(**s))
            .map(|(j, _)| j)
            .collect()
    }

    pub fn apply(&self, x: &DataMatrix) -> Result<DataMatrix> {
        if x.n_cols() != self.scales.len() {
            return Err(Error::usage(format!(
                "matrix has {} variables, fit has {}",
                x.n_cols(),
                self.scales.len()
            )));
        }
        if self.method == StandardisationMethod::None {
            return Ok(x.clone());
        }
        let columns: Vec<Vec<f64>> = x
            .columns()
            .zip(&self.scales)
            .map(|(col, &s)| {
                if is_usable_scale(s) {
                    col.iter().map(|v| v / s).collect()
                } else {
                    vec![0.0; col.len()]
                }
            })
            .collect();
        DataMatrix::from_column_vecs(columns, x.n_rows())
    }
}

fn is_usable_scale(s: f64) -> bool {
    s > 0.0 && s.is_finite()
}

/// Result of [`standardise_matrix`]: the data and the variables that were
/// constant under the chosen statistic (set to zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Standardised {
    pub data: DataMatrix,
    pub zero_scale: Vec<usize>,
}

/// Divides every variable by its scale statistic; location is left alone
/// because only coordinate differences enter the distances.
pub fn standardise_matrix(
    x: &DataMatrix,
    method: StandardisationMethod,
    labels: Option<&LabelVector>,
) -> Result<Standardised> {
    let fit = ScaleFit::fit(x, method, labels)?;
    Ok(Standardised {
        data: fit.apply(x)?,
        zero_scale: fit.zero_scale_variables(),
    })
}
