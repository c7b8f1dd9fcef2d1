//! Boxplot transformation.
//!
//! Each variable is centred at its median and the two halves are scaled
//! separately so that the first and third quartiles land on `-0.5` and `0.5`.
//! If a half still contains boxplot outliers (scaled values beyond `-2` or
//! `2`, which is the asymmetric `3 * LQR` / `3 * UQR` fence in these
//! coordinates), the tail beyond the quartile is compressed by
//!
//! ```text
//! x -> -0.5 - (1 - (y + 1)^(-t)) / t,    y = -x - 0.5
//! ```
//!
//! (mirrored for the upper tail), with `t` chosen so the training extreme
//! maps to exactly `-2`. At `x = -0.5` the map has value `-0.5` and slope 1.
//! The family is continued through `t = 0` by its limit
//! `-0.5 - ln(y + 1)`, which covers extremes whose `ln(y + 1) < 1.5` where
//! only negative exponents solve the equation.
//!
//! New observations are transformed with the training parameters and capped
//! to `[-2, 2]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quantile::quantile_sorted;
use crate::data::DataMatrix;
use crate::error::{Error, Result};

/// Distance of the compressed quartile-to-extreme span: the extreme goes to
/// `0.5 + TAIL_SPAN` away from the median.
const TAIL_SPAN: f64 = 1.5;
const SOLVER_MAX_ITER: usize = 200;

/// Fitted transform of a single variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotVariable {
    pub median: f64,
    /// median minus first quartile
    pub lqr: f64,
    /// third quartile minus median
    pub uqr: f64,
    pub t_lower: Option<f64>,
    pub t_upper: Option<f64>,
    pub train_min: f64,
    pub train_max: f64,
    /// Both quartile ranges are zero; the variable maps to 0.
    pub degenerate: bool,
}

/// Per-variable parameters of a fitted boxplot transformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotParams {
    pub variables: Vec<BoxplotVariable>,
}

impl BoxplotVariable {
    /// Scale of the lower and upper half. A zero quartile range borrows the
    /// other half's.
    fn half_scales(&self) -> Option<(f64, f64)> {
        match (self.lqr > 0.0, self.uqr > 0.0) {
            (true, true) => Some((self.lqr, self.uqr)),
            (false, true) => Some((self.uqr, self.uqr)),
            (true, false) => Some((self.lqr, self.lqr)),
            (false, false) => None,
        }
    }

    fn fit(column: &[f64]) -> Result<Self> {
        if column.len() < 2 {
            return Err(Error::usage("boxplot transformation needs n >= 2"));
        }
        let mut sorted = column.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = quantile_sorted(&sorted, 0.5)?;
        let q1 = quantile_sorted(&sorted, 0.25)?;
        let q3 = quantile_sorted(&sorted, 0.75)?;
        let mut var = BoxplotVariable {
            median,
            lqr: median - q1,
            uqr: q3 - median,
            t_lower: None,
            t_upper: None,
            train_min: sorted[0],
            train_max: sorted[sorted.len() - 1],
            degenerate: false,
        };
        let Some((lower, upper)) = var.half_scales() else {
            var.degenerate = true;
            return Ok(var);
        };
        let scaled_min = (var.train_min - median) / (2.0 * lower);
        if scaled_min < -2.0 {
            var.t_lower = Some(solve_for_log_extent((-scaled_min - 0.5).ln_1p())?);
        }
        let scaled_max = (var.train_max - median) / (2.0 * upper);
        if scaled_max > 2.0 {
            var.t_upper = Some(solve_for_log_extent((scaled_max - 0.5).ln_1p())?);
        }
        Ok(var)
    }

    /// Median-centred, half-scaled coordinate before tail compression.
    pub fn scaled(&self, x: f64) -> f64 {
        let Some((lower, upper)) = self.half_scales() else {
            return 0.0;
        };
        let centred = x - self.median;
        if centred < 0.0 {
            centred / (2.0 * lower)
        } else if centred > 0.0 {
            centred / (2.0 * upper)
        } else {
            0.0
        }
    }

    pub fn transform(&self, x: f64, cap: bool) -> f64 {
        if self.degenerate {
            return 0.0;
        }
        let mut z = self.scaled(x);
        if z < -0.5 {
            if let Some(t) = self.t_lower {
                z = -0.5 - tail_compression(t, (-z - 0.5).ln_1p());
            }
        } else if z > 0.5 {
            if let Some(t) = self.t_upper {
                z = 0.5 + tail_compression(t, (z - 0.5).ln_1p());
            }
        }
        if cap {
            z.clamp(-2.0, 2.0)
        } else {
            z
        }
    }
}

/// `(1 - exp(-t * log_extent)) / t`, with its limit `log_extent` at `t = 0`.
///
/// This is the distance beyond the quartile that a point `y` past it is
/// mapped to, where `log_extent = ln(1 + y)`.
pub(crate) fn tail_compression(t: f64, log_extent: f64) -> f64 {
    let a = t * log_extent;
    if a.abs() < 1e-8 {
        log_extent * (1.0 - a / 2.0 + a * a / 6.0)
    } else {
        -(-a).exp_m1() / t
    }
}

/// Tail exponent `t` with `(1 - m^(-t)) / t = 1.5`, given `ln m`.
///
/// Returns the root bracket end on the side where the left-hand side is at
/// most 1.5, so the training extreme never maps beyond the `[-2, 2]` band.
fn solve_for_log_extent(log_m: f64) -> Result<f64> {
    if !(log_m > 0.0 && log_m.is_finite()) {
        return Err(Error::Domain(format!(
            "tail exponent needs ln(M) > 0 and finite, got {log_m}"
        )));
    }
    // decreasing in t
    let excess = |t: f64| tail_compression(t, log_m) - TAIL_SPAN;
    let at_zero = excess(0.0);
    if at_zero == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = if at_zero > 0.0 {
        let (mut lo, mut hi) = (0.0, 1.0);
        while excess(hi) > 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        (lo, hi)
    } else {
        let (mut lo, mut hi) = (-1.0, 0.0);
        while excess(lo) <= 0.0 {
            hi = lo;
            lo *= 2.0;
        }
        (lo, hi)
    };
    // bisect until the bracket has no representable midpoint
    for _ in 0..SOLVER_MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Solves `(1 - m^(-t)) / t = 1.5` for the tail exponent, `m > 1`.
///
/// `m` is the training extreme's distance from the quartile in scaled units
/// plus one, i.e. `-min(X*) + 0.5` for the lower tail. The solution is
/// positive for `ln m > 1.5`, zero at equality and negative below.
pub fn solve_tail_exponent(m: f64) -> Result<f64> {
    if m <= 1.0 || !m.is_finite() {
        return Err(Error::Domain(format!("tail exponent needs M > 1, got {m}")));
    }
    solve_for_log_extent(m.ln())
}

/// Fits the boxplot transformation on training data.
pub fn fit_boxplot(x: &DataMatrix) -> Result<BoxplotParams> {
    let variables = (0..x.n_cols())
        .into_par_iter()
        .map(|j| BoxplotVariable::fit(x.column(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoxplotParams { variables })
}

/// Applies a fitted boxplot transformation. Use `cap = false` for the
/// training data the parameters were fitted on and `cap = true` for new
/// observations.
pub fn apply_boxplot(x: &DataMatrix, params: &BoxplotParams, cap: bool) -> Result<DataMatrix> {
    if x.n_cols() != params.variables.len() {
        return Err(Error::usage(format!(
            "matrix has {} variables, boxplot parameters have {}",
            x.n_cols(),
            params.variables.len()
        )));
    }
    let columns: Vec<Vec<f64>> = x
        .columns()
        .zip(&params.variables)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(col, var)| col.iter().map(|&v| var.transform(v, cap)).collect())
        .collect();
    DataMatrix::from_column_vecs(columns, x.n_rows())
}

impl BoxplotParams {
    /// Variables that are constant between the quartiles and map to 0.
    pub fn degenerate_variables(&self) -> Vec<usize> {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.degenerate)
            .map(|(j, _)| j)
            .collect()
    }
}
