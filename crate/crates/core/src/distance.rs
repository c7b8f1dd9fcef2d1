//! Minkowski `L_q` aggregation of per-variable absolute differences.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::data::{CondensedDistanceMatrix, CrossDistanceMatrix, DataMatrix};
use crate::error::{Error, Result};

/// Exponent `q >= 1` of the Minkowski distance, or the maximum distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AggregationOrder {
    Finite(f64),
    Infinity,
}

impl AggregationOrder {
    pub const L1: Self = Self::Finite(1.0);
    pub const L2: Self = Self::Finite(2.0);

    pub fn new(q: f64) -> Result<Self> {
        if q == f64::INFINITY {
            Ok(Self::Infinity)
        } else if q >= 1.0 && q.is_finite() {
            Ok(Self::Finite(q))
        } else {
            Err(Error::usage(format!(
                "Minkowski order must be >= 1 or infinity, got {q}"
            )))
        }
    }

    /// The orders compared throughout: 1, 2, 3, 4 and maximum.
    pub fn standard_set() -> Vec<Self> {
        vec![
            Self::Finite(1.0),
            Self::Finite(2.0),
            Self::Finite(3.0),
            Self::Finite(4.0),
            Self::Infinity,
        ]
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Finite(q) => q,
            Self::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for AggregationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(q) => write!(f, "{q}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for AggregationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "max" | "∞" => Ok(Self::Infinity),
            other => {
                let q: f64 = other
                    .parse()
                    .map_err(|_| Error::usage(format!("invalid Minkowski order {s:?}")))?;
                Self::new(q)
            }
        }
    }
}

impl Serialize for AggregationOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(q) => s.serialize_f64(*q),
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for AggregationOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(q) => Self::new(q),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Minkowski distance between two equally long vectors.
pub fn minkowski(a: &[f64], b: &[f64], q: AggregationOrder) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::usage(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::usage("distance between empty vectors"));
    }
    Ok(minkowski_unchecked(a, b, q))
}

/// Summation runs over variables in index order. For `q > 1` the largest
/// absolute difference is factored out before powering so that large
/// coordinates cannot overflow the power sum.
pub(crate) fn minkowski_unchecked(a: &[f64], b: &[f64], q: AggregationOrder) -> f64 {
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    match q {
        AggregationOrder::Infinity => diffs.fold(0.0, f64::max),
        AggregationOrder::Finite(1.0) => diffs.sum(),
        AggregationOrder::Finite(q) => {
            let max = diffs.clone().fold(0.0, f64::max);
            if max == 0.0 {
                return 0.0;
            }
            let sum: f64 = if q.fract() == 0.0 && q <= 64.0 {
                let e = q as i32;
                diffs.map(|d| (d / max).powi(e)).sum()
            } else {
                diffs.map(|d| (d / max).powf(q)).sum()
            };
            max * sum.powf(1.0 / q)
        }
    }
}

/// All pairwise distances between the rows of `x`.
pub fn pairwise(x: &DataMatrix, q: AggregationOrder) -> Result<CondensedDistanceMatrix> {
    let (n, p) = (x.n_rows(), x.n_cols());
    if n < 2 {
        return Err(Error::usage(format!(
            "pairwise distances need at least 2 observations, got {n}"
        )));
    }
    if p == 0 {
        return Err(Error::usage("pairwise distances need at least 1 variable"));
    }
    let rows = x.to_row_major();
    let row = |i: usize| &rows[i * p..(i + 1) * p];
    // one block per larger index j, concatenated in condensed order
    let blocks: Vec<Vec<f64>> = (1..n)
        .into_par_iter()
        .map(|j| (0..j).map(|i| minkowski_unchecked(row(i), row(j), q)).collect())
        .collect();
    CondensedDistanceMatrix::new(n, blocks.concat())
}

/// Distances from every row of `test` to every row of `train`.
pub fn cross(test: &DataMatrix, train: &DataMatrix, q: AggregationOrder) -> Result<CrossDistanceMatrix> {
    let p = train.n_cols();
    if test.n_cols() != p {
        return Err(Error::usage(format!(
            "test data has {} variables, training data {p}",
            test.n_cols()
        )));
    }
    if p == 0 {
        return Err(Error::usage("cross distances need at least 1 variable"));
    }
    let (m, n) = (test.n_rows(), train.n_rows());
    let test_rows = test.to_row_major();
    let train_rows = train.to_row_major();
    let entries: Vec<f64> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let t = &test_rows[a * p..(a + 1) * p];
            let train_rows = &train_rows;
            (0..n).map(move |i| minkowski_unchecked(t, &train_rows[i * p..(i + 1) * p], q))
        })
        .collect();
    CrossDistanceMatrix::new(m, n, entries)
}
