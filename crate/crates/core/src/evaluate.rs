//! External agreement and error metrics against ground-truth labels.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Cross-tabulation of two labelings of the same objects.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    /// `counts[r][c]`: objects with the r-th distinct label of the first
    /// labeling and the c-th distinct label of the second, labels in order of
    /// first appearance.
    pub counts: Vec<Vec<usize>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub total: usize,
}

fn dense_ids(labels: &[u32]) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let dense = labels
        .iter()
        .map(|l| {
            let next = ids.len();
            *ids.entry(*l).or_insert(next)
        })
        .collect();
    (dense, ids.len())
}

impl ContingencyTable {
    pub fn new(u: &[u32], v: &[u32]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::usage(format!(
                "labelings of length {} and {}",
                u.len(),
                v.len()
            )));
        }
        let (ru, nr) = dense_ids(u);
        let (rv, nc) = dense_ids(v);
        let mut counts = vec![vec![0; nc]; nr];
        for (&r, &c) in ru.iter().zip(&rv) {
            counts[r][c] += 1;
        }
        let row_sums = counts.iter().map(|row| row.iter().sum()).collect();
        let col_sums = (0..nc).map(|c| counts.iter().map(|row| row[c]).sum()).collect();
        Ok(Self {
            counts,
            row_sums,
            col_sums,
            total: u.len(),
        })
    }

    /// Whether both labelings induce the same set partition.
    fn is_bijective(&self) -> bool {
        self.counts.len() == self.counts.first().map_or(0, Vec::len)
            && self
                .counts
                .iter()
                .all(|row| row.iter().filter(|&&c| c > 0).count() == 1)
    }
}

fn pairs(n: usize) -> i128 {
    let n = n as i128;
    n * (n - 1) / 2
}

/// Hubert–Arabie adjusted Rand index.
///
/// The pair counts are combined in exact integer arithmetic and divided once,
/// so the result is the correctly rounded value of the rational index.
/// When the index is undefined (maximum equals expectation, e.g. both
/// labelings put every object in one cluster) the result is 1 if the
/// partitions coincide and 0 otherwise.
pub fn adjusted_rand_index(u: &[u32], v: &[u32]) -> Result<f64> {
    if u.len() < 2 {
        return Err(Error::usage("adjusted Rand index needs at least 2 objects"));
    }
    let table = ContingencyTable::new(u, v)?;
    let index: i128 = table.counts.iter().flatten().map(|&c| pairs(c)).sum();
    let sum_rows: i128 = table.row_sums.iter().map(|&a| pairs(a)).sum();
    let sum_cols: i128 = table.col_sums.iter().map(|&b| pairs(b)).sum();
    let total = pairs(table.total);
    // (index - E) / (M - E) with E = rows*cols/total, M = (rows+cols)/2,
    // both terms scaled by 2*total
    let num = 2 * total * index - 2 * sum_rows * sum_cols;
    let den = total * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
    if den == 0 {
        return Ok(if table.is_bijective() { 1.0 } else { 0.0 });
    }
    Ok(ratio(num, den))
}

/// `num / den` rounded once: the common factor is removed first so both
/// parts fit in an `f64` mantissa whenever the reduced fraction allows.
fn ratio(num: i128, den: i128) -> f64 {
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    let g = gcd(num, den).max(1);
    (num / g) as f64 / (den / g) as f64
}

/// Fraction of positions where the prediction differs from the truth.
pub fn misclassification_rate(pred: &[u32], truth: &[u32]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::usage(format!(
            "{} predictions for {} true labels",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::usage("misclassification rate of an empty sample"));
    }
    let wrong = pred.iter().zip(truth).filter(|(p, t)| p != t).count();
    Ok(wrong as f64 / pred.len() as f64)
}
