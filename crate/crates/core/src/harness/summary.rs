use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::Serialize;

use super::config::Method;
use super::experiment::{Metric, ResultRecord};
use crate::distance::AggregationOrder;
use crate::error::{Error, Result};

/// Grouping key of a summary row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SummaryKey {
    pub setup: String,
    pub standardisation: String,
    pub q: String,
    pub method: Method,
    pub metric: Metric,
}

impl SummaryKey {
    pub fn of(r: &ResultRecord) -> Self {
        Self {
            setup: r.setup.clone(),
            standardisation: r.standardisation.clone(),
            q: r.q.to_string(),
            method: r.method,
            metric: r.metric,
        }
    }

    /// Whether `r` belongs to the group of the given cell.
    pub fn matches(r: &ResultRecord, standardisation: &str, q: AggregationOrder, method: Method) -> bool {
        r.standardisation == standardisation && r.q == q && r.method == method
    }
}

/// Mean and standard error of one grid cell across replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    #[serde(flatten)]
    pub key: SummaryKey,
    pub n: usize,
    pub mean: f64,
    /// sample standard deviation over `sqrt(n)`; 0 for a single replicate
    pub se: f64,
}

/// Mean and standard error of a sample.
pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// One summary row per grid cell, in order of first appearance.
pub fn summarise(records: &[ResultRecord]) -> Vec<SummaryRow> {
    let mut groups: IndexMap<SummaryKey, Vec<f64>> = IndexMap::new();
    for r in records {
        groups.entry(SummaryKey::of(r)).or_default().push(r.value);
    }
    groups
        .into_iter()
        .map(|(key, values)| {
            let (mean, se) = mean_se(&values);
            SummaryRow {
                key,
                n: values.len(),
                mean,
                se,
            }
        })
        .collect()
}

/// Values of one cell ordered by replicate.
pub fn cell_values(records: &[ResultRecord], standardisation: &str, q: AggregationOrder, method: Method) -> Vec<(usize, f64)> {
    let mut v: Vec<(usize, f64)> = records
        .iter()
        .filter(|r| SummaryKey::matches(r, standardisation, q, method))
        .map(|r| (r.replicate, r.value))
        .collect();
    v.sort_by_key(|&(rep, _)| rep);
    v
}

/// Replicate-wise difference `a - b` between two cells measured on the same
/// datasets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairedDifference {
    pub n: usize,
    pub mean: f64,
    pub se: f64,
}

pub fn paired_difference(a: &[(usize, f64)], b: &[(usize, f64)]) -> Result<PairedDifference> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0) {
        return Err(Error::usage("paired cells must cover the same replicates"));
    }
    if a.is_empty() {
        return Err(Error::usage("no replicates to compare"));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x.1 - y.1).collect();
    let (mean, se) = mean_se(&diffs);
    Ok(PairedDifference {
        n: diffs.len(),
        mean,
        se,
    })
}

/// `results.csv` becomes `results.summary.json`.
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(rep: usize, std: &str, value: f64) -> ResultRecord {
        ResultRecord {
            setup: "s".into(),
            replicate: rep,
            seed: 0,
            standardisation: std.into(),
            q: AggregationOrder::L1,
            method: Method::Pam,
            metric: Metric::Ari,
            value,
            seconds: 0.0,
        }
    }

    #[test]
    fn groups_in_first_appearance_order() {
        let recs = vec![rec(0, "range", 1.0), rec(0, "mad", 0.0), rec(1, "range", 3.0), rec(1, "mad", 0.0)];
        let rows = summarise(&recs);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].key.standardisation, "range");
        assert_eq!((rows[0].n, rows[0].mean, rows[0].se), (2, 2.0, 1.0));
        assert_eq!((rows[1].mean, rows[1].se), (0.0, 0.0));
    }

    #[test]
    fn mean_se_oracle() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_se(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn paired() {
        let recs = vec![rec(1, "a", 5.0), rec(0, "a", 1.0), rec(0, "b", 0.0), rec(1, "b", 3.0)];
        let a = cell_values(&recs, "a", AggregationOrder::L1, Method::Pam);
        let b = cell_values(&recs, "b", AggregationOrder::L1, Method::Pam);
        assert_eq!(a, vec![(0, 1.0), (1, 5.0)]);
        let d = paired_difference(&a, &b).unwrap();
        assert_eq!((d.n, d.mean, d.se), (2, 1.5, 0.5));
        assert!(paired_difference(&a, &b[..1]).is_err());
    }

    #[test]
    fn summary_file_name() {
        assert_eq!(summary_path(Path::new("out/r.csv")), PathBuf::from("out/r.summary.json"));
    }
}
