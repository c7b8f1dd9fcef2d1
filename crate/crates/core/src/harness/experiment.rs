use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Method};
use crate::data::{CondensedDistanceMatrix, CrossDistanceMatrix, LabelVector};
use crate::distance::{cross, pairwise, AggregationOrder};
use crate::error::{Error, Result};
use crate::evaluate::{adjusted_rand_index, misclassification_rate};
use crate::learn::{cut_tree, knn_classify, linkage, pam, LinkageMethod};
use crate::simgen::{generate, GeneratedDataset, SetupSpec};
use crate::standardise::{FittedStandardisation, StandardisationMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Ari,
    Misclassification,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Ari => "ari",
            Metric::Misclassification => "misclassification",
        })
    }
}

/// One (replicate, standardisation, q, method) outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub setup: String,
    pub replicate: usize,
    pub seed: u64,
    /// standardisation name, prefixed `oracle:` when pooled statistics used
    /// the true labels of a clustering problem
    pub standardisation: String,
    pub q: AggregationOrder,
    pub method: Method,
    pub metric: Metric,
    pub value: f64,
    pub seconds: f64,
}

pub const RESULTS_HEADER: &str = "setup,replicate,seed,standardisation,q,method,metric,value,seconds";

/// SplitMix64 output function.
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `r`: the `(r + 1)`-th output of a SplitMix64 generator
/// started from the master seed. Replicates can be re-run individually.
pub fn replicate_seed(master: u64, replicate: usize) -> u64 {
    const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
    splitmix64(master.wrapping_add(GOLDEN.wrapping_mul(replicate as u64 + 1)))
}

/// Standardisation label used in result rows.
pub fn standardisation_label(s: StandardisationMethod, method: Method) -> String {
    if s.is_pooled() && method.is_clustering() {
        format!("oracle:{s}")
    } else {
        s.to_string()
    }
}

/// Distances of one standardised replicate at one aggregation order.
pub struct ReplicateDistances<'a> {
    pub train: Option<CondensedDistanceMatrix>,
    pub test_to_train: Option<CrossDistanceMatrix>,
    pub y_train: &'a LabelVector,
    pub y_test: &'a LabelVector,
}

/// Runs `method` on precomputed distances and scores it against the truth.
/// Returns the metric, its value and the learner's wall time in seconds.
pub fn evaluate_method(method: Method, dist: &ReplicateDistances<'_>) -> Result<(Metric, f64, f64)> {
    let start = Instant::now();
    let k = dist.y_train.k() as usize;
    let (metric, value) = if method.is_clustering() {
        let d = dist.train.as_ref().ok_or_else(|| Error::usage("training distances were not computed"))?;
        let labels = match method {
            Method::Pam => pam(d, k)?.labels,
            Method::Complete => cut_tree(&linkage(d, LinkageMethod::Complete)?, k)?,
            _ => cut_tree(&linkage(d, LinkageMethod::Average)?, k)?,
        };
        (Metric::Ari, adjusted_rand_index(labels.as_slice(), dist.y_train.as_slice())?)
    } else {
        let dx = dist
            .test_to_train
            .as_ref()
            .ok_or_else(|| Error::usage("test distances were not computed"))?;
        let pred = knn_classify(dx, dist.y_train, 3)?;
        (Metric::Misclassification, misclassification_rate(&pred, dist.y_test.as_slice())?)
    };
    Ok((metric, value, start.elapsed().as_secs_f64()))
}

/// Runs the full grid on one generated dataset.
pub fn run_on_dataset(cfg: &ExperimentConfig, ds: &GeneratedDataset, replicate: usize) -> Result<Vec<ResultRecord>> {
    let clustering = cfg.methods.iter().any(|m| m.is_clustering());
    let classifying = cfg.methods.iter().any(|m| !m.is_clustering());
    let mut records = Vec::new();
    for s in cfg.standardisation_list() {
        let labels = s.is_pooled().then_some(&ds.y_train);
        let fit = FittedStandardisation::fit(&ds.x_train, s, labels)?;
        let train = fit.apply_training(&ds.x_train)?;
        let test = if classifying { Some(fit.apply_new(&ds.x_test)?) } else { None };
        for &q in &cfg.qs {
            let dist = ReplicateDistances {
                train: if clustering { Some(pairwise(&train, q)?) } else { None },
                test_to_train: match &test {
                    Some(t) => Some(cross(t, &train, q)?),
                    None => None,
                },
                y_train: &ds.y_train,
                y_test: &ds.y_test,
            };
            for &method in &cfg.methods {
                let (metric, value, seconds) = evaluate_method(method, &dist)?;
                records.push(ResultRecord {
                    setup: ds.spec.name.clone(),
                    replicate,
                    seed: ds.seed,
                    standardisation: standardisation_label(s, method),
                    q,
                    method,
                    metric,
                    value,
                    seconds: if cfg.timing { seconds } else { 0.0 },
                });
            }
        }
    }
    Ok(records)
}

pub fn run_replicate(cfg: &ExperimentConfig, spec: &SetupSpec, replicate: usize) -> Result<Vec<ResultRecord>> {
    let ds = generate(spec, replicate_seed(cfg.seed, replicate))?;
    run_on_dataset(cfg, &ds, replicate)
}

/// Runs every replicate (in parallel on the current rayon pool) and returns
/// the records in replicate order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let spec = cfg.spec()?;
    let per_replicate = (0..cfg.replicates)
        .into_par_iter()
        .map(|r| run_replicate(cfg, &spec, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_replicate.concat())
}

/// Renders records as CSV under [`RESULTS_HEADER`].
pub fn records_to_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:?},{:.6}\n",
            r.setup, r.replicate, r.seed, r.standardisation, r.q, r.method, r.metric, r.value, r.seconds
        ));
    }
    out
}
