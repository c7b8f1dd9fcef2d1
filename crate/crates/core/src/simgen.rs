//! Two-class simulation data with independent Gaussian / t₂ variables.
//!
//! Every variable draws from its own ChaCha8 stream: the generator is seeded
//! with the dataset seed and switched to stream `j` for variable `j`. Within
//! a stream the order of draws is fixed:
//!
//! 1. `is_t` and `is_noise` flags (two uniforms),
//! 2. the class mean difference (informative variables only) and the
//!    standard deviation(s),
//! 3. training observations, class 1 then class 2,
//! 4. test observations, class 1 then class 2.
//!
//! Changing `p` therefore never changes the first variables, and columns can
//! be generated in parallel with identical output.
//!
//! A t₂ variate is `Z / sqrt(E)` with `Z` standard normal and `E` standard
//! exponential (a χ²₂ variate divided by its 2 degrees of freedom).

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{DataMatrix, LabelVector};
use crate::error::{Error, Result};
use crate::io;

/// Mean of class 2 relative to class 1 on informative variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanDifference {
    Fixed(f64),
    Uniform([f64; 2]),
}

/// Parameters of one simulation regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupSpec {
    pub name: String,
    pub n_per_class: usize,
    pub p: usize,
    /// probability that a variable is t₂ rather than Gaussian
    pub p_t: f64,
    /// probability that a variable carries no class difference
    pub p_n: f64,
    pub mean_diff: MeanDifference,
    pub sd_range: [f64; 2],
}

impl SetupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::usage(format!("setup {:?}: {msg}", self.name)));
        if self.n_per_class < 2 {
            return bad(format!("n_per_class = {} < 2", self.n_per_class));
        }
        if self.p == 0 {
            return bad("p = 0".into());
        }
        for (name, prob) in [("p_t", self.p_t), ("p_n", self.p_n)] {
            if !(0.0..=1.0).contains(&prob) {
                return bad(format!("{name} = {prob} outside [0, 1]"));
            }
        }
        let [lo, hi] = self.sd_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return bad(format!("sd_range [{lo}, {hi}] needs 0 < lo <= hi"));
        }
        match self.mean_diff {
            MeanDifference::Fixed(d) if !d.is_finite() => bad(format!("mean difference {d}")),
            MeanDifference::Uniform([lo, hi]) if !(lo <= hi && lo.is_finite() && hi.is_finite()) => {
                bad(format!("mean difference interval [{lo}, {hi}]"))
            }
            _ => Ok(()),
        }
    }

    pub fn with_size(mut self, n_per_class: Option<usize>, p: Option<usize>) -> Self {
        if let Some(n) = n_per_class {
            self.n_per_class = n;
        }
        if let Some(p) = p {
            self.p = p;
        }
        self
    }
}

const DEFAULT_N_PER_CLASS: usize = 50;
const DEFAULT_P: usize = 2000;

fn setup(name: &str, p_t: f64, p_n: f64, mean_diff: MeanDifference, sd_range: [f64; 2]) -> SetupSpec {
    SetupSpec {
        name: name.into(),
        n_per_class: DEFAULT_N_PER_CLASS,
        p: DEFAULT_P,
        p_t,
        p_n,
        mean_diff,
        sd_range,
    }
}

/// The five reference regimes, at full size (50 per class, 2000 variables).
pub fn setup_catalog() -> Vec<SetupSpec> {
    use MeanDifference::{Fixed, Uniform};
    vec![
        setup("simple_normal", 0.0, 0.0, Fixed(0.1), [0.5, 1.5]),
        setup("simple_normal_099", 0.0, 0.99, Fixed(12.0), [0.5, 2.0]),
        setup("ntn_01", 0.1, 0.1, Uniform([0.0, 0.3]), [0.5, 10.0]),
        setup("ntn_05", 0.5, 0.5, Uniform([0.0, 2.0]), [0.5, 10.0]),
        setup("ntn_09", 0.9, 0.9, Uniform([0.0, 10.0]), [0.5, 10.0]),
    ]
}

pub fn find_setup(name: &str) -> Result<SetupSpec> {
    setup_catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| {
            let names: Vec<String> = setup_catalog().into_iter().map(|s| s.name).collect();
            Error::usage(format!("unknown setup {name:?}; known: {}", names.join(", ")))
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariableMeta {
    pub is_noise: bool,
    pub is_t: bool,
    /// class 2 mean minus class 1 mean (class 1 mean is 0)
    pub mean_diff: f64,
    /// standard deviation (scale) per class
    pub sd: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedDataset {
    pub spec: SetupSpec,
    pub seed: u64,
    pub x_train: DataMatrix,
    pub y_train: LabelVector,
    pub x_test: DataMatrix,
    pub y_test: LabelVector,
    pub variables: Vec<VariableMeta>,
}

/// JSON sidecar written next to a generated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub seed: u64,
    pub spec: SetupSpec,
    pub variables: Vec<VariableMeta>,
}

fn uniform(rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn t2(rng: &mut ChaCha8Rng) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    // 1 - U lies in (0, 1], so the exponential variate is finite
    let e = -(1.0 - rng.random::<f64>()).ln();
    z / e.sqrt()
}

fn innovation(rng: &mut ChaCha8Rng, is_t: bool) -> f64 {
    if is_t {
        t2(rng)
    } else {
        rng.sample(StandardNormal)
    }
}

struct Column {
    meta: VariableMeta,
    train: Vec<f64>,
    test: Vec<f64>,
}

fn variable_rng(seed: u64, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(j as u64);
    rng
}

fn generate_column(spec: &SetupSpec, seed: u64, j: usize) -> Column {
    let mut rng = variable_rng(seed, j);
    let is_t = rng.random::<f64>() < spec.p_t;
    let is_noise = rng.random::<f64>() < spec.p_n;
    let meta = if is_noise {
        let sd = uniform(&mut rng, spec.sd_range);
        VariableMeta { is_noise, is_t, mean_diff: 0.0, sd: [sd, sd] }
    } else {
        let mean_diff = match spec.mean_diff {
            MeanDifference::Fixed(d) => d,
            MeanDifference::Uniform(range) => uniform(&mut rng, range),
        };
        let sd = [uniform(&mut rng, spec.sd_range), uniform(&mut rng, spec.sd_range)];
        VariableMeta { is_noise, is_t, mean_diff, sd }
    };
    let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * spec.n_per_class);
        for (class, mean) in [(0, 0.0), (1, meta.mean_diff)] {
            for _ in 0..spec.n_per_class {
                out.push(mean + meta.sd[class] * innovation(rng, meta.is_t));
            }
        }
        out
    };
    let train = sample(&mut rng);
    let test = sample(&mut rng);
    Column { meta, train, test }
}

fn class_labels(n_per_class: usize) -> LabelVector {
    let labels = (0..2 * n_per_class)
        .map(|i| if i < n_per_class { 1 } else { 2 })
        .collect();
    LabelVector::new(labels).expect("both classes present")
}

/// Generates training and test data for `spec`; fully determined by `seed`.
pub fn generate(spec: &SetupSpec, seed: u64) -> Result<GeneratedDataset> {
    spec.validate()?;
    let columns: Vec<Column> = (0..spec.p)
        .into_par_iter()
        .map(|j| generate_column(spec, seed, j))
        .collect();
    let n = 2 * spec.n_per_class;
    let mut variables = Vec::with_capacity(spec.p);
    let mut train = Vec::with_capacity(spec.p);
    let mut test = Vec::with_capacity(spec.p);
    for c in columns {
        variables.push(c.meta);
        train.push(c.train);
        test.push(c.test);
    }
    Ok(GeneratedDataset {
        spec: spec.clone(),
        seed,
        x_train: DataMatrix::from_column_vecs(train, n)?,
        y_train: class_labels(spec.n_per_class),
        x_test: DataMatrix::from_column_vecs(test, n)?,
        y_test: class_labels(spec.n_per_class),
        variables,
    })
}

impl GeneratedDataset {
    pub fn meta(&self) -> DatasetMeta {
        DatasetMeta {
            seed: self.seed,
            spec: self.spec.clone(),
            variables: self.variables.clone(),
        }
    }

    /// Writes `train.csv`, `train_labels.txt`, `test.csv`, `test_labels.txt`
    /// and `meta.json` into `dir`.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        io::write_matrix_csv(dir.join("train.csv"), &self.x_train)?;
        io::write_labels_file(dir.join("train_labels.txt"), &self.y_train)?;
        io::write_matrix_csv(dir.join("test.csv"), &self.x_test)?;
        io::write_labels_file(dir.join("test_labels.txt"), &self.y_test)?;
        let meta = serde_json::to_vec_pretty(&self.meta())?;
        io::write_atomic(dir.join("meta.json"), &meta)
    }
}
