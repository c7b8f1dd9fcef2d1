use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::AggregationOrder;
use crate::error::{Error, Result};
use crate::simgen::{find_setup, SetupSpec};
use crate::standardise::StandardisationMethod;

/// Learner run on each distance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Pam,
    Complete,
    Average,
    Knn3,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Pam, Method::Complete, Method::Average, Method::Knn3];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pam => "pam",
            Method::Complete => "complete",
            Method::Average => "average",
            Method::Knn3 => "knn3",
        }
    }

    pub fn is_clustering(self) -> bool {
        !matches!(self, Method::Knn3)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::usage(format!("unknown method {s:?} (pam, complete, average, knn3)")))
    }
}

/// A catalogued setup by name, or a fully specified custom one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetupChoice {
    Named(String),
    Custom(SetupSpec),
}

impl SetupChoice {
    pub fn resolve(&self) -> Result<SetupSpec> {
        match self {
            SetupChoice::Named(name) => find_setup(name),
            SetupChoice::Custom(spec) => Ok(spec.clone()),
        }
    }
}

fn default_replicates() -> usize {
    100
}

fn default_qs() -> Vec<AggregationOrder> {
    AggregationOrder::standard_set()
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

/// One simulation study: a setup, its size overrides, and the
/// standardisation x aggregation x method grid run on every replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub setup: SetupChoice,
    #[serde(default)]
    pub n_per_class: Option<usize>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default)]
    pub seed: u64,
    /// `None` selects every applicable method (see [`Self::standardisation_list`]).
    #[serde(default)]
    pub standardisations: Option<Vec<StandardisationMethod>>,
    #[serde(default = "default_qs")]
    pub qs: Vec<AggregationOrder>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    /// Allow pooled standardisation for clustering, computed from the true
    /// labels. Such rows are tagged `oracle:` in the output.
    #[serde(default)]
    pub oracle_pooling: bool,
    /// Record wall time per learner run; off by default so that results are
    /// byte-reproducible.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(setup: SetupChoice) -> Self {
        Self {
            setup,
            n_per_class: None,
            p: None,
            replicates: default_replicates(),
            seed: 0,
            standardisations: None,
            qs: default_qs(),
            methods: default_methods(),
            oracle_pooling: false,
            timing: false,
            out: None,
        }
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn spec(&self) -> Result<SetupSpec> {
        let spec = self.setup.resolve()?.with_size(self.n_per_class, self.p);
        spec.validate()?;
        Ok(spec)
    }

    fn has_clustering(&self) -> bool {
        self.methods.iter().any(|m| m.is_clustering())
    }

    /// The standardisations to run. Without an explicit list, pooled methods
    /// are included only when they are usable for every requested method.
    pub fn standardisation_list(&self) -> Vec<StandardisationMethod> {
        match &self.standardisations {
            Some(list) => list.clone(),
            None => StandardisationMethod::ALL
                .into_iter()
                .filter(|m| !m.is_pooled() || self.oracle_pooling || !self.has_clustering())
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.spec()?;
        if self.replicates == 0 {
            return Err(Error::usage("replicates must be at least 1"));
        }
        if self.qs.is_empty() || self.methods.is_empty() || self.standardisation_list().is_empty() {
            return Err(Error::usage(
                "standardisation, q and method lists must be nonempty",
            ));
        }
        if self.has_clustering() && !self.oracle_pooling {
            if let Some(pooled) = self.standardisation_list().into_iter().find(|m| m.is_pooled()) {
                return Err(Error::usage(format!(
                    "{pooled} needs class labels, which clustering does not have; \
                     enable oracle pooling to use the true labels anyway"
                )));
            }
        }
        Ok(())
    }
}
