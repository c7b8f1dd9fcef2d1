//! Shared data model: observation matrices, class labels and distance storage.
//!
//! [`DataMatrix`] stores variables contiguously (column-major), since every
//! standardisation is a per-variable pass over the `n` observations while `p`
//! is usually much larger than `n`.

use crate::error::{Error, Result};

/// An `n x p` matrix of finite reals, observations by variables.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    n_rows: usize,
    n_cols: usize,
    // column j occupies values[j * n_rows..(j + 1) * n_rows]
    values: Vec<f64>,
}

impl DataMatrix {
    /// Builds a matrix from column-major storage.
    pub fn from_columns(n_rows: usize, n_cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(Error::InvalidData(format!(
                "expected {} values for a {n_rows}x{n_cols} matrix, got {}",
                n_rows * n_cols,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            let (row, col) = (pos % n_rows.max(1), pos / n_rows.max(1));
            return Err(Error::InvalidData(format!(
                "non-finite value at row {row}, column {col}"
            )));
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
        })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::InvalidData(format!(
                "row {bad} has {} values, expected {n_cols}",
                rows[bad].len()
            )));
        }
        let mut values = vec![0.0; n_rows * n_cols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                values[j * n_rows + i] = v;
            }
        }
        Self::from_columns(n_rows, n_cols, values)
    }

    /// Assembles a matrix from per-variable columns of equal length.
    pub fn from_column_vecs(columns: Vec<Vec<f64>>, n_rows: usize) -> Result<Self> {
        let n_cols = columns.len();
        if let Some(bad) = columns.iter().position(|c| c.len() != n_rows) {
            return Err(Error::InvalidData(format!(
                "column {bad} has {} values, expected {n_rows}",
                columns[bad].len()
            )));
        }
        Self::from_columns(n_rows, n_cols, columns.concat())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[col * self.n_rows + row]
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.values[col * self.n_rows..(col + 1) * self.n_rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n_cols).map(move |j| self.column(j))
    }

    pub fn row(&self, row: usize) -> Vec<f64> {
        (0..self.n_cols).map(|j| self.get(row, j)).collect()
    }

    /// Copies the matrix into row-major order.
    pub fn to_row_major(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.values.len()];
        for (j, col) in self.columns().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                out[i * self.n_cols + j] = v;
            }
        }
        out
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::from_columns(
            self.n_rows,
            self.n_cols,
            self.values.iter().map(|v| v * c).collect(),
        )
    }
}

/// Class assignments `1..=k` for `n` objects; every class occurs at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<u32>,
    k: u32,
}

impl LabelVector {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        let k = labels.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; k as usize];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 {
                return Err(Error::InvalidData(format!(
                    "label at position {i} is 0; labels start at 1"
                )));
            }
            seen[l as usize - 1] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidData(format!(
                "class {} has no members (k = {k})",
                missing + 1
            )));
        }
        Ok(Self { labels, k })
    }

    /// Relabels arbitrary identifiers to `1..=k` in order of first appearance.
    pub fn from_arbitrary<T: PartialEq + Clone>(ids: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = ids
            .iter()
            .map(|id| match seen.iter().position(|s| s == id) {
                Some(pos) => pos as u32 + 1,
                None => {
                    seen.push(id.clone());
                    seen.len() as u32
                }
            })
            .collect();
        Self {
            labels,
            k: seen.len() as u32,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.labels
    }

    pub fn get(&self, i: usize) -> u32 {
        self.labels[i]
    }

    /// Number of members per class, indexed by `label - 1`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k as usize];
        for &l in &self.labels {
            sizes[l as usize - 1] += 1;
        }
        sizes
    }
}

/// Storage position of the unordered pair `(i, j)`, `i < j`, among `n` objects.
///
/// Pairs are ordered by the larger index, then the smaller one:
/// `(0,1), (0,2), (1,2), (0,3), ...`, so `(i, j)` sits at `j(j-1)/2 + i`.
pub fn condensed_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::Index(format!(
            "pair ({i}, {j}) is not a valid i < j < n = {n} pair"
        )));
    }
    Ok(pair_index(i, j))
}

#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Number of unordered pairs among `n` objects.
pub fn n_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Symmetric distance matrix with zero diagonal, one entry per unordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensedDistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CondensedDistanceMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n_pairs(n) {
            return Err(Error::Format(format!(
                "n = {n} requires {} entries, got {}",
                n_pairs(n),
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidData(format!(
                "entry {pos} is {}; distances must be finite and non-negative",
                entries[pos]
            )));
        }
        Ok(Self { n, entries })
    }

    /// Builds the matrix by evaluating `f(i, j)` for every pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(n_pairs(n));
        for j in 1..n {
            for i in 0..j {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Distance between objects `i` and `j`, zero when `i == j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.entries[pair_index(i, j)],
            std::cmp::Ordering::Greater => self.entries[pair_index(j, i)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }
}

/// Distances from `m` test objects (rows) to `n` training objects (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct CrossDistanceMatrix {
    m: usize,
    n: usize,
    entries: Vec<f64>,
}

impl CrossDistanceMatrix {
    pub fn new(m: usize, n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != m * n {
            return Err(Error::InvalidData(format!(
                "{m}x{n} cross matrix needs {} entries, got {}",
                m * n,
                entries.len()
            )));
        }
        if entries.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidData(
                "cross distances must be finite and non-negative".into(),
            ));
        }
        Ok(Self { m, n, entries })
    }

    pub fn n_test(&self) -> usize {
        self.m
    }

    pub fn n_train(&self) -> usize {
        self.n
    }

    pub fn get(&self, test: usize, train: usize) -> f64 {
        self.entries[test * self.n + train]
    }

    pub fn row(&self, test: usize) -> &[f64] {
        &self.entries[test * self.n..(test + 1) * self.n]
    }
}
