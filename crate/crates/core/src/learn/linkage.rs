//! Agglomerative hierarchical clustering with complete and average linkage.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{CondensedDistanceMatrix, LabelVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkageMethod {
    /// Largest pairwise distance between the two clusters.
    Complete,
    /// Unweighted mean pairwise distance (UPGMA).
    Average,
}

impl fmt::Display for LinkageMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Complete => "complete",
            Self::Average => "average",
        })
    }
}

impl FromStr for LinkageMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "complete" => Ok(Self::Complete),
            "average" | "upgma" => Ok(Self::Average),
            _ => Err(Error::usage(format!("unknown linkage {s:?}"))),
        }
    }
}

/// One agglomeration step. Leaves are nodes `0..n`; the cluster formed by
/// step `s` is node `n + s`. `left < right`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub n: usize,
    pub merges: Vec<Merge>,
}

/// Candidate merge ordered by height, then by the node-id pair.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PairKey {
    height: f64,
    ids: (usize, usize),
}

impl PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height
            .total_cmp(&other.height)
            .then(self.ids.cmp(&other.ids))
    }
}

struct Workspace {
    method: LinkageMethod,
    slots: usize,
    // complete: inter-cluster maximum; average: sum of pairwise distances
    link: Vec<f64>,
    node: Vec<usize>,
    size: Vec<usize>,
    active: Vec<bool>,
    best: Vec<Option<(PairKey, usize)>>,
}

impl Workspace {
    fn new(d: &CondensedDistanceMatrix, method: LinkageMethod) -> Self {
        let n = d.n();
        let mut link = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                link[i * n + j] = d.get(i, j);
            }
        }
        let mut ws = Workspace {
            method,
            slots: n,
            link,
            node: (0..n).collect(),
            size: vec![1; n],
            active: vec![true; n],
            best: vec![None; n],
        };
        for a in 0..n {
            ws.refresh(a);
        }
        ws
    }

    fn height(&self, a: usize, b: usize) -> f64 {
        let l = self.link[a * self.slots + b];
        match self.method {
            LinkageMethod::Complete => l,
            LinkageMethod::Average => l / (self.size[a] * self.size[b]) as f64,
        }
    }

    fn key(&self, a: usize, b: usize) -> PairKey {
        let (x, y) = (self.node[a], self.node[b]);
        PairKey {
            height: self.height(a, b),
            ids: (x.min(y), x.max(y)),
        }
    }

    fn refresh(&mut self, a: usize) {
        let mut best: Option<(PairKey, usize)> = None;
        for b in (0..self.slots).filter(|&b| b != a && self.active[b]) {
            let k = self.key(a, b);
            if best.is_none_or(|(bk, _)| k.cmp(&bk) == Ordering::Less) {
                best = Some((k, b));
            }
        }
        self.best[a] = best;
    }

    fn closest_pair(&self) -> (PairKey, usize, usize) {
        let mut best: Option<(PairKey, usize, usize)> = None;
        for a in (0..self.slots).filter(|&a| self.active[a]) {
            if let Some((k, b)) = self.best[a] {
                if best.is_none_or(|(bk, _, _)| k.cmp(&bk) == Ordering::Less) {
                    best = Some((k, a, b));
                }
            }
        }
        best.expect("at least two active clusters")
    }

    /// Merges slot `b` into slot `a` and gives the result node id `new_node`.
    fn merge(&mut self, a: usize, b: usize, new_node: usize) {
        let s = self.slots;
        for k in 0..s {
            if !self.active[k] || k == a || k == b {
                continue;
            }
            let (ak, bk) = (self.link[a * s + k], self.link[b * s + k]);
            let merged = match self.method {
                LinkageMethod::Complete => ak.max(bk),
                LinkageMethod::Average => ak + bk,
            };
            self.link[a * s + k] = merged;
            self.link[k * s + a] = merged;
        }
        self.active[b] = false;
        self.best[b] = None;
        self.size[a] += self.size[b];
        self.node[a] = new_node;
        self.refresh(a);
        for k in 0..s {
            if !self.active[k] || k == a {
                continue;
            }
            match self.best[k] {
                Some((_, partner)) if partner == a || partner == b => self.refresh(k),
                Some((current, _)) => {
                    let candidate = self.key(k, a);
                    if candidate.cmp(&current) == Ordering::Less {
                        self.best[k] = Some((candidate, a));
                    }
                }
                None => self.refresh(k),
            }
        }
    }
}

/// Builds the full merge hierarchy.
///
/// At each step the pair of clusters with the smallest linkage distance is
/// merged; equal distances go to the smallest `(left, right)` node-id pair.
/// Average-linkage distances are kept as sums of pairwise distances and
/// divided by the cluster sizes on comparison.
pub fn linkage(d: &CondensedDistanceMatrix, method: LinkageMethod) -> Result<Dendrogram> {
    let n = d.n();
    if n < 2 {
        return Err(Error::usage(format!("linkage needs n >= 2, got {n}")));
    }
    let mut ws = Workspace::new(d, method);
    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let (key, a, b) = ws.closest_pair();
        let size = ws.size[a] + ws.size[b];
        merges.push(Merge {
            left: key.ids.0,
            right: key.ids.1,
            height: key.height,
            size,
        });
        ws.merge(a, b, n + step);
    }
    Ok(Dendrogram { n, merges })
}

/// Cuts the hierarchy into `k` clusters by undoing its last `k - 1` merges.
/// Clusters are numbered `1..=k` in order of their smallest member.
pub fn cut_tree(dend: &Dendrogram, k: usize) -> Result<LabelVector> {
    let n = dend.n;
    if k < 1 || k > n {
        return Err(Error::usage(format!("cut needs 1 <= k <= n = {n}, got {k}")));
    }
    // union-find over nodes 0..2n-1
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (step, m) in dend.merges.iter().take(n - k).enumerate() {
        let node = n + step;
        let (l, r) = (find(&mut parent, m.left), find(&mut parent, m.right));
        parent[l] = node;
        parent[r] = node;
    }
    let mut label_of_root = vec![0u32; 2 * n - 1];
    let mut next = 0;
    let labels = (0..n)
        .map(|i| {
            let root = find(&mut parent, i);
            if label_of_root[root] == 0 {
                next += 1;
                label_of_root[root] = next;
            }
            label_of_root[root]
        })
        .collect();
    LabelVector::new(labels)
}
