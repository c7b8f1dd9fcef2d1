//! Partitioning around medoids: greedy BUILD followed by best-improvement SWAP.

use super::Clustering;
use crate::data::{CondensedDistanceMatrix, LabelVector};
use crate::error::{Error, Result};

const MAX_SWAPS: usize = 10_000;

/// Nearest and second-nearest medoid distance per object, plus the slot of
/// the nearest medoid (lowest slot on ties).
struct Assignment {
    nearest: Vec<usize>,
    d_nearest: Vec<f64>,
    d_second: Vec<f64>,
}

impl Assignment {
    fn compute(d: &CondensedDistanceMatrix, medoids: &[usize]) -> Self {
        let n = d.n();
        let mut out = Assignment {
            nearest: vec![0; n],
            d_nearest: vec![f64::INFINITY; n],
            d_second: vec![f64::INFINITY; n],
        };
        for o in 0..n {
            for (slot, &m) in medoids.iter().enumerate() {
                let dist = d.get(o, m);
                if dist < out.d_nearest[o] {
                    out.d_second[o] = out.d_nearest[o];
                    out.d_nearest[o] = dist;
                    out.nearest[o] = slot;
                } else if dist < out.d_second[o] {
                    out.d_second[o] = dist;
                }
            }
        }
        out
    }

    fn objective(&self) -> f64 {
        self.d_nearest.iter().sum()
    }
}

fn build(d: &CondensedDistanceMatrix, k: usize) -> Vec<usize> {
    let n = d.n();
    let first = (0..n)
        .map(|i| (i, (0..n).map(|j| d.get(i, j)).sum::<f64>()))
        .fold((0, f64::INFINITY), |best, (i, total)| {
            if total < best.1 {
                (i, total)
            } else {
                best
            }
        })
        .0;
    let mut medoids = vec![first];
    let mut is_medoid = vec![false; n];
    is_medoid[first] = true;
    let mut d_nearest: Vec<f64> = (0..n).map(|j| d.get(first, j)).collect();

    while medoids.len() < k {
        let mut best: Option<(usize, f64)> = None;
        for c in (0..n).filter(|&c| !is_medoid[c]) {
            let gain: f64 = (0..n).map(|j| (d_nearest[j] - d.get(c, j)).max(0.0)).sum();
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((c, gain));
            }
        }
        let (c, _) = best.expect("k < n leaves a candidate");
        medoids.push(c);
        is_medoid[c] = true;
        for (j, dn) in d_nearest.iter_mut().enumerate() {
            *dn = dn.min(d.get(c, j));
        }
    }
    medoids
}

/// Change of the objective when the medoid in `slot` is replaced by `h`.
fn swap_delta(d: &CondensedDistanceMatrix, a: &Assignment, slot: usize, h: usize) -> f64 {
    (0..d.n())
        .map(|j| {
            let to_h = d.get(j, h);
            if a.nearest[j] == slot {
                to_h.min(a.d_second[j]) - a.d_nearest[j]
            } else {
                (to_h - a.d_nearest[j]).min(0.0)
            }
        })
        .sum()
}

/// k-medoids clustering of a precomputed distance matrix.
///
/// Deterministic: BUILD and SWAP break ties by lowest object index. Medoids
/// are reported in ascending object order and cluster `c` is the one whose
/// medoid is `medoids[c - 1]`; an object equidistant to several medoids
/// joins the lowest-numbered cluster.
pub fn pam(d: &CondensedDistanceMatrix, k: usize) -> Result<Clustering> {
    pam_traced(d, k).map(|(c, _)| c)
}

/// [`pam`] together with the objective after BUILD and after every swap.
fn pam_traced(d: &CondensedDistanceMatrix, k: usize) -> Result<(Clustering, Vec<f64>)> {
    let n = d.n();
    if k < 2 || k >= n {
        return Err(Error::usage(format!("PAM needs 2 <= k < n, got k = {k}, n = {n}")));
    }
    let mut medoids = build(d, k);
    medoids.sort_unstable();
    let mut assignment = Assignment::compute(d, &medoids);
    let mut objective = assignment.objective();
    let mut trace = vec![objective];

    for _ in 0..MAX_SWAPS {
        let mut is_medoid = vec![false; n];
        for &m in &medoids {
            is_medoid[m] = true;
        }
        let mut best: Option<(usize, usize, f64)> = None;
        for h in (0..n).filter(|&h| !is_medoid[h]) {
            for slot in 0..k {
                let delta = swap_delta(d, &assignment, slot, h);
                if best.is_none_or(|(_, _, b)| delta < b) {
                    best = Some((slot, h, delta));
                }
            }
        }
        let Some((slot, h, delta)) = best else { break };
        // ignore improvements that are rounding noise
        if delta >= -1e-12 * objective.max(f64::MIN_POSITIVE) {
            break;
        }
        let mut candidate = medoids.clone();
        candidate[slot] = h;
        candidate.sort_unstable();
        let next = Assignment::compute(d, &candidate);
        let next_objective = next.objective();
        if next_objective >= objective {
            break;
        }
        medoids = candidate;
        assignment = next;
        objective = next_objective;
        trace.push(objective);
    }

    let mut labels: Vec<u32> = assignment.nearest.iter().map(|&s| s as u32 + 1).collect();
    // a medoid always represents its own cluster, even with duplicate objects
    for (slot, &m) in medoids.iter().enumerate() {
        labels[m] = slot as u32 + 1;
    }
    let clustering = Clustering {
        labels: LabelVector::new(labels)?,
        medoids: Some(medoids),
        objective: Some(objective),
    };
    Ok((clustering, trace))
}

/// Sum of distances from every object to its nearest medoid.
pub fn medoid_objective(d: &CondensedDistanceMatrix, medoids: &[usize]) -> f64 {
    (0..d.n())
        .map(|o| medoids.iter().map(|&m| d.get(o, m)).fold(f64::INFINITY, f64::min))
        .sum()
}
