use crate::data::{CrossDistanceMatrix, LabelVector};
use crate::error::{Error, Result};

/// k-nearest-neighbour classification from test-to-training distances.
///
/// Neighbours are the `k` training objects with the smallest distance, ties
/// at the boundary going to the lower training index. The class with most
/// votes wins; a vote tie goes to the class whose voting neighbours have the
/// smaller summed distance, then to the smaller label.
///
/// Returns one predicted label per test object. Predictions need not cover
/// every class, so they are plain labels rather than a [`LabelVector`].
pub fn knn_classify(dx: &CrossDistanceMatrix, train_labels: &LabelVector, k: usize) -> Result<Vec<u32>> {
    let n = dx.n_train();
    if train_labels.len() != n {
        return Err(Error::usage(format!(
            "{} training labels for {n} training objects",
            train_labels.len()
        )));
    }
    if k < 1 || k > n {
        return Err(Error::usage(format!("k-NN needs 1 <= k <= {n}, got {k}")));
    }
    let classes = train_labels.k() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    let mut votes = vec![0usize; classes];
    let mut dist_sum = vec![0.0f64; classes];
    let predictions = (0..dx.n_test())
        .map(|a| {
            let row = dx.row(a);
            order.sort_unstable_by(|&i, &j| row[i].total_cmp(&row[j]).then(i.cmp(&j)));
            votes.fill(0);
            dist_sum.fill(0.0);
            for &i in &order[..k] {
                let c = train_labels.get(i) as usize - 1;
                votes[c] += 1;
                dist_sum[c] += row[i];
            }
            (0..classes)
                .filter(|&c| votes[c] > 0)
                .min_by(|&c, &e| {
                    votes[e]
                        .cmp(&votes[c])
                        .then(dist_sum[c].total_cmp(&dist_sum[e]))
                        .then(c.cmp(&e))
                })
                .map(|c| c as u32 + 1)
                .expect("k >= 1 casts at least one vote")
        })
        .collect();
    Ok(predictions)
}
