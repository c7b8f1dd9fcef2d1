use crate::error::{Error, Result};

/// Sample quantile by linear interpolation between order statistics.
///
/// With sorted values `v(1..=n)` and `h = (n - 1) * prob + 1`, returns
/// `v(floor(h)) + (h - floor(h)) * (v(floor(h) + 1) - v(floor(h)))`.
pub fn quantile(values: &[f64], prob: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::usage("quantile of an empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, prob)
}

/// [`quantile`] for input already sorted ascending.
pub fn quantile_sorted(sorted: &[f64], prob: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::usage("quantile of an empty sample"));
    }
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::usage(format!("probability {prob} outside [0, 1]")));
    }
    let n = sorted.len();
    let h = (n - 1) as f64 * prob + 1.0;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo >= n {
        return Ok(sorted[n - 1]);
    }
    let below = sorted[lo - 1];
    if frac == 0.0 {
        return Ok(below);
    }
    Ok(below + frac * (sorted[lo] - below))
}

pub fn median(values: &[f64]) -> Result<f64> {
    quantile(values, 0.5)
}
