//! Error norms and sweep statistics.

use crate::error::{Error, Result};

/// `max|û − u| / max|u|`. NaN in `numeric` propagates to the result.
pub fn error_inf(numeric: &[f64], analytic: &[f64]) -> Result<f64> {
    if numeric.len() != analytic.len() {
        return Err(Error::LengthMismatch { expected: analytic.len(), found: numeric.len() });
    }
    let reference = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if reference == 0.0 {
        return Err(Error::ZeroReference);
    }
    let mut worst = 0.0f64;
    for (a, b) in numeric.iter().zip(analytic) {
        let d = (a - b).abs();
        if d.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(d);
    }
    Ok(worst / reference)
}

/// [`error_inf`] on per-node displacement magnitudes.
pub fn error_inf_magnitude<const C: usize>(numeric: &[[f64; C]], analytic: &[[f64; C]]) -> Result<f64> {
    let mag = |v: &[f64; C]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let a: Vec<f64> = numeric.iter().map(mag).collect();
    let b: Vec<f64> = analytic.iter().map(mag).collect();
    error_inf(&a, &b)
}

fn sorted_finite(values: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Linear-interpolated percentile of sorted data, `p` in `[0, 1]`.
fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = p.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Percentile over the finite values, `p` in `[0, 1]` (clamped); NaN if
/// there are none.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    percentile_sorted(&sorted_finite(values), p)
}

pub fn median(values: &[f64]) -> f64 {
    percentile(values, 0.5)
}

/// `(p90 − p10) / median` over the finite values.
pub fn normalized_spread(values: &[f64]) -> f64 {
    let s = sorted_finite(values);
    let m = percentile_sorted(&s, 0.5);
    (percentile_sorted(&s, 0.9) - percentile_sorted(&s, 0.1)) / m
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Least-squares slope of `ln y` against `ln x`, skipping non-positive or
/// non-finite pairs. NaN with fewer than two usable points.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0 && a.is_finite() && b.is_finite())
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}
