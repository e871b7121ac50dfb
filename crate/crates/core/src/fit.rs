//! Log–log least squares for empirical convergence orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_used: usize,
}

/// Ordinary least squares of y on x.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> FitResult {
    let n = xs.len().min(ys.len());
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    FitResult {
        slope,
        intercept: my - slope * mx,
        r_squared,
        n_used: n,
    }
}

/// Fits ln(error) = intercept + slope·ln(n).
pub fn fit_rate(ns: &[u32], errors: &[f64]) -> Result<FitResult> {
    if ns.len() != errors.len() {
        return Err(Error::param("errors", format!("{} values for {} n", errors.len(), ns.len())));
    }
    if ns.len() < 3 {
        return Err(Error::param("ns", format!("need at least 3 points, got {}", ns.len())));
    }
    if let Some(e) = errors.iter().find(|e| !(**e > 0.0) || !e.is_finite()) {
        return Err(Error::param("errors", format!("must be positive and finite, got {e}")));
    }
    if ns.contains(&0) {
        return Err(Error::param("ns", "must be positive"));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    Ok(least_squares(&xs, &ys))
}
