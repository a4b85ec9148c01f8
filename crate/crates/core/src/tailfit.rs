//! Power-law fit of the upper tail, `1 - L(p) ~ (1 - p)^alpha` for `p >= k`.

use serde::{Deserialize, Serialize};

use crate::distributions::GroupedDistribution;
use crate::error::{Error, Result};
use crate::indices::{kolkata_analytic, kolkata_discrete};
use crate::lorenz::LorenzCurve;

/// Distance kept from `p = 1`, where `log(1 - p)` diverges.
pub const ENDPOINT_GAP: f64 = 1e-3;
/// Grid size used for analytic curves.
pub const GRID_POINTS: usize = 200;
/// Minimum number of raw samples accepted by [`fit_tail_empirical`].
pub const MIN_SAMPLES: usize = 10;

/// Result of an OLS fit of `log(1 - L)` against `log(1 - p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub alpha: f64,
    /// Exponent of the inverted relation `1 - p ~ (1 - L)^nu`, i.e. `1 / alpha`.
    pub nu: f64,
    pub k_threshold: f64,
    pub points_used: usize,
    pub r2: f64,
    pub stderr: f64,
}

/// Fits the tail of `curve` on `[window_start, 1 - 1e-3]`.
///
/// The window starts at the curve's Kolkata index unless given. Grouped
/// curves regress on their kink points inside the window; analytic curves
/// (and the degenerate single-kink egalitarian curve) on a uniform grid.
pub fn fit_tail(curve: &LorenzCurve, window_start: Option<f64>) -> Result<TailFit> {
    let start = match window_start {
        Some(s) => s,
        None => match curve {
            LorenzCurve::Grouped { dist, .. } => kolkata_discrete(dist),
            LorenzCurve::Analytic(d) => kolkata_analytic(d)?,
        },
    };
    let end = 1.0 - ENDPOINT_GAP;
    if !(0.5..end).contains(&start) {
        return Err(Error::DegenerateWindow { start, end });
    }

    let points: Vec<(f64, f64)> = match curve.kinks() {
        Some(kinks) if !curve.is_egalitarian() => {
            kinks.iter().copied().filter(|&(p, _)| p >= start && p <= end).collect()
        }
        _ => (0..GRID_POINTS)
            .map(|i| {
                let p = start + (end - start) * i as f64 / (GRID_POINTS - 1) as f64;
                (p, curve.eval_unchecked(p))
            })
            .collect(),
    };
    let logs: Vec<(f64, f64)> = points
        .into_iter()
        .filter(|&(p, l)| p < 1.0 && l < 1.0)
        .map(|(p, l)| ((1.0 - p).ln(), (1.0 - l).ln()))
        .collect();
    if logs.len() < 3 {
        return Err(Error::InsufficientPoints { found: logs.len() });
    }

    let (slope, r2, stderr) = least_squares(&logs);
    Ok(TailFit {
        alpha: slope,
        nu: 1.0 / slope,
        k_threshold: start,
        points_used: logs.len(),
        r2,
        stderr,
    })
}

/// Builds a grouped distribution from raw samples and fits its tail on the
/// kink points.
pub fn fit_tail_empirical(samples: &[f64], window_start: Option<f64>) -> Result<TailFit> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientPoints { found: samples.len() });
    }
    let dist = GroupedDistribution::from_raw_samples(samples)?;
    fit_tail(&LorenzCurve::grouped(&dist), window_start)
}

/// Slope, coefficient of determination and slope standard error.
fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let ss_res = (syy - slope * sxy).max(0.0);
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    let stderr = (ss_res / (n - 2.0) / sxx).sqrt();
    (slope, r2, stderr)
}
