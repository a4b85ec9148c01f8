//! Independent oracles and seeded generators shared by the integration tests.
//!
//! Nothing here calls into the index or Lorenz code paths under test; the
//! oracles work straight from `(count, value)` pairs.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random groups: `1..=max_groups` groups, counts `1..=10`, values in `[0, 100]`
/// with at least one positive value.
pub fn random_groups(rng: &mut impl Rng, max_groups: usize) -> Vec<(u64, f64)> {
    loop {
        let g = rng.random_range(1..=max_groups);
        let groups: Vec<(u64, f64)> = (0..g)
            .map(|_| {
                let value = if rng.random_bool(0.05) {
                    0.0
                } else {
                    rng.random_range(0.0..=100.0)
                };
                (rng.random_range(1..=10), value)
            })
            .collect();
        if groups.iter().any(|&(_, v)| v > 0.0) {
            return groups;
        }
    }
}

/// Sorted, merged kinks `(N(g), M(g))` including `(0, 0)`.
pub fn oracle_kinks(groups: &[(u64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted = groups.to_vec();
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1));
    let n: f64 = sorted.iter().map(|g| g.0 as f64).sum();
    let m: f64 = sorted.iter().map(|g| g.0 as f64 * g.1).sum();
    let mut out = vec![(0.0, 0.0)];
    let (mut cn, mut cm) = (0.0, 0.0);
    for (c, v) in sorted {
        cn += c as f64;
        cm += c as f64 * v;
        out.push((cn / n, cm / m));
    }
    out
}

/// Lorenz value by linear interpolation between oracle kinks.
pub fn oracle_lorenz(kinks: &[(f64, f64)], p: f64) -> f64 {
    for w in kinks.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if p <= x1 && x1 > x0 {
            return y0 + (p - x0) * (y1 - y0) / (x1 - x0);
        }
    }
    1.0
}

/// `1 - 2 ∫ L`, integrating the piecewise-linear curve exactly (trapezoids).
pub fn oracle_gini(groups: &[(u64, f64)]) -> f64 {
    let kinks = oracle_kinks(groups);
    let area: f64 = kinks
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[1].1 + w[0].1))
        .sum();
    1.0 - 2.0 * area
}

/// Largest vertical gap `N(g) - M(g)` over the kinks.
pub fn oracle_pietra_kinks(groups: &[(u64, f64)]) -> f64 {
    oracle_kinks(groups).iter().map(|&(x, y)| x - y).fold(0.0, f64::max)
}

/// Mean absolute deviation over twice the mean.
pub fn oracle_pietra_mad(groups: &[(u64, f64)]) -> f64 {
    let n: f64 = groups.iter().map(|g| g.0 as f64).sum();
    let mu = groups.iter().map(|g| g.0 as f64 * g.1).sum::<f64>() / n;
    let mad = groups.iter().map(|g| g.0 as f64 * (g.1 - mu).abs()).sum::<f64>() / n;
    mad / (2.0 * mu)
}

/// Plain bisection on `p + L(p) - 1` over `[1/2, 1]`.
pub fn oracle_kolkata(groups: &[(u64, f64)]) -> f64 {
    let kinks = oracle_kinks(groups);
    let (mut lo, mut hi) = (0.5, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid + oracle_lorenz(&kinks, mid) - 1.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Hirsch index straight from the definition: try every `h` from `m` down.
pub fn oracle_hirsch(counts: &[u64]) -> usize {
    let m = counts.len();
    (0..=m)
        .rev()
        .find(|&h| counts.iter().filter(|&&c| c >= h as u64).count() >= h)
        .unwrap_or(0)
}
