//! Hirsch index and the fixed point of the generated citation curve.

use crate::error::{Error, Result};

/// Citation counts, one per paper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationProfile {
    /// Sorted nonincreasing.
    sorted: Vec<u64>,
}

impl CitationProfile {
    pub fn new(counts: &[u64]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut sorted = counts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { sorted })
    }

    /// Number of papers `m`.
    pub fn papers(&self) -> usize {
        self.sorted.len()
    }

    pub fn sorted_counts(&self) -> &[u64] {
        &self.sorted
    }

    /// Citations of the `t`-th most cited paper, 1-based.
    fn cited(&self, t: usize) -> f64 {
        self.sorted[t - 1] as f64
    }
}

/// Largest `H` such that the `H`-th most cited paper has at least `H` citations.
pub fn hirsch_index(profile: &CitationProfile) -> usize {
    profile
        .sorted
        .iter()
        .enumerate()
        .take_while(|&(i, &c)| c >= (i + 1) as u64)
        .count()
}

/// Fixed point `h̃` of the piecewise-linear curve through `(t, f(x_(t)))`,
/// `t = 1..=m`.
///
/// Requires `f(x_(1)) >= 1` and `f(x_(m)) <= m` so that the fixed point lies
/// in `[1, m]`. The curve is nonincreasing, so the fixed point is unique.
pub fn citation_curve_fixed_point(profile: &CitationProfile) -> Result<f64> {
    let m = profile.papers();
    if profile.cited(1) < 1.0 || profile.cited(m) > m as f64 {
        return Err(Error::NoFixedPointInRange);
    }
    if m == 1 {
        // single point (1, f) with f = 1 by the bracket
        return Ok(1.0);
    }
    for t in 1..m {
        let (y0, y1) = (profile.cited(t), profile.cited(t + 1));
        let t0 = t as f64;
        if y1 <= t0 + 1.0 {
            // y0 + (s - t0)(y1 - y0) = s on [t0, t0 + 1]
            return Ok(t0 + (y0 - t0) / (1.0 + y0 - y1));
        }
    }
    unreachable!("bracket guarantees a crossing by t = m")
}

/// Recovers `H*` from the fixed point: the boundary cases first, then
/// `floor(h̃)`.
pub fn hirsch_via_fixed_point(profile: &CitationProfile) -> usize {
    let m = profile.papers();
    if profile.cited(1) == 0.0 {
        return 0;
    }
    if profile.cited(m) >= m as f64 {
        return m;
    }
    let h = citation_curve_fixed_point(profile).expect("bracket holds outside the boundary cases");
    h.floor() as usize
}
