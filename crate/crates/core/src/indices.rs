//! Inequality indices: Kolkata `k`, normalized `k`, Gini, Pietra and the
//! disparity function.
//!
//! Grouped distributions are handled exactly from their group totals.
//! Analytic families use closed forms where they exist and bisection on
//! `p + L(p) - 1` otherwise.

use serde::{Deserialize, Serialize};

use crate::distributions::{AnalyticDistribution, Distribution, Family, GroupedDistribution};
use crate::error::{Error, Result};
use crate::lorenz::LorenzCurve;
use crate::numeric::bisect;

/// Residual target for bisection on `p + L(p) - 1`.
pub const FIXED_POINT_TOL: f64 = 1e-12;

/// Slack allowed when checking `normalized_k <= pietra <= gini`.
pub const ORDERING_SLACK: f64 = 1e-12;

/// Relative tolerance for the Algorithm-A tie `N(g) + M(g) = 1`.
const TIE_TOL: f64 = 1e-12;

/// Relative tolerance for `n1² x1 = n2² x2`.
const COINCIDENCE_TOL: f64 = 1e-9;

/// Every index computed for one distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub k: f64,
    pub normalized_k: f64,
    pub gini: f64,
    pub pietra: f64,
    pub mean: f64,
    /// Population share `F(μ)` at which `p - L(p)` peaks.
    pub pietra_arg: f64,
    /// `F⁻¹(1/2) / μ`.
    pub median_to_mean: f64,
    /// `D(k) = k - 1/2`.
    pub disparity_at_k: f64,
}

/// Which index to rank by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexKind {
    /// Normalized Kolkata index `2k - 1`.
    K,
    Gini,
    Pietra,
}

impl IndexReport {
    pub fn value(&self, kind: IndexKind) -> f64 {
        match kind {
            IndexKind::K => self.normalized_k,
            IndexKind::Gini => self.gini,
            IndexKind::Pietra => self.pietra,
        }
    }
}

/// Kolkata index of grouped data by Algorithm-A.
///
/// Starting from the first group with `N(g) >= 1/2`, scan for the first `g*`
/// with `N(g*) + M(g*) >= 1`. On a tie `k = N(g*)`; otherwise `k` solves the
/// linear equation on segment `g*`:
///
/// `k = (μ (1 - M(g*-1)) + N(g*-1) x_{g*}) / (μ + x_{g*})`
pub fn kolkata_discrete(dist: &GroupedDistribution) -> f64 {
    if dist.is_egalitarian() {
        return 0.5;
    }
    let start = dist.cum_pop().partition_point(|&p| p < 0.5);
    for g in (start + 1)..=dist.len() {
        let total = dist.pop_share(g) + dist.income_share(g);
        if (total - 1.0).abs() <= TIE_TOL {
            return dist.pop_share(g);
        }
        if total > 1.0 {
            let mu = dist.mean();
            let x = dist.groups()[g - 1].value;
            return (mu * (1.0 - dist.income_share(g - 1)) + dist.pop_share(g - 1) * x) / (mu + x);
        }
    }
    unreachable!("N(G) + M(G) = 2 terminates the scan")
}

/// Kolkata index of an analytic family.
pub fn kolkata_analytic(dist: &AnalyticDistribution) -> Result<f64> {
    match dist.family() {
        Family::Uniform { a, b } => {
            let disc = (5.0 * a * a + 6.0 * a * b + 5.0 * b * b).sqrt();
            Ok((disc - (3.0 * a + b)) / (2.0 * (b - a)))
        }
        Family::TwoGroup { c } => Ok(*c),
        Family::CircleArc => Ok(std::f64::consts::FRAC_1_SQRT_2),
        _ => kolkata_by_bisection(&LorenzCurve::analytic(dist)),
    }
}

/// Solves `p + L(p) = 1` on `[1/2, 1]` by bisection for any curve.
pub fn kolkata_by_bisection(curve: &LorenzCurve) -> Result<f64> {
    bisect(|p| p + curve.eval_unchecked(p) - 1.0, 0.5, 1.0, FIXED_POINT_TOL)
}

pub fn kolkata(dist: &Distribution) -> Result<f64> {
    match dist {
        Distribution::Grouped(d) => Ok(kolkata_discrete(d)),
        Distribution::Analytic(d) => kolkata_analytic(d),
    }
}

/// Gini index of grouped data as the double sum
/// `Σ_t Σ_g n_t n_g |x_t - x_g| / (2 N M)`.
pub fn gini_discrete(dist: &GroupedDistribution) -> f64 {
    let groups = dist.groups();
    let mut acc = 0.0;
    for (i, hi) in groups.iter().enumerate() {
        for lo in &groups[..i] {
            acc += (hi.count as f64) * (lo.count as f64) * (hi.value - lo.value);
        }
    }
    // each unordered pair appears twice in the full sum
    acc / (dist.population() as f64 * dist.total_income())
}

pub fn gini_analytic(dist: &AnalyticDistribution) -> f64 {
    match dist.family() {
        Family::Uniform { a, b } => (b - a) / (3.0 * (a + b)),
        Family::Exponential { .. } => 0.5,
        Family::Pareto { shape, .. } => 1.0 / (2.0 * shape - 1.0),
        Family::PowerLawLorenz { n } => 1.0 - 2.0 / (n + 1.0),
        Family::CircleArc => std::f64::consts::FRAC_PI_2 - 1.0,
        Family::TwoGroup { c } => 2.0 * c - 1.0,
        Family::PiecewiseLorenz { segments } => {
            let area: f64 = segments.iter().map(|s| s.integral()).sum();
            1.0 - 2.0 * area
        }
    }
}

pub fn gini(dist: &Distribution) -> f64 {
    match dist {
        Distribution::Grouped(d) => gini_discrete(d),
        Distribution::Analytic(d) => gini_analytic(d),
    }
}

/// Index `g̃` (1-based) of the last group with `x_g <= μ`, or `None` when the
/// mean is at or above the top income.
fn group_below_mean(dist: &GroupedDistribution) -> Option<usize> {
    let mu = dist.mean();
    let below = dist.groups().partition_point(|g| g.value <= mu);
    (below < dist.len()).then_some(below)
}

/// Pietra index of grouped data: `Σ_{g <= g̃} n_g (μ - x_g) / M` where
/// `μ ∈ [x_g̃, x_{g̃+1})`.
pub fn pietra_discrete(dist: &GroupedDistribution) -> f64 {
    let Some(top) = group_below_mean(dist) else {
        return 0.0;
    };
    let mu = dist.mean();
    let gap: f64 = dist.groups()[..top]
        .iter()
        .map(|g| g.count as f64 * (mu - g.value))
        .sum();
    gap / dist.total_income()
}

pub fn pietra_analytic(dist: &AnalyticDistribution) -> f64 {
    match dist.family() {
        Family::Uniform { a, b } => (b - a) / (4.0 * (a + b)),
        Family::Exponential { .. } => (-1.0f64).exp(),
        Family::Pareto { shape, .. } => (shape - 1.0).powf(shape - 1.0) / shape.powf(*shape),
        Family::PowerLawLorenz { n } => {
            if *n == 1.0 {
                0.0
            } else {
                let p = n.powf(-1.0 / (n - 1.0));
                p * (1.0 - 1.0 / n)
            }
        }
        Family::CircleArc => std::f64::consts::SQRT_2 - 1.0,
        Family::TwoGroup { c } => 2.0 * c - 1.0,
        Family::PiecewiseLorenz { segments } => segments
            .iter()
            .map(|s| {
                let p = s.gap_maximizer();
                p - s.eval(p)
            })
            .fold(0.0, f64::max),
    }
}

pub fn pietra(dist: &Distribution) -> f64 {
    match dist {
        Distribution::Grouped(d) => pietra_discrete(d),
        Distribution::Analytic(d) => pietra_analytic(d),
    }
}

/// Population share `F(μ)` where the Pietra gap `p - L(p)` is maximal.
///
/// For an egalitarian distribution every income equals the mean and this is `1`.
pub fn pietra_arg(dist: &Distribution) -> f64 {
    match dist {
        Distribution::Grouped(d) => match group_below_mean(d) {
            Some(g) => d.pop_share(g),
            None => 1.0,
        },
        Distribution::Analytic(d) => match d.family() {
            Family::Uniform { .. } => 0.5,
            Family::Exponential { .. } => 1.0 - (-1.0f64).exp(),
            Family::Pareto { shape, .. } => 1.0 - ((shape - 1.0) / shape).powf(*shape),
            Family::PowerLawLorenz { n } => {
                if *n == 1.0 {
                    1.0
                } else {
                    n.powf(-1.0 / (n - 1.0))
                }
            }
            Family::CircleArc => std::f64::consts::FRAC_1_SQRT_2,
            Family::TwoGroup { c } => {
                if *c == 0.5 {
                    1.0
                } else {
                    *c
                }
            }
            Family::PiecewiseLorenz { segments } => {
                if d.is_egalitarian() {
                    return 1.0;
                }
                let mut best = (0.0, f64::NEG_INFINITY);
                for s in segments {
                    let p = s.gap_maximizer();
                    let gap = p - s.eval(p);
                    if gap > best.1 {
                        best = (p, gap);
                    }
                }
                best.0
            }
        },
    }
}

fn median_to_mean(dist: &Distribution) -> f64 {
    match dist {
        Distribution::Grouped(d) => d.median() / d.mean(),
        Distribution::Analytic(d) => d.median_to_mean(),
    }
}

/// Across-group disparity `D(p) = (p - L(p)) / 2` when society is split at
/// population share `p`.
pub fn disparity(curve: &LorenzCurve, p: f64) -> Result<f64> {
    Ok(0.5 * (p - curve.eval(p)?))
}

/// Computes every index and checks `normalized_k <= pietra <= gini`.
pub fn report(dist: &Distribution) -> Result<IndexReport> {
    let k = kolkata(dist)?;
    let normalized_k = 2.0 * k - 1.0;
    let gini = gini(dist);
    let pietra = pietra(dist);
    if normalized_k > pietra + ORDERING_SLACK || pietra > gini + ORDERING_SLACK {
        return Err(Error::OrderingViolation {
            normalized_k,
            pietra,
            gini,
        });
    }
    Ok(IndexReport {
        k,
        normalized_k,
        gini,
        pietra,
        mean: dist.mean(),
        pietra_arg: pietra_arg(dist),
        median_to_mean: median_to_mean(dist),
        disparity_at_k: k - 0.5,
    })
}

/// Which of the two ways for `2k - 1`, Pietra and Gini to coincide applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coincidence {
    /// One income level.
    C1Egalitarian,
    /// Two groups with `n1 > n2` and `n1² x1 = n2² x2`.
    C2TwoGroup,
    NoCoincidence,
}

pub fn coincidence_check(dist: &GroupedDistribution) -> Coincidence {
    match dist.groups() {
        [_] => Coincidence::C1Egalitarian,
        [lo, hi] if lo.count > hi.count => {
            let left = (lo.count as f64).powi(2) * lo.value;
            let right = (hi.count as f64).powi(2) * hi.value;
            if (left - right).abs() <= COINCIDENCE_TOL * left.abs().max(right.abs()) {
                Coincidence::C2TwoGroup
            } else {
                Coincidence::NoCoincidence
            }
        }
        _ => Coincidence::NoCoincidence,
    }
}
