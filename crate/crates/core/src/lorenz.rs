//! Exact evaluation of Lorenz, complementary Lorenz and inverse Lorenz functions.

use serde::{Deserialize, Serialize};

use crate::distributions::{AnalyticDistribution, Distribution, Family, GroupedDistribution};
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Default tolerance for [`LorenzCurve::is_symmetric`].
pub const SYMMETRY_TOL: f64 = 1e-9;

const SYMMETRY_GRID: usize = 1000;
const INVERSE_TOL: f64 = 1e-12;

/// A point on the curve: population share, Lorenz value and complementary value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub lorenz: f64,
    pub complementary: f64,
}

/// A Lorenz curve: an exact kink list for grouped data or a closed form for
/// analytic families.
#[derive(Debug, Clone, PartialEq)]
pub enum LorenzCurve {
    Grouped {
        dist: GroupedDistribution,
        /// `(N(g), M(g))` for `g = 0..=G`, starting at `(0, 0)` and ending at `(1, 1)`.
        kinks: Vec<(f64, f64)>,
    },
    Analytic(AnalyticDistribution),
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainError { value: x })
    }
}

impl LorenzCurve {
    pub fn grouped(dist: &GroupedDistribution) -> Self {
        let kinks = std::iter::once((0.0, 0.0))
            .chain(dist.cum_pop().iter().copied().zip(dist.cum_inc().iter().copied()))
            .collect();
        LorenzCurve::Grouped {
            dist: dist.clone(),
            kinks,
        }
    }

    pub fn analytic(dist: &AnalyticDistribution) -> Self {
        LorenzCurve::Analytic(dist.clone())
    }

    pub fn new(dist: &Distribution) -> Self {
        match dist {
            Distribution::Grouped(d) => Self::grouped(d),
            Distribution::Analytic(d) => Self::analytic(d),
        }
    }

    /// Kink points for grouped curves.
    pub fn kinks(&self) -> Option<&[(f64, f64)]> {
        match self {
            LorenzCurve::Grouped { kinks, .. } => Some(kinks),
            LorenzCurve::Analytic(_) => None,
        }
    }

    pub fn is_egalitarian(&self) -> bool {
        match self {
            LorenzCurve::Grouped { dist, .. } => dist.is_egalitarian(),
            LorenzCurve::Analytic(d) => d.is_egalitarian(),
        }
    }

    /// `L(p)`.
    pub fn eval(&self, p: f64) -> Result<f64> {
        check_unit(p)?;
        Ok(self.eval_unchecked(p))
    }

    /// `L̂(p) = 1 - L(p)`: income share of the richest `1 - p`.
    pub fn complementary(&self, p: f64) -> Result<f64> {
        Ok(1.0 - self.eval(p)?)
    }

    pub(crate) fn eval_unchecked(&self, p: f64) -> f64 {
        match self {
            LorenzCurve::Grouped { dist, kinks } => {
                // g is the 1-based group with p in (N(g-1), N(g)]
                let g = kinks.partition_point(|&(x, _)| x < p);
                if g == 0 {
                    return 0.0;
                }
                let (x, y) = kinks[g];
                if x == p {
                    return y;
                }
                let (x0, y0) = kinks[g - 1];
                let slope = dist.groups()[g - 1].value / dist.mean();
                (y0 + (p - x0) * slope).min(y)
            }
            LorenzCurve::Analytic(d) => d.lorenz(p),
        }
    }

    /// Smallest `p` with `L(p) = s`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        check_unit(s)?;
        if s == 0.0 {
            return Ok(0.0);
        }
        if s == 1.0 {
            // smallest preimage of 1 is 1 unless the top group earns nothing,
            // which the AllZeroIncome guard rules out
            return Ok(1.0);
        }
        match self {
            LorenzCurve::Grouped { kinks, .. } => {
                let g = kinks.partition_point(|&(_, y)| y < s);
                let (x1, y1) = kinks[g];
                if y1 == s {
                    return Ok(x1);
                }
                let (x0, y0) = kinks[g - 1];
                Ok((x0 + (s - y0) * (x1 - x0) / (y1 - y0)).clamp(x0, x1))
            }
            LorenzCurve::Analytic(d) => analytic_inverse(d, s),
        }
    }

    /// Checks `|L(L̂(p)) - (1 - p)| <= tol` on an evenly spaced 1001-point grid.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..=SYMMETRY_GRID).all(|i| {
            let p = i as f64 / SYMMETRY_GRID as f64;
            let hat = 1.0 - self.eval_unchecked(p);
            (self.eval_unchecked(hat) - (1.0 - p)).abs() <= tol
        })
    }

    /// Evenly spaced samples, merged with every kink of a grouped curve.
    pub fn sample(&self, count: usize) -> Result<Vec<CurvePoint>> {
        if count < 2 {
            return Err(Error::CountTooSmall { count, min: 2 });
        }
        let mut ps: Vec<f64> = (0..count).map(|i| i as f64 / (count - 1) as f64).collect();
        if let Some(kinks) = self.kinks() {
            ps.extend(kinks.iter().map(|&(x, _)| x));
            ps.sort_by(f64::total_cmp);
            ps.dedup();
        }
        Ok(ps
            .into_iter()
            .map(|p| {
                let lorenz = self.eval_unchecked(p);
                CurvePoint {
                    p,
                    lorenz,
                    complementary: 1.0 - lorenz,
                }
            })
            .collect())
    }
}

fn analytic_inverse(d: &AnalyticDistribution, s: f64) -> Result<f64> {
    let p = match d.family() {
        Family::Uniform { a, b } => {
            // c p^2 + (1 - c) p - s = 0
            let c = (b - a) / (a + b);
            if c == 0.0 {
                s
            } else {
                let one_minus = 1.0 - c;
                2.0 * s / (one_minus + (one_minus * one_minus + 4.0 * c * s).sqrt())
            }
        }
        Family::Pareto { shape, .. } => 1.0 - (1.0 - s).powf(1.0 / (1.0 - 1.0 / shape)),
        Family::PowerLawLorenz { n } => s.powf(1.0 / n),
        Family::CircleArc => (1.0 - (1.0 - s) * (1.0 - s)).sqrt(),
        Family::TwoGroup { c } => {
            let at_kink = 1.0 - c;
            if s <= at_kink {
                s * c / (1.0 - c)
            } else {
                c + (s - at_kink) * (1.0 - c) / c
            }
        }
        Family::PiecewiseLorenz { segments } => {
            let idx = segments
                .partition_point(|seg| seg.eval(seg.end) < s)
                .min(segments.len() - 1);
            let seg = &segments[idx];
            bisect(|p| seg.eval(p) - s, seg.start, seg.end, INVERSE_TOL)?
        }
        Family::Exponential { .. } => bisect(|p| d.lorenz(p) - s, 0.0, 1.0, INVERSE_TOL)?,
    };
    Ok(p.clamp(0.0, 1.0))
}
