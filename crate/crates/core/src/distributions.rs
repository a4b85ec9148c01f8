//! Income distributions: grouped head-count data and analytic families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group of `count` people who each earn `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncomeGroup {
    pub count: u64,
    pub value: f64,
}

/// Discrete income distribution over groups with strictly increasing incomes.
///
/// Cumulative population shares `N(g)` and income shares `M(g)` are computed
/// once on construction; both end at exactly `1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedDistribution {
    groups: Vec<IncomeGroup>,
    population: u64,
    total_income: f64,
    mean: f64,
    cum_pop: Vec<f64>,
    cum_inc: Vec<f64>,
}

impl GroupedDistribution {
    /// Builds a distribution from one income per person.
    pub fn from_raw_samples(values: &[f64]) -> Result<Self> {
        let groups: Vec<(u64, f64)> = values.iter().map(|&v| (1, v)).collect();
        Self::from_groups(&groups)
    }

    /// Builds a distribution from `(count, value)` pairs in any order.
    /// Groups sharing a value are merged.
    pub fn from_groups(groups: &[(u64, f64)]) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &(count, value)) in groups.iter().enumerate() {
            if count == 0 {
                return Err(Error::NonPositiveCount { index });
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteValue { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeValue { index });
            }
        }
        if groups.iter().all(|&(_, v)| v == 0.0) {
            return Err(Error::AllZeroIncome);
        }

        let mut sorted: Vec<IncomeGroup> = groups
            .iter()
            .map(|&(count, value)| IncomeGroup { count, value })
            .collect();
        sorted.sort_by(|a, b| a.value.total_cmp(&b.value));
        let mut merged: Vec<IncomeGroup> = Vec::with_capacity(sorted.len());
        for g in sorted {
            match merged.last_mut() {
                // -0.0 and 0.0 compare equal, so they merge too
                Some(last) if last.value == g.value => last.count += g.count,
                _ => merged.push(g),
            }
        }
        for g in &mut merged {
            if g.value == 0.0 {
                g.value = 0.0;
            }
        }

        let population: u64 = merged.iter().map(|g| g.count).sum();
        let total_income: f64 = merged.iter().map(|g| g.count as f64 * g.value).sum();
        let mean = (total_income / population as f64).clamp(merged[0].value, merged[merged.len() - 1].value);

        let mut cum_pop = Vec::with_capacity(merged.len());
        let mut cum_inc = Vec::with_capacity(merged.len());
        let mut heads = 0u64;
        let mut income = 0.0;
        for g in &merged {
            heads += g.count;
            income += g.count as f64 * g.value;
            let p = heads as f64 / population as f64;
            cum_pop.push(p);
            cum_inc.push((income / total_income).min(p));
        }
        *cum_pop.last_mut().unwrap() = 1.0;
        *cum_inc.last_mut().unwrap() = 1.0;

        Ok(Self {
            groups: merged,
            population,
            total_income,
            mean,
            cum_pop,
            cum_inc,
        })
    }

    pub fn groups(&self) -> &[IncomeGroup] {
        &self.groups
    }

    /// Number of distinct income levels `G`.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    /// Always false; a valid distribution has at least one group.
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Total head count `N`.
    pub fn population(&self) -> u64 {
        self.population
    }

    /// Total income `M`.
    pub fn total_income(&self) -> f64 {
        self.total_income
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `N(g)` for `g = 1..=G`.
    pub fn cum_pop(&self) -> &[f64] {
        &self.cum_pop
    }

    /// `M(g)` for `g = 1..=G`.
    pub fn cum_inc(&self) -> &[f64] {
        &self.cum_inc
    }

    /// `N(g)` with the convention `N(0) = 0`.
    pub fn pop_share(&self, g: usize) -> f64 {
        if g == 0 {
            0.0
        } else {
            self.cum_pop[g - 1]
        }
    }

    /// `M(g)` with the convention `M(0) = 0`.
    pub fn income_share(&self, g: usize) -> f64 {
        if g == 0 {
            0.0
        } else {
            self.cum_inc[g - 1]
        }
    }

    /// True when everyone earns the same income.
    pub fn is_egalitarian(&self) -> bool {
        self.groups.len() == 1
    }

    /// Left-continuous quantile `F⁻¹(q) = inf { x : F(x) >= q }`.
    pub fn quantile(&self, q: f64) -> f64 {
        let idx = self.cum_pop.partition_point(|&p| p < q);
        self.groups[idx.min(self.groups.len() - 1)].value
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }
}

/// One piece of a piecewise Lorenz function: a polynomial in `p`
/// (coefficients in ascending powers) on `[start, end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzSegment {
    pub start: f64,
    pub end: f64,
    pub coeffs: Vec<f64>,
}

impl LorenzSegment {
    pub fn polynomial(start: f64, end: f64, coeffs: Vec<f64>) -> Self {
        Self { start, end, coeffs }
    }

    /// `intercept + slope * p` on `[start, end]`.
    pub fn linear(start: f64, end: f64, intercept: f64, slope: f64) -> Self {
        Self {
            start,
            end,
            coeffs: vec![intercept, slope],
        }
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * p + c)
    }

    pub fn slope(&self, p: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * p + i as f64 * c)
    }

    fn curvature(&self, p: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * p + (i * (i - 1)) as f64 * c)
    }

    /// Exact integral of the polynomial over the segment.
    pub fn integral(&self) -> f64 {
        let antiderivative = |p: f64| {
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (i, &c)| acc * p + c / (i + 1) as f64)
                * p
        };
        antiderivative(self.end) - antiderivative(self.start)
    }

    /// Maximizer of `p - L(p)` on the segment, relying on convexity of `L`.
    pub(crate) fn gap_maximizer(&self) -> f64 {
        let gap_slope = |p: f64| 1.0 - self.slope(p);
        if gap_slope(self.start) <= 0.0 {
            return self.start;
        }
        if gap_slope(self.end) >= 0.0 {
            return self.end;
        }
        match self.coeffs.len() {
            0..=2 => self.start,
            3 => ((1.0 - self.coeffs[1]) / (2.0 * self.coeffs[2])).clamp(self.start, self.end),
            _ => {
                // gap_slope is nonincreasing on a convex segment
                crate::numeric::bisect(|p| -gap_slope(p), self.start, self.end, 1e-15).unwrap_or(self.start)
            }
        }
    }
}

/// Analytic family tag together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Uniform incomes on `[a, b]`.
    Uniform { a: f64, b: f64 },
    /// Exponential incomes with rate `lambda`.
    Exponential { lambda: f64 },
    /// Pareto incomes with minimum `scale` and tail exponent `shape`.
    Pareto { scale: f64, shape: f64 },
    /// Lorenz function `p^n`.
    PowerLawLorenz { n: f64 },
    /// Lorenz function `1 - sqrt(1 - p^2)`.
    CircleArc,
    /// Two equal-income groups with the kink at population share `c`.
    TwoGroup { c: f64 },
    /// Lorenz function given directly as contiguous polynomial segments.
    PiecewiseLorenz { segments: Vec<LorenzSegment> },
}

/// A validated analytic distribution with closed-form Lorenz data.
///
/// Families defined directly by their Lorenz function carry no income scale;
/// their mean is reported as `1.0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticDistribution {
    family: Family,
}

const LORENZ_TOL: f64 = 1e-12;

impl AnalyticDistribution {
    pub fn new(family: Family) -> Result<Self> {
        fn check(ok: bool, name: &'static str, constraint: &'static str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::ParameterOutOfDomain { name, constraint })
            }
        }
        match &family {
            Family::Uniform { a, b } => {
                check(a.is_finite() && *a >= 0.0, "a", "a>=0")?;
                check(b.is_finite() && b > a, "b", "b>a")?;
            }
            Family::Exponential { lambda } => check(lambda.is_finite() && *lambda > 0.0, "lambda", "lambda>0")?,
            Family::Pareto { scale, shape } => {
                check(scale.is_finite() && *scale > 0.0, "m", "m>0")?;
                check(shape.is_finite() && *shape > 1.0, "alpha", "alpha>1")?;
            }
            Family::PowerLawLorenz { n } => check(n.is_finite() && *n >= 1.0, "n", "n>=1")?,
            Family::CircleArc => {}
            Family::TwoGroup { c } => check((0.5..1.0).contains(c), "c", "1/2<=c<1")?,
            Family::PiecewiseLorenz { segments } => validate_segments(segments)?,
        }
        Ok(Self { family })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::new(Family::Uniform { a, b })
    }

    pub fn exponential(lambda: f64) -> Result<Self> {
        Self::new(Family::Exponential { lambda })
    }

    pub fn pareto(scale: f64, shape: f64) -> Result<Self> {
        Self::new(Family::Pareto { scale, shape })
    }

    pub fn power_law_lorenz(n: f64) -> Result<Self> {
        Self::new(Family::PowerLawLorenz { n })
    }

    pub fn circle_arc() -> Self {
        Self {
            family: Family::CircleArc,
        }
    }

    pub fn two_group(c: f64) -> Result<Self> {
        Self::new(Family::TwoGroup { c })
    }

    pub fn piecewise(segments: Vec<LorenzSegment>) -> Result<Self> {
        Self::new(Family::PiecewiseLorenz { segments })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Lorenz function at `p`; callers guarantee `0 <= p <= 1`.
    pub fn lorenz(&self, p: f64) -> f64 {
        if p <= 0.0 {
            return 0.0;
        }
        if p >= 1.0 {
            return 1.0;
        }
        match &self.family {
            Family::Uniform { a, b } => p * (1.0 - (b - a) / (a + b) * (1.0 - p)),
            Family::Exponential { .. } => p + (1.0 - p) * (1.0 - p).ln(),
            Family::Pareto { shape, .. } => 1.0 - (1.0 - p).powf(1.0 - 1.0 / shape),
            Family::PowerLawLorenz { n } => p.powf(*n),
            Family::CircleArc => 1.0 - (1.0 - p * p).sqrt(),
            Family::TwoGroup { c } => two_group_lorenz(*c, p),
            Family::PiecewiseLorenz { segments } => segment_at(segments, p).eval(p),
        }
    }

    /// Left derivative `L'(p-)`, which equals `F⁻¹(p) / μ`.
    pub fn lorenz_slope(&self, p: f64) -> f64 {
        match &self.family {
            Family::Uniform { a, b } => {
                let c = (b - a) / (a + b);
                1.0 - c + 2.0 * c * p
            }
            Family::Exponential { .. } => -(1.0 - p).ln(),
            Family::Pareto { shape, .. } => (1.0 - 1.0 / shape) * (1.0 - p).powf(-1.0 / shape),
            Family::PowerLawLorenz { n } => n * p.powf(n - 1.0),
            Family::CircleArc => p / (1.0 - p * p).sqrt(),
            Family::TwoGroup { c } => {
                if p <= *c {
                    (1.0 - c) / c
                } else {
                    c / (1.0 - c)
                }
            }
            Family::PiecewiseLorenz { segments } => segment_at(segments, p).slope(p),
        }
    }

    /// Mean income; `1.0` for families specified by their Lorenz function.
    pub fn mean(&self) -> f64 {
        match &self.family {
            Family::Uniform { a, b } => 0.5 * (a + b),
            Family::Exponential { lambda } => 1.0 / lambda,
            Family::Pareto { scale, shape } => shape * scale / (shape - 1.0),
            _ => 1.0,
        }
    }

    /// Quantile function for families with an income scale.
    pub fn quantile(&self, q: f64) -> Option<f64> {
        match &self.family {
            Family::Uniform { a, b } => Some(a + (b - a) * q),
            Family::Exponential { lambda } => Some(-(1.0 - q).ln() / lambda),
            Family::Pareto { scale, shape } => Some(scale * (1.0 - q).powf(-1.0 / shape)),
            _ => None,
        }
    }

    /// Median-to-mean ratio `F⁻¹(1/2) / μ`.
    pub fn median_to_mean(&self) -> f64 {
        match self.quantile(0.5) {
            Some(median) => median / self.mean(),
            None => self.lorenz_slope(0.5),
        }
    }

    /// True when the Lorenz function is the equality diagonal.
    pub fn is_egalitarian(&self) -> bool {
        match &self.family {
            Family::PowerLawLorenz { n } => *n == 1.0,
            Family::TwoGroup { c } => *c == 0.5,
            Family::PiecewiseLorenz { segments } => segments.iter().all(|s| {
                (s.eval(s.start) - s.start).abs() <= LORENZ_TOL
                    && (s.eval(s.end) - s.end).abs() <= LORENZ_TOL
                    && s.coeffs.iter().skip(2).all(|&c| c == 0.0)
            }),
            _ => false,
        }
    }
}

fn two_group_lorenz(c: f64, p: f64) -> f64 {
    if p <= c {
        (1.0 - c) / c * p
    } else {
        (1.0 - c) + c / (1.0 - c) * (p - c)
    }
}

/// Segment whose half-open interval `(start, end]` contains `p` (the first
/// segment also owns `p = 0`).
pub(crate) fn segment_at(segments: &[LorenzSegment], p: f64) -> &LorenzSegment {
    let idx = segments.partition_point(|s| s.end < p);
    &segments[idx.min(segments.len() - 1)]
}

fn validate_segments(segments: &[LorenzSegment]) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidLorenz(msg));
    let (Some(first), Some(last)) = (segments.first(), segments.last()) else {
        return invalid("no segments".into());
    };
    if first.start != 0.0 || last.end != 1.0 {
        return invalid("segments must cover [0, 1]".into());
    }
    for (i, s) in segments.iter().enumerate() {
        if s.coeffs.is_empty() || s.coeffs.iter().any(|c| !c.is_finite()) {
            return invalid(format!("segment {i} has no finite coefficients"));
        }
        if s.start.partial_cmp(&s.end) != Some(std::cmp::Ordering::Less) {
            return invalid(format!("segment {i} is empty"));
        }
        if i > 0 {
            let prev = &segments[i - 1];
            if prev.end != s.start {
                return invalid(format!("gap between segments {} and {i}", i - 1));
            }
            if (prev.eval(s.start) - s.eval(s.start)).abs() > LORENZ_TOL {
                return invalid(format!("discontinuity at p={}", s.start));
            }
            if prev.slope(s.start) > s.slope(s.start) + 1e-9 {
                return invalid(format!("not convex at p={}", s.start));
            }
        }
    }
    if first.eval(0.0).abs() > LORENZ_TOL {
        return invalid("L(0) must be 0".into());
    }
    if (last.eval(1.0) - 1.0).abs() > LORENZ_TOL {
        return invalid("L(1) must be 1".into());
    }
    if first.slope(0.0) < -1e-12 {
        return invalid("L must be nondecreasing".into());
    }
    const PROBES: usize = 64;
    for (i, s) in segments.iter().enumerate() {
        for j in 0..=PROBES {
            let p = s.start + (s.end - s.start) * j as f64 / PROBES as f64;
            if s.curvature(p) < -1e-9 {
                return invalid(format!("segment {i} is not convex"));
            }
            if s.eval(p) > p + LORENZ_TOL {
                return invalid(format!("L(p) exceeds p at p={p}"));
            }
        }
    }
    Ok(())
}

/// Either kind of distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Grouped(GroupedDistribution),
    Analytic(AnalyticDistribution),
}

impl Distribution {
    pub fn mean(&self) -> f64 {
        match self {
            Distribution::Grouped(d) => d.mean(),
            Distribution::Analytic(d) => d.mean(),
        }
    }

    pub fn is_egalitarian(&self) -> bool {
        match self {
            Distribution::Grouped(d) => d.is_egalitarian(),
            Distribution::Analytic(d) => d.is_egalitarian(),
        }
    }
}

impl From<GroupedDistribution> for Distribution {
    fn from(d: GroupedDistribution) -> Self {
        Distribution::Grouped(d)
    }
}

impl From<AnalyticDistribution> for Distribution {
    fn from(d: AnalyticDistribution) -> Self {
        Distribution::Analytic(d)
    }
}
