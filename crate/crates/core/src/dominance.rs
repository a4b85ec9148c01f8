//! Lorenz dominance between two curves and ranking by a single index.

use serde::{Deserialize, Serialize};

use crate::distributions::Distribution;
use crate::error::{Error, Result};
use crate::indices::{report, IndexKind};
use crate::lorenz::LorenzCurve;
use crate::numeric::bisect;

/// Sup-norm distance below which two curves are equal.
pub const EQUAL_TOL: f64 = 1e-10;
/// Differences at or below this magnitude count as contact, not a sign.
const CONTACT_TOL: f64 = 1e-12;
/// Grid used whenever an analytic curve is involved.
const ANALYTIC_GRID: usize = 2001;
/// Tie tolerance for [`rank_by_index`].
pub const RANK_TIE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `A` lies nowhere below `B` and strictly above somewhere.
    ADominatesB,
    BDominatesA,
    Equal,
    Crossing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceResult {
    pub verdict: Verdict,
    /// Interior points where the curves cross transversally.
    pub crossings: Vec<f64>,
}

fn sign(d: f64) -> i8 {
    if d > CONTACT_TOL {
        1
    } else if d < -CONTACT_TOL {
        -1
    } else {
        0
    }
}

/// Compares two Lorenz curves.
///
/// Two grouped curves are compared on the union of their kinks, where the
/// difference is piecewise linear and crossings are located exactly. If
/// either curve is analytic a 2001-point grid is used (plus any kinks) and
/// sign changes are refined by bisection.
pub fn compare(a: &LorenzCurve, b: &LorenzCurve) -> DominanceResult {
    let both_grouped = a.kinks().is_some() && b.kinks().is_some();
    let mut grid: Vec<f64> = Vec::new();
    if !both_grouped {
        grid.extend((0..ANALYTIC_GRID).map(|i| i as f64 / (ANALYTIC_GRID - 1) as f64));
    }
    for kinks in [a.kinks(), b.kinks()].into_iter().flatten() {
        grid.extend(kinks.iter().map(|&(p, _)| p));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let diff = |p: f64| a.eval_unchecked(p) - b.eval_unchecked(p);
    let values: Vec<f64> = grid.iter().map(|&p| diff(p)).collect();

    if values.iter().all(|d| d.abs() <= EQUAL_TOL) {
        return DominanceResult {
            verdict: Verdict::Equal,
            crossings: Vec::new(),
        };
    }

    let mut crossings = Vec::new();
    let mut last: Option<(usize, i8)> = None;
    let (mut above, mut below) = (false, false);
    for (i, &d) in values.iter().enumerate() {
        let s = sign(d);
        if s == 0 {
            continue;
        }
        above |= s > 0;
        below |= s < 0;
        if let Some((j, prev)) = last {
            if prev != s {
                let p = if i == j + 1 {
                    let (p0, p1, d0, d1) = (grid[j], grid[i], values[j], values[i]);
                    if both_grouped {
                        p0 + d0 * (p1 - p0) / (d0 - d1)
                    } else {
                        let orient = if prev > 0 { -1.0 } else { 1.0 };
                        bisect(|p| orient * diff(p), p0, p1, CONTACT_TOL).unwrap_or(0.5 * (p0 + p1))
                    }
                } else {
                    // the curves touch on grid[j+1..i]; report the first contact
                    grid[j + 1]
                };
                crossings.push(p);
            }
        }
        last = Some((i, s));
    }

    let verdict = if !crossings.is_empty() {
        Verdict::Crossing
    } else if above && !below {
        Verdict::ADominatesB
    } else if below && !above {
        Verdict::BDominatesA
    } else {
        Verdict::Equal
    };
    DominanceResult { verdict, crossings }
}

/// A distribution's position in an index ranking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedEntry {
    /// Position in the input list.
    pub index: usize,
    pub value: f64,
    /// 1-based competition rank; ties share a rank.
    pub rank: usize,
}

/// Sorts distributions from least to most unequal by `kind`.
pub fn rank_by_index(dists: &[Distribution], kind: IndexKind) -> Result<Vec<RankedEntry>> {
    if dists.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut entries = dists
        .iter()
        .enumerate()
        .map(|(index, d)| {
            Ok(RankedEntry {
                index,
                value: report(d)?.value(kind),
                rank: 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|x, y| x.value.total_cmp(&y.value));
    let mut anchor = 0;
    for i in 0..entries.len() {
        if (entries[i].value - entries[anchor].value).abs() > RANK_TIE_TOL {
            anchor = i;
        }
        entries[i].rank = anchor + 1;
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{AnalyticDistribution, GroupedDistribution, LorenzSegment};

    fn grouped(values: &[f64]) -> GroupedDistribution {
        GroupedDistribution::from_raw_samples(values).unwrap()
    }

    fn f_s() -> AnalyticDistribution {
        AnalyticDistribution::piecewise(vec![
            LorenzSegment::polynomial(0.0, 0.75, vec![0.0, 0.0, 1.0]),
            LorenzSegment::linear(0.75, 1.0, -0.75, 1.75),
        ])
        .unwrap()
    }

    #[test]
    fn worked_example_crossing() {
        let a = LorenzCurve::grouped(&grouped(&[20.0, 20.0, 30.0, 50.0]));
        let b = LorenzCurve::grouped(&grouped(&[15.0, 15.0, 42.0, 48.0]));
        let r = compare(&a, &b);
        assert_eq!(r.verdict, Verdict::Crossing);
        assert_eq!(r.crossings.len(), 1);
        assert!((r.crossings[0] - 17.0 / 24.0).abs() <= 1e-10);
        let swapped = compare(&b, &a);
        assert_eq!(swapped.crossings, r.crossings);
    }

    #[test]
    fn self_and_equality() {
        let a = LorenzCurve::grouped(&grouped(&[20.0, 20.0, 30.0, 50.0]));
        assert_eq!(compare(&a, &a).verdict, Verdict::Equal);
        let eq = LorenzCurve::grouped(&grouped(&[1.0]));
        assert_eq!(compare(&eq, &a).verdict, Verdict::ADominatesB);
        assert_eq!(compare(&a, &eq).verdict, Verdict::BDominatesA);
        // the same equality line in two representations
        let line = LorenzCurve::analytic(&AnalyticDistribution::power_law_lorenz(1.0).unwrap());
        assert_eq!(compare(&eq, &line).verdict, Verdict::Equal);
    }

    #[test]
    fn analytic_crossing_is_refined() {
        let u = LorenzCurve::analytic(&AnalyticDistribution::uniform(0.0, 1.0).unwrap());
        let p = LorenzCurve::analytic(&AnalyticDistribution::pareto(1.0, 2.0).unwrap());
        let r = compare(&u, &p);
        assert_eq!(r.verdict, Verdict::Crossing);
        assert_eq!(r.crossings.len(), 1);
        let x = r.crossings[0];
        assert!((u.eval(x).unwrap() - p.eval(x).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn tangential_contact_is_not_a_crossing() {
        // F_S agrees with p^2 on [0, 3/4] and lies above it afterwards
        let u = LorenzCurve::analytic(&AnalyticDistribution::uniform(0.0, 1.0).unwrap());
        let s = LorenzCurve::analytic(&f_s());
        let r = compare(&s, &u);
        assert_eq!(r.verdict, Verdict::ADominatesB);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn ranking() {
        let a: Distribution = grouped(&[20.0, 20.0, 30.0, 50.0]).into();
        let b: Distribution = grouped(&[15.0, 15.0, 42.0, 48.0]).into();
        for kind in [IndexKind::K, IndexKind::Gini, IndexKind::Pietra] {
            let order: Vec<usize> = rank_by_index(&[b.clone(), a.clone()], kind)
                .unwrap()
                .iter()
                .map(|e| e.index)
                .collect();
            assert_eq!(order, vec![1, 0]);
        }

        let u: Distribution = AnalyticDistribution::uniform(0.0, 1.0).unwrap().into();
        let s: Distribution = f_s().into();
        let by_k = rank_by_index(&[u.clone(), s.clone()], IndexKind::K).unwrap();
        assert_eq!(by_k.iter().map(|e| e.rank).collect::<Vec<_>>(), vec![1, 1]);
        let by_gini = rank_by_index(&[u, s], IndexKind::Gini).unwrap();
        assert_eq!(
            by_gini.iter().map(|e| (e.index, e.rank)).collect::<Vec<_>>(),
            vec![(1, 1), (0, 2)]
        );

        let single = rank_by_index(&[a], IndexKind::Pietra).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].rank, 1);
        assert_eq!(rank_by_index(&[], IndexKind::K), Err(Error::EmptyInput));
    }
}
