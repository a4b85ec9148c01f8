//! Dataset parsing, report serialization and curve export.
//!
//! Datasets are UTF-8 text with `#` comments and blank lines ignored, LF or
//! CRLF line endings, and `.` as the only decimal separator:
//!
//! * raw values: one non-negative income per line;
//! * grouped counts: `count,value` per line with a positive integer count.
//!
//! Numbers in JSON and TSV output are rounded to 12 significant digits so
//! the bytes are stable across runs and platforms.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::distributions::{AnalyticDistribution, Family, GroupedDistribution, LorenzSegment};
use crate::error::{Error, Result};
use crate::hindex::CitationProfile;
use crate::indices::{kolkata, IndexReport};
use crate::lorenz::{CurvePoint, LorenzCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    RawValues,
    GroupedCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFormat {
    Csv,
    Svg,
}

const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(bytes: &[u8]) -> Result<Vec<(usize, &str)>> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        parse_error(line, "invalid UTF-8")
    })?;
    Ok(text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn parse_income(line: usize, field: &str) -> Result<f64> {
    let value: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("invalid number {:?}", field.trim())))?;
    if !value.is_finite() {
        return Err(parse_error(line, "non-finite value"));
    }
    if value < 0.0 {
        return Err(parse_error(line, "negative value"));
    }
    Ok(value)
}

pub fn parse_dataset(bytes: &[u8], format: DatasetFormat) -> Result<GroupedDistribution> {
    let lines = data_lines(bytes)?;
    let mut groups = Vec::with_capacity(lines.len());
    for &(line, text) in &lines {
        let group = match format {
            DatasetFormat::RawValues => (1, parse_income(line, text)?),
            DatasetFormat::GroupedCounts => {
                let (count, value) = text
                    .split_once(',')
                    .ok_or_else(|| parse_error(line, "expected count,value"))?;
                let count: u64 = count
                    .trim()
                    .parse()
                    .map_err(|_| parse_error(line, format!("invalid count {:?}", count.trim())))?;
                if count == 0 {
                    return Err(parse_error(line, "count must be positive"));
                }
                (count, parse_income(line, value)?)
            }
        };
        groups.push(group);
    }
    GroupedDistribution::from_groups(&groups).map_err(|e| match e {
        Error::NegativeValue { index } | Error::NonPositiveCount { index } | Error::NonFiniteValue { index } => {
            parse_error(lines[index].0, e.to_string())
        }
        other => other,
    })
}

/// One non-negative integer citation count per line.
pub fn parse_citations(bytes: &[u8]) -> Result<CitationProfile> {
    let counts = data_lines(bytes)?
        .into_iter()
        .map(|(line, text)| {
            text.parse::<u64>()
                .map_err(|_| parse_error(line, format!("invalid citation count {text:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CitationProfile::new(&counts)
}

/// Serializes a distribution in the grouped-counts format.
pub fn write_grouped(dist: &GroupedDistribution) -> String {
    dist.groups().iter().fold(String::new(), |mut out, g| {
        let _ = writeln!(out, "{},{}", g.count, g.value);
        out
    })
}

fn round_value(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_significant(x)))
            {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut tree = serde_json::to_value(value).expect("plain data serializes");
    round_value(&mut tree);
    let mut out = serde_json::to_string_pretty(&tree).expect("value serializes");
    out.push('\n');
    out
}

const REPORT_KEYS: [&str; 8] = [
    "k",
    "normalized_k",
    "gini",
    "pietra",
    "mean",
    "pietra_arg",
    "median_to_mean",
    "disparity_at_k",
];

pub fn write_report(report: &IndexReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Tsv => {
            let values = [
                report.k,
                report.normalized_k,
                report.gini,
                report.pietra,
                report.mean,
                report.pietra_arg,
                report.median_to_mean,
                report.disparity_at_k,
            ];
            let row: Vec<String> = values
                .iter()
                .map(|&v| serde_json::to_string(&round_significant(v)).expect("finite"))
                .collect();
            format!("{}\n{}\n", REPORT_KEYS.join("\t"), row.join("\t"))
        }
    }
}

/// Reads a report written by [`write_report`] in JSON form.
pub fn read_report(json: &str) -> Result<IndexReport> {
    serde_json::from_str(json).map_err(|e| parse_error(e.line(), e.to_string()))
}

const SVG_SIZE: f64 = 640.0;
const SVG_MARGIN: f64 = 40.0;

fn svg_xy(p: f64, share: f64) -> (f64, f64) {
    let span = SVG_SIZE - 2.0 * SVG_MARGIN;
    (SVG_MARGIN + p * span, SVG_SIZE - SVG_MARGIN - share * span)
}

fn svg_path(points: &[CurvePoint], share: impl Fn(&CurvePoint) -> f64) -> String {
    let mut d = String::new();
    for (i, pt) in points.iter().enumerate() {
        let (x, y) = svg_xy(pt.p, share(pt));
        let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
    }
    d
}

/// Exports `points` evenly spaced samples (plus kinks for grouped curves).
///
/// CSV has columns `p,L,Lhat`. SVG is a 640×640 plot of the Lorenz curve,
/// the complementary curve and the equality diagonal with one marker at
/// `(k, 1 - k)`.
pub fn export_curve(curve: &LorenzCurve, points: usize, format: CurveFormat) -> Result<String> {
    let samples = curve.sample(points)?;
    match format {
        CurveFormat::Csv => {
            let mut out = String::from("p,L,Lhat\n");
            for pt in &samples {
                let _ = writeln!(out, "{},{},{}", pt.p, pt.lorenz, pt.complementary);
            }
            Ok(out)
        }
        CurveFormat::Svg => {
            let k = match curve {
                LorenzCurve::Grouped { dist, .. } => kolkata(&dist.clone().into())?,
                LorenzCurve::Analytic(d) => kolkata(&d.clone().into())?,
            };
            let (x0, y0) = svg_xy(0.0, 0.0);
            let (x1, y1) = svg_xy(1.0, 1.0);
            let (mx, my) = svg_xy(k, 1.0 - k);
            let mut out = String::new();
            let _ = writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
                s = SVG_SIZE
            );
            let _ = writeln!(
                out,
                r#"  <rect x="{x0}" y="{y1}" width="{w}" height="{w}" fill="none" stroke="black"/>"#,
                w = x1 - x0
            );
            let _ = writeln!(
                out,
                r##"  <line class="equality" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#888888" stroke-dasharray="4 4"/>"##
            );
            let _ = writeln!(
                out,
                r##"  <path class="lorenz" d="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
                svg_path(&samples, |pt| pt.lorenz)
            );
            let _ = writeln!(
                out,
                r##"  <path class="complementary" d="{}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
                svg_path(&samples, |pt| pt.complementary)
            );
            let _ = writeln!(
                out,
                r#"  <circle class="marker" cx="{mx:.3}" cy="{my:.3}" r="5" fill="black"/>"#
            );
            let _ = writeln!(
                out,
                r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14">k = {}</text>"#,
                mx + 8.0,
                my - 8.0,
                round_significant(k)
            );
            out.push_str("</svg>\n");
            Ok(out)
        }
    }
}

fn parse_number(spec: &str, text: &str) -> Result<f64> {
    let invalid = || Error::InvalidSpec {
        spec: spec.to_string(),
        reason: format!("invalid number {text:?}"),
    };
    let value = match text.split_once('/') {
        Some((num, den)) => {
            num.trim().parse::<f64>().map_err(|_| invalid())? / den.trim().parse::<f64>().map_err(|_| invalid())?
        }
        None => text.trim().parse().map_err(|_| invalid())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(invalid())
    }
}

/// Parses `family:key=value,...`.
///
/// | family        | keys                                     |
/// |---------------|------------------------------------------|
/// | `uniform`     | `a`, `b`                                 |
/// | `exponential` | `lambda`                                 |
/// | `pareto`      | `m`, `alpha`                             |
/// | `powerlaw`    | `n` (Lorenz `p^n`)                       |
/// | `circle`      | none (Lorenz `1 - sqrt(1 - p^2)`)        |
/// | `twogroup`    | `c`                                      |
/// | `piecewise`   | `kinks=p@L;p@L;...` (interior kinks)     |
///
/// Numbers may be decimals or fractions such as `7/8`.
pub fn parse_analytic(spec: &str) -> Result<AnalyticDistribution> {
    let bad = |reason: String| Error::InvalidSpec {
        spec: spec.to_string(),
        reason,
    };
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {item:?}")))?;
        pairs.push((key.trim(), value.trim()));
    }
    let take = |key: &str| -> Result<f64> {
        let (_, v) = pairs
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| bad(format!("missing parameter {key}")))?;
        parse_number(spec, v)
    };
    let allow = |keys: &[&str]| -> Result<()> {
        match pairs.iter().find(|(k, _)| !keys.contains(k)) {
            Some((k, _)) => Err(bad(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    };
    let family = match family.trim().to_ascii_lowercase().as_str() {
        "uniform" => {
            allow(&["a", "b"])?;
            Family::Uniform {
                a: take("a")?,
                b: take("b")?,
            }
        }
        "exponential" => {
            allow(&["lambda"])?;
            Family::Exponential {
                lambda: take("lambda")?,
            }
        }
        "pareto" => {
            allow(&["m", "alpha"])?;
            Family::Pareto {
                scale: take("m")?,
                shape: take("alpha")?,
            }
        }
        "powerlaw" => {
            allow(&["n"])?;
            Family::PowerLawLorenz { n: take("n")? }
        }
        "circle" => {
            allow(&[])?;
            Family::CircleArc
        }
        "twogroup" => {
            allow(&["c"])?;
            Family::TwoGroup { c: take("c")? }
        }
        "piecewise" => {
            allow(&["kinks"])?;
            let (_, raw) = pairs
                .iter()
                .find(|(k, _)| *k == "kinks")
                .ok_or_else(|| bad("missing parameter kinks".into()))?;
            let mut knots = vec![(0.0, 0.0)];
            for item in raw.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (p, l) = item
                    .split_once('@')
                    .ok_or_else(|| bad(format!("expected p@L, got {item:?}")))?;
                knots.push((parse_number(spec, p)?, parse_number(spec, l)?));
            }
            knots.push((1.0, 1.0));
            let segments = knots
                .windows(2)
                .map(|w| {
                    let ((p0, l0), (p1, l1)) = (w[0], w[1]);
                    let slope = (l1 - l0) / (p1 - p0);
                    LorenzSegment::linear(p0, p1, l0 - slope * p0, slope)
                })
                .collect();
            Family::PiecewiseLorenz { segments }
        }
        other => return Err(bad(format!("unknown family {other:?}"))),
    };
    AnalyticDistribution::new(family)
}
