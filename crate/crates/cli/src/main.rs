//! `ineq`: batch front end for the inequality index library.

use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ineq_core::dominance::{compare, DominanceResult};
use ineq_core::hindex::{citation_curve_fixed_point, hirsch_index};
use ineq_core::indices::report;
use ineq_core::io::{
    export_curve, parse_analytic, parse_citations, parse_dataset, to_json, write_report, CurveFormat, DatasetFormat,
    ReportFormat,
};
use ineq_core::tailfit::{fit_tail, MIN_SAMPLES};
use ineq_core::{Distribution, Error as CoreError, IndexReport, LorenzCurve};

const ANALYTIC_HELP: &str = "\
Analytic distributions are written FAMILY[:KEY=VALUE,...]:
  uniform:a=A,b=B          uniform incomes on [A, B]
  exponential:lambda=L     exponential incomes with rate L
  pareto:m=M,alpha=A       Pareto incomes, minimum M, tail exponent A > 1
  powerlaw:n=N             Lorenz curve p^N
  circle                   Lorenz curve 1 - sqrt(1 - p^2)
  twogroup:c=C             two-group Lorenz curve with kink at p = C
  piecewise:kinks=P@L;...  piecewise-linear Lorenz curve through interior kinks
Numbers may be fractions, e.g. twogroup:c=3/4.";

#[derive(Parser)]
#[command(name = "ineq", version, about = "Lorenz curves and inequality indices", after_help = ANALYTIC_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute k, normalized k, Gini and Pietra indices.
    Compute {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = ReportOut::Json)]
        out: ReportOut,
    },
    /// Lorenz dominance between two distributions.
    Compare {
        #[arg(
            long,
            value_name = "FILE",
            required_unless_present = "analytic_a",
            conflicts_with = "analytic_a"
        )]
        a: Option<PathBuf>,
        #[arg(
            long,
            value_name = "FILE",
            required_unless_present = "analytic_b",
            conflicts_with = "analytic_b"
        )]
        b: Option<PathBuf>,
        #[arg(long, value_name = "SPEC")]
        analytic_a: Option<String>,
        #[arg(long, value_name = "SPEC")]
        analytic_b: Option<String>,
        #[arg(long, value_enum, default_value_t = InputFormat::Raw)]
        format: InputFormat,
    },
    /// Export Lorenz curve samples as CSV or SVG.
    Lorenz {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, value_enum, default_value_t = CurveOut::Csv)]
        out: CurveOut,
        /// Output file; stdout when omitted.
        #[arg(long)]
        dest: Option<PathBuf>,
    },
    /// Fit the power-law tail 1 - L(p) ~ (1 - p)^alpha beyond k.
    Tailfit {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        window_start: Option<f64>,
    },
    /// Hirsch index of a citation list (one count per line).
    Hindex {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct Source {
    /// Dataset file.
    #[arg(
        long,
        value_name = "FILE",
        required_unless_present = "analytic",
        conflicts_with = "analytic"
    )]
    input: Option<PathBuf>,
    /// Analytic distribution, see the list below.
    #[arg(long, value_name = "SPEC")]
    analytic: Option<String>,
    #[arg(long, value_enum, default_value_t = InputFormat::Raw)]
    format: InputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Raw,
    Grouped,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportOut {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveOut {
    Csv,
    Svg,
}

impl From<InputFormat> for DatasetFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Raw => DatasetFormat::RawValues,
            InputFormat::Grouped => DatasetFormat::GroupedCounts,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Core(Option<PathBuf>, CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(Some(path), e) => write!(f, "{}: {e}", path.display()),
            CliError::Core(None, e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(None, e)
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load(path: Option<&Path>, analytic: Option<&str>, format: InputFormat) -> Result<Distribution, CliError> {
    match (path, analytic) {
        (Some(path), _) => parse_dataset(&read(path)?, format.into())
            .map(Distribution::from)
            .map_err(|e| CliError::Core(Some(path.to_path_buf()), e)),
        (None, Some(spec)) => Ok(parse_analytic(spec)?.into()),
        (None, None) => unreachable!("clap enforces one source"),
    }
}

impl Source {
    fn load(&self) -> Result<Distribution, CliError> {
        load(self.input.as_deref(), self.analytic.as_deref(), self.format)
    }
}

#[derive(Serialize)]
struct CompareOutput {
    #[serde(flatten)]
    dominance: DominanceResult,
    a: IndexReport,
    b: IndexReport,
}

#[derive(Serialize)]
struct HindexOutput {
    papers: usize,
    h_index: usize,
    /// `null` when the citation curve has no fixed point in `[1, m]`.
    fixed_point: Option<f64>,
}

fn run(cli: Cli) -> Result<Vec<u8>, CliError> {
    let out = match cli.command {
        Command::Compute { source, out } => {
            let r = report(&source.load()?)?;
            let format = match out {
                ReportOut::Json => ReportFormat::Json,
                ReportOut::Tsv => ReportFormat::Tsv,
            };
            write_report(&r, format)
        }
        Command::Compare {
            a,
            b,
            analytic_a,
            analytic_b,
            format,
        } => {
            let da = load(a.as_deref(), analytic_a.as_deref(), format)?;
            let db = load(b.as_deref(), analytic_b.as_deref(), format)?;
            let dominance = compare(&LorenzCurve::new(&da), &LorenzCurve::new(&db));
            to_json(&CompareOutput {
                dominance,
                a: report(&da)?,
                b: report(&db)?,
            })
        }
        Command::Lorenz {
            source,
            points,
            out,
            dest,
        } => {
            let curve = LorenzCurve::new(&source.load()?);
            let format = match out {
                CurveOut::Csv => CurveFormat::Csv,
                CurveOut::Svg => CurveFormat::Svg,
            };
            let body = export_curve(&curve, points, format)?;
            match dest {
                Some(path) => {
                    fs::write(&path, body).map_err(|e| CliError::Io(path, e))?;
                    String::new()
                }
                None => body,
            }
        }
        Command::Tailfit { source, window_start } => {
            let dist = source.load()?;
            if let Distribution::Grouped(g) = &dist {
                if g.population() < MIN_SAMPLES as u64 {
                    return Err(CoreError::InsufficientPoints {
                        found: g.population() as usize,
                    }
                    .into());
                }
            }
            to_json(&fit_tail(&LorenzCurve::new(&dist), window_start)?)
        }
        Command::Hindex { input } => {
            let profile = parse_citations(&read(&input)?).map_err(|e| CliError::Core(Some(input.clone()), e))?;
            to_json(&HindexOutput {
                papers: profile.papers(),
                h_index: hirsch_index(&profile),
                fixed_point: citation_curve_fixed_point(&profile).ok(),
            })
        }
    };
    Ok(out.into_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(bytes) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&bytes).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let stderr = std::io::stderr();
            let color = stderr.is_terminal() && std::env::var_os("INEQ_NO_COLOR").is_none();
            let prefix = if color { "\x1b[31merror:\x1b[0m" } else { "error:" };
            let _ = writeln!(stderr.lock(), "{prefix} {e}");
            ExitCode::from(1)
        }
    }
}
