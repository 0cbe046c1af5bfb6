//! Command-line orchestration. The binary only parses flags and calls [`run`].

use std::path::PathBuf;

use clap::Parser;

use crate::dimension::{
    hausdorff_dimension, minkowski_partial_sums, minkowski_tail_bound, solve_golden_p,
    DimensionReport,
};
use crate::error::{Error, Result};
use crate::markov::{local_dimension_stats, optimize_markov, s_mu_to_depth, MarkovMeasure};
use crate::matrix::TransferMatrix;
use crate::oracle::{run_suite, SuiteConfig};
use crate::report::{
    Format, MeasureData, Mode, OptimizationReport, Report, ReportBody, SeriesReport,
    VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

/// Dimensions and entropy machinery for multiplicative subshifts of finite type.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "multishift", version)]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Matrix file: `m`, then `m` rows of `m` 0/1 entries.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Measure file: `m`, the initial vector, then `m` transition rows.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Series depth (`series`) or maximal enumeration length (`verify`).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Word length for `sample`.
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    /// Number of samples for `sample`.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        if self.mode == Mode::Sample && (self.n == 0 || self.count == 0) {
            return Err(Error::Domain("--n and --count must be positive".into()));
        }
        Ok(())
    }
}

/// Result of one run: the report, its rendering and the exit status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub rendered: String,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

fn load_matrix(config: &RunConfig, warnings: &mut Vec<String>) -> Result<TransferMatrix> {
    let text = std::fs::read_to_string(&config.matrix)
        .map_err(|e| Error::Io(format!("{}: {e}", config.matrix.display())))?;
    let a: TransferMatrix = text.parse()?;
    match a.clone().into_primitive() {
        Ok(a) => Ok(a),
        Err(err) => match config.mode {
            Mode::Dims | Mode::Optimize => Err(err),
            _ => {
                warnings.push(format!("warning: {err}"));
                Ok(a)
            }
        },
    }
}

/// The measure from `--measure`, or a default: the optimal golden measure
/// for the golden mean matrix, the uniform measure otherwise.
fn load_measure(config: &RunConfig, a: &TransferMatrix) -> Result<MarkovMeasure> {
    match &config.measure {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            MarkovMeasure::from_text(&text, a)
        }
        None if a.is_golden_mean() => MarkovMeasure::golden(solve_golden_p(1e-15)),
        None => Ok(MarkovMeasure::uniform(a.clone())),
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let mut warnings = Vec::new();
    let a = load_matrix(config, &mut warnings)?;
    let mut exit_code = EXIT_OK;
    let body = match config.mode {
        Mode::Dims => ReportBody::Dimensions(DimensionReport::compute(&a, config.tol)?),
        Mode::Verify => {
            let mu = load_measure(config, &a)?;
            let mut suite = SuiteConfig::default();
            if let Some(d) = config.depth {
                suite.n_max = d;
            }
            let verdicts = run_suite(&a, &mu, &suite)?;
            let all_passed = verdicts.iter().all(|v| v.passed);
            if !all_passed {
                exit_code = EXIT_VERIFICATION_FAILED;
            }
            ReportBody::Verification(VerificationReport {
                all_passed,
                verdicts,
            })
        }
        Mode::Optimize => {
            let opt = optimize_markov(&a, config.tol, config.seed)?;
            let h = hausdorff_dimension(&a, config.tol)?;
            ReportBody::Optimization(OptimizationReport {
                markov_class_supremum: opt.s_value,
                s_bits: opt.s_bits,
                hausdorff: h.estimate,
                measure: MeasureData::from(&opt.measure),
                series_depth: opt.depth,
                starts: opt.starts,
            })
        }
        Mode::Sample => {
            let mu = load_measure(config, &a)?;
            if !config.n.is_power_of_two() {
                warnings.push(format!(
                    "warning: n = {} is not a power of two; the local-dimension limit is stated along n = 2^l r",
                    config.n
                ));
            }
            ReportBody::Samples(local_dimension_stats(
                &mu,
                config.n,
                config.count,
                config.seed,
            )?)
        }
        Mode::Series => {
            let mu = load_measure(config, &a)?;
            let depth = config.depth.unwrap_or(30);
            let series = s_mu_to_depth(&mu, depth);
            ReportBody::Series(SeriesReport {
                minkowski_partial_sums: minkowski_partial_sums(&a, depth),
                minkowski_tail_bound: minkowski_tail_bound(&a, depth),
                entropy_terms: series.terms,
                entropy_partial_sum: series.partial,
                entropy_tail_bound: series.tail_bound,
                measure: MeasureData::from(&mu),
            })
        }
    };
    let report = Report::new(config.mode, config.tol, config.seed, &a, body);
    let rendered = report.render(config.format)?;
    if let Some(path) = &config.out {
        std::fs::write(path, &rendered)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome {
        report,
        rendered,
        exit_code,
        warnings,
    })
}

/// Runs and maps errors to exit status 1, printing to the standard streams.
pub fn main_with(config: &RunConfig) -> i32 {
    match run(config) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("{w}");
            }
            if config.out.is_none() {
                print!("{}", outcome.rendered);
            }
            outcome.exit_code
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INPUT_ERROR
        }
    }
}
