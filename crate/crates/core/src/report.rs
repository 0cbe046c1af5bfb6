//! Machine-readable report documents and their text renderings.
//!
//! The JSON layout is versioned by [`SCHEMA_ID`]; see `docs/report_schema.md`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dimension::{DimensionReport, Estimate};
use crate::error::{Error, Result};
use crate::markov::{MarkovMeasure, SampleBatch};
use crate::matrix::TransferMatrix;
use crate::oracle::OracleVerdict;

pub const SCHEMA_ID: &str = "multishift.report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Dims,
    Verify,
    Optimize,
    Sample,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Initial vector and transition rows of a measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureData {
    pub initial: Vec<f64>,
    pub transitions: Vec<Vec<f64>>,
}

impl From<&MarkovMeasure> for MeasureData {
    fn from(mu: &MarkovMeasure) -> Self {
        Self {
            initial: mu.initial().to_vec(),
            transitions: (0..mu.m()).map(|i| mu.transition_row(i).to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    /// Best `s(μ)` over Markov measures, in base-`m` units.
    pub markov_class_supremum: f64,
    pub s_bits: f64,
    /// The t-system value, for comparison.
    pub hausdorff: Estimate,
    pub measure: MeasureData,
    pub series_depth: usize,
    pub starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub minkowski_partial_sums: Vec<f64>,
    pub minkowski_tail_bound: f64,
    /// `H^μ(α_k) / 2^(k+1)` in bits.
    pub entropy_terms: Vec<f64>,
    pub entropy_partial_sum: f64,
    pub entropy_tail_bound: f64,
    pub measure: MeasureData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub all_passed: bool,
    pub verdicts: Vec<OracleVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Dimensions(DimensionReport),
    Verification(VerificationReport),
    Optimization(OptimizationReport),
    Samples(SampleBatch),
    Series(SeriesReport),
}

/// Top-level document written by every mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub mode: Mode,
    pub tolerance: f64,
    pub seed: u64,
    pub matrix: Vec<Vec<u8>>,
    pub result: ReportBody,
}

impl Report {
    pub fn new(
        mode: Mode,
        tolerance: f64,
        seed: u64,
        a: &TransferMatrix,
        result: ReportBody,
    ) -> Self {
        Self {
            schema: SCHEMA_ID.to_string(),
            mode,
            tolerance,
            seed,
            matrix: a
                .rows()
                .map(|r| r.iter().map(|&b| b as u8).collect())
                .collect(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if report.schema != SCHEMA_ID {
            return Err(Error::Domain(format!(
                "unsupported report schema {:?}",
                report.schema
            )));
        }
        Ok(report)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
            Format::Table => Ok(self.to_table()),
        }
    }

    fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        match &self.result {
            ReportBody::Samples(batch) => batch.write_csv(&mut buf)?,
            ReportBody::Verification(v) => write_verdicts_csv(&v.verdicts, &mut buf)?,
            _ => {
                let mut w = csv::Writer::from_writer(&mut buf);
                let io = |e: csv::Error| Error::Io(e.to_string());
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in self.key_values() {
                    w.write_record([k, v]).map_err(io)?;
                }
                w.flush()?;
            }
        }
        Ok(String::from_utf8(buf).expect("csv is utf-8"))
    }

    fn to_table(&self) -> String {
        match &self.result {
            ReportBody::Verification(v) => verdict_table(&v.verdicts),
            ReportBody::Samples(batch) => {
                let mut out = format!(
                    "n = {}  samples = {}  seed = {}  mean local dim = {:.10}  std dev = {:.10}{}\n",
                    batch.n,
                    batch.words.len(),
                    batch.seed,
                    batch.mean,
                    batch.std_dev,
                    if batch.dyadic { "" } else { "  (n is not a power of two)" }
                );
                for (i, (w, d)) in batch.words.iter().zip(&batch.local_dims).enumerate() {
                    writeln!(out, "{i:>8}  {d:.10}  {w}").unwrap();
                }
                out
            }
            _ => {
                let rows = self.key_values();
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                rows.iter()
                    .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                    .collect()
            }
        }
    }

    fn key_values(&self) -> Vec<(String, String)> {
        let mut kv: Vec<(String, String)> = vec![
            ("schema".into(), self.schema.clone()),
            ("tolerance".into(), format!("{:e}", self.tolerance)),
        ];
        let mut push = |k: &str, v: String| kv.push((k.to_string(), v));
        let fmt_vec = |v: &[f64]| v.iter().map(|x| real(*x)).collect::<Vec<_>>().join(" ");
        match &self.result {
            ReportBody::Dimensions(d) => {
                push("hausdorff", real(d.hausdorff.value));
                push("hausdorff_bound", format!("{:e}", d.hausdorff.bound()));
                push("minkowski", real(d.minkowski.value));
                push("minkowski_bound", format!("{:e}", d.minkowski.bound()));
                push("dims_equal", d.dims_equal.to_string());
                if let Some(g) = &d.golden {
                    push("golden_p", real(g.p));
                    push("golden_minus_log2_p", real(g.minus_log2_p));
                    push("golden_entropy_closed_form", real(g.entropy_closed_form));
                }
                push("truncation_depth", d.method.truncation_depth.to_string());
                push("max_row_sum", d.method.max_row_sum.to_string());
                push("solver_iterations", d.method.solver_iterations.to_string());
                push("solver_residual", format!("{:e}", d.method.solver_residual));
                push("t_vector", fmt_vec(&d.method.t_vector));
            }
            ReportBody::Optimization(o) => {
                push("markov_class_supremum", real(o.markov_class_supremum));
                push("s_bits", real(o.s_bits));
                push("hausdorff", real(o.hausdorff.value));
                push("hausdorff_bound", format!("{:e}", o.hausdorff.bound()));
                push("initial", fmt_vec(&o.measure.initial));
                for (i, row) in o.measure.transitions.iter().enumerate() {
                    push(&format!("transition_row_{i}"), fmt_vec(row));
                }
                push("series_depth", o.series_depth.to_string());
                push("starts", o.starts.to_string());
            }
            ReportBody::Series(s) => {
                for (k, v) in s.minkowski_partial_sums.iter().enumerate() {
                    push(&format!("minkowski_partial_{}", k + 1), real(*v));
                }
                push(
                    "minkowski_tail_bound",
                    format!("{:e}", s.minkowski_tail_bound),
                );
                for (k, v) in s.entropy_terms.iter().enumerate() {
                    push(&format!("entropy_term_{}", k + 1), real(*v));
                }
                push("entropy_partial_sum", real(s.entropy_partial_sum));
                push("entropy_tail_bound", format!("{:e}", s.entropy_tail_bound));
            }
            ReportBody::Verification(_) | ReportBody::Samples(_) => {}
        }
        kv
    }
}

/// Shortest text that parses back to exactly `x`, in plain decimal for
/// ordinary magnitudes.
fn real(x: f64) -> String {
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// CSV with columns `check,instance,analytic,oracle,discrepancy,pass`.
pub fn write_verdicts_csv<W: std::io::Write>(verdicts: &[OracleVerdict], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "check",
        "instance",
        "analytic",
        "oracle",
        "discrepancy",
        "pass",
    ])
    .map_err(io)?;
    for v in verdicts {
        w.write_record([
            v.check.clone(),
            v.instance.clone(),
            v.analytic.to_string(),
            v.oracle.to_string(),
            format!("{:e}", v.discrepancy),
            v.passed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Aligned plain-text table of verdicts.
pub fn verdict_table(verdicts: &[OracleVerdict]) -> String {
    let header = [
        "check",
        "instance",
        "analytic",
        "oracle",
        "discrepancy",
        "pass",
    ];
    let rows: Vec<[String; 6]> = verdicts
        .iter()
        .map(|v| {
            [
                v.check.clone(),
                v.instance.clone(),
                v.analytic.to_string(),
                v.oracle.to_string(),
                format!("{:.3e}", v.discrepancy),
                if v.passed { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
            + "\n"
    };
    let mut out = line(&header);
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        out += &line(&cells);
    }
    out
}
