//! Argument definitions and the five subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use riskcurves_core::curves::Point;
use riskcurves_core::inverse::solve_foot;
use riskcurves_core::levels::{assess_point, build_family, emit_family_curves, level_table_with_tolerance, ParallelFamily};
use riskcurves_core::measures::{evaluate, Measure, MeasureReport};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::fixed::{self, fmt6};
use crate::{levels_report, plot, sample_file, CliError};

#[derive(Debug, Parser)]
#[command(name = "riskcurves", version, about = "Risk levels from parallel curves of risk")]
pub struct Cli {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level of every lattice cell.
    Levels {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Level of a single (probability, impact) point.
    Classify {
        #[arg(long = "p", value_name = "X", allow_negative_numbers = true)]
        p: f64,
        #[arg(long = "i", value_name = "Y", allow_negative_numbers = true)]
        i: f64,
    },
    /// Sampled curves of the family.
    Curves {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// A risk measure of the distribution in a sample file.
    Measure {
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        #[arg(long, value_enum)]
        measure: MeasureName,
        /// Threshold or target value.
        #[arg(long = "T", value_name = "V", allow_negative_numbers = true)]
        t: Option<f64>,
        /// Exponent of the power measure.
        #[arg(long = "p", value_name = "N")]
        p: Option<u32>,
        /// Scale of the Taguchi measure.
        #[arg(long = "k", value_name = "V", allow_negative_numbers = true)]
        k: Option<f64>,
    },
    /// Foot of the normal and signed offset of a point.
    Inverse {
        #[arg(long = "a", value_name = "X", allow_negative_numbers = true)]
        a: f64,
        #[arg(long = "b", value_name = "Y", allow_negative_numbers = true)]
        b: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    Variance,
    Below,
    Above,
    Power,
    Semivar,
    Taguchi,
}

/// Text produced by a command and where it goes.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
}

impl Output {
    fn stdout(text: String) -> Self {
        Output { text, path: None }
    }

    /// Writes to the target file, or returns the text for standard output.
    pub fn deliver(self) -> Result<Option<String>, CliError> {
        match self.path {
            Some(path) => std::fs::write(&path, self.text).map(|_| None).map_err(|source| CliError::Io { path, source }),
            None => Ok(Some(self.text)),
        }
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    let config = RunConfig::load_or_default(cli.config.as_deref())?;
    match cli.command {
        Command::Levels { format, out } => Ok(Output { text: levels(&config, format)?, path: out }),
        Command::Classify { p, i } => classify(&config, p, i).map(Output::stdout),
        Command::Curves { format, density, out } => Ok(Output { text: curves(&config, format, density)?, path: out }),
        Command::Measure { file, measure, t, p, k } => measure_report(&file, measure, t, p, k).map(Output::stdout),
        Command::Inverse { a, b } => inverse(&config, a, b).map(Output::stdout),
    }
}

fn family(config: &RunConfig) -> Result<ParallelFamily, CliError> {
    build_family(&config.grid, config.r).map_err(|e| CliError::core("family", e))
}

pub fn levels(config: &RunConfig, format: Option<Format>) -> Result<String, CliError> {
    let fam = family(config)?;
    let table = level_table_with_tolerance(&fam, &config.grid, config.boundary_tolerance).map_err(|e| CliError::core("levels", e))?;
    match format.unwrap_or(config.format) {
        Format::Csv => Ok(levels_report::to_csv(&levels_report::rows(&table))),
        Format::Json => Ok(levels_report::to_json(&levels_report::document(&fam, &table))),
        Format::Svg => Err(CliError::Validation("levels: format svg is not supported, use csv or json".into())),
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("--{name} must be a positive number, got {v}")))
    }
}

fn bound(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), fmt6)
}

pub fn classify(config: &RunConfig, p: f64, i: f64) -> Result<String, CliError> {
    positive("p", p)?;
    positive("i", i)?;
    let fam = family(config)?;
    let a = assess_point(&fam, Point::new(p, i)).map_err(|e| CliError::core(format!("classify p={p} i={i}"), e))?;
    Ok(format!(
        "p={} i={} level={} h={} boundary_gap={} nearest_curve=C{} risk_bracket=[{}, {}]\n",
        fmt6(p),
        fmt6(i),
        a.level,
        fmt6(a.h),
        fmt6(a.boundary_gap),
        a.nearest_curve,
        bound(a.risk_bracket.0),
        bound(a.risk_bracket.1)
    ))
}

pub fn curves(config: &RunConfig, format: Option<Format>, density: Option<usize>) -> Result<String, CliError> {
    let density = density.unwrap_or(config.density);
    if density < 2 {
        return Err(CliError::Validation(format!("--density must be at least 2, got {density}")));
    }
    let fam = family(config)?;
    let (lo, hi) = config.x_range;
    let curves = emit_family_curves(&fam, density, lo, hi).map_err(|e| CliError::core("curves", e))?;
    Ok(match format.unwrap_or(config.format) {
        Format::Csv => plot::to_csv(&curves),
        Format::Json => plot::to_json(&fam, &curves),
        Format::Svg => plot::to_svg(&fam, &config.grid, &curves),
    })
}

#[derive(Serialize)]
struct MeasureDoc {
    n: usize,
    #[serde(serialize_with = "fixed::serialize")]
    mean: f64,
    #[serde(serialize_with = "fixed::serialize")]
    estimator_mean: f64,
    #[serde(serialize_with = "fixed::serialize")]
    variance: f64,
    #[serde(serialize_with = "fixed::serialize")]
    estimator_variance: f64,
    measure: String,
    #[serde(serialize_with = "fixed::serialize_opt")]
    threshold: Option<f64>,
    power: Option<u32>,
    #[serde(serialize_with = "fixed::serialize_opt")]
    k: Option<f64>,
    #[serde(serialize_with = "fixed::serialize")]
    value: f64,
    #[serde(serialize_with = "fixed::serialize_opt")]
    estimator_value: Option<f64>,
    #[serde(serialize_with = "fixed::serialize_opt")]
    semivariance_sum: Option<f64>,
}

impl From<MeasureReport> for MeasureDoc {
    fn from(r: MeasureReport) -> Self {
        MeasureDoc {
            n: r.n,
            mean: r.mean,
            estimator_mean: r.estimator_mean,
            variance: r.variance,
            estimator_variance: r.estimator_variance,
            measure: r.measure,
            threshold: r.threshold,
            power: r.power,
            k: r.k,
            value: r.value,
            estimator_value: r.estimator_value,
            semivariance_sum: r.semivariance_sum,
        }
    }
}

fn selected(name: MeasureName, t: Option<f64>, p: Option<u32>, k: Option<f64>) -> Result<Measure, CliError> {
    let need_t = |measure| t.ok_or(CliError::MissingParameter { measure, param: "T" });
    Ok(match name {
        MeasureName::Variance => Measure::Variance,
        MeasureName::Semivar => Measure::Semivariance,
        MeasureName::Below => Measure::Below { t: need_t("below")? },
        MeasureName::Above => Measure::Above { t: need_t("above")? },
        MeasureName::Power => Measure::Power { t: need_t("power")?, p: p.ok_or(CliError::MissingParameter { measure: "power", param: "p" })? },
        MeasureName::Taguchi => Measure::Taguchi { t: need_t("taguchi")?, k: k.ok_or(CliError::MissingParameter { measure: "taguchi", param: "k" })? },
    })
}

pub fn measure_report(file: &Path, name: MeasureName, t: Option<f64>, p: Option<u32>, k: Option<f64>) -> Result<String, CliError> {
    let measure = selected(name, t, p, k)?;
    let sample = sample_file::load(file)?;
    let report = evaluate(&sample, measure).map_err(|e| CliError::core(measure.name(), e))?;
    let mut s = serde_json::to_string_pretty(&MeasureDoc::from(report)).map_err(|e| CliError::Validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn inverse(config: &RunConfig, a: f64, b: f64) -> Result<String, CliError> {
    positive("a", a)?;
    positive("b", b)?;
    let fam = family(config)?;
    let foot = solve_foot(fam.base(), a, b).map_err(|e| CliError::core(format!("inverse a={a} b={b}"), e))?;
    let mut roots = String::new();
    for (k, r) in foot.roots.iter().enumerate() {
        let _ = write!(roots, "{}{}", if k == 0 { "" } else { ", " }, fmt6(*r));
    }
    Ok(format!(
        "a={} b={} x_foot={} h={} residual={:.6e} roots=[{}] multiple_roots={}\n",
        fmt6(a),
        fmt6(b),
        fmt6(foot.x_foot),
        fmt6(foot.h_signed),
        foot.residual,
        roots,
        foot.has_multiple_roots()
    ))
}
