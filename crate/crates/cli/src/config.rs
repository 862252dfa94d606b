//! JSON run configuration.
//!
//! Every key is optional. An absent file, or `{}`, gives the 9 x 7 class
//! lattice with six curves.

use std::path::Path;

use riskcurves_core::levels::{ClassGrid, DEFAULT_BOUNDARY_FRACTION, DEFAULT_CURVES, DEFAULT_SAMPLE_RANGE};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_DENSITY: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    probability: Option<Vec<String>>,
    impact: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    xs: Option<Vec<f64>>,
    ys: Option<Vec<f64>>,
    labels: Option<RawLabels>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    grid: Option<RawGrid>,
    r: Option<usize>,
    density: Option<usize>,
    format: Option<Format>,
    boundary_tolerance: Option<f64>,
    x_range: Option<[f64; 2]>,
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: ClassGrid,
    /// Number of curves.
    pub r: usize,
    /// Samples per emitted curve.
    pub density: usize,
    pub format: Format,
    /// Borderline band as a fraction of the curve spacing.
    pub boundary_tolerance: f64,
    /// Parameter range over which curves are sampled.
    pub x_range: (f64, f64),
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: ClassGrid::default(),
            r: DEFAULT_CURVES,
            density: DEFAULT_DENSITY,
            format: Format::Csv,
            boundary_tolerance: DEFAULT_BOUNDARY_FRACTION,
            x_range: DEFAULT_SAMPLE_RANGE,
        }
    }
}

impl RunConfig {
    /// Parses and validates a JSON document. `origin` only labels diagnostics.
    pub fn from_json(text: &str, origin: &Path) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Config {
            path: origin.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        RunConfig::from_raw(raw)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        RunConfig::from_json(&text, path)
    }

    /// Loads `path` if given, otherwise returns the defaults.
    pub fn load_or_default(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(RunConfig::default()), RunConfig::load)
    }

    fn from_raw(raw: RawConfig) -> Result<Self, CliError> {
        let d = RunConfig::default();
        let grid = match raw.grid {
            None => d.grid,
            Some(g) => {
                let defaults_kept = g.xs.is_none() && g.ys.is_none();
                let xs = g.xs.unwrap_or_else(|| d.grid.xs().to_vec());
                let ys = g.ys.unwrap_or_else(|| d.grid.ys().to_vec());
                let grid = ClassGrid::new(xs, ys).map_err(|e| CliError::core("grid", e))?;
                let (px, py) = match g.labels {
                    Some(l) => (l.probability, l.impact),
                    None if defaults_kept => (d.grid.x_labels().map(<[_]>::to_vec), d.grid.y_labels().map(<[_]>::to_vec)),
                    None => (None, None),
                };
                grid.with_labels(px, py).map_err(|e| CliError::core("grid.labels", e))?
            }
        };
        let r = raw.r.unwrap_or(d.r);
        if r < 1 {
            return Err(CliError::Validation("r: at least one curve is required".into()));
        }
        let density = raw.density.unwrap_or(d.density);
        if density < 2 {
            return Err(CliError::Validation(format!("density: at least 2 samples per curve are required, got {density}")));
        }
        let boundary_tolerance = raw.boundary_tolerance.unwrap_or(d.boundary_tolerance);
        if !(boundary_tolerance >= 0.0 && boundary_tolerance.is_finite()) {
            return Err(CliError::Validation(format!("boundary_tolerance: must be a finite non-negative fraction, got {boundary_tolerance}")));
        }
        let x_range = raw.x_range.map_or(d.x_range, |[lo, hi]| (lo, hi));
        if !(x_range.0 > 0.0 && x_range.1 > x_range.0 && x_range.1.is_finite()) {
            return Err(CliError::Validation(format!("x_range: need 0 < lo < hi, got [{}, {}]", x_range.0, x_range.1)));
        }
        Ok(RunConfig { grid, r, density, format: raw.format.unwrap_or(d.format), boundary_tolerance, x_range })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<RunConfig, CliError> {
        RunConfig::from_json(s, Path::new("test.json"))
    }

    #[test]
    fn empty_document_is_default() {
        assert_eq!(parse("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn partial_grid() {
        let c = parse(r#"{"grid": {"xs": [1, 2, 4]}, "r": 2, "format": "svg"}"#).unwrap();
        assert_eq!(c.grid.xs(), [1.0, 2.0, 4.0]);
        assert_eq!(c.grid.n(), 7);
        assert!(c.grid.x_labels().is_none());
        assert_eq!((c.r, c.format), (2, Format::Svg));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("{\n  \"r\": 6,\n  \"density\": x\n}").unwrap_err();
        match err {
            CliError::Config { line, column, .. } => assert_eq!((line, column), (3, 14)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse(r#"{"curves": 3}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field `curves`"), "{err}");
        assert_eq!(err.exit_code(), crate::EXIT_VALIDATION);
    }

    #[test]
    fn bad_axis_named() {
        let err = parse(r#"{"grid": {"ys": [1, 3, 2]}}"#).unwrap_err();
        assert!(err.to_string().contains("impact"), "{err}");
        let err = parse(r#"{"grid": {"xs": [2, 2]}}"#).unwrap_err();
        assert!(err.to_string().contains("probability"), "{err}");
    }

    #[test]
    fn scalar_limits() {
        assert!(parse(r#"{"r": 0}"#).is_err());
        assert!(parse(r#"{"density": 1}"#).is_err());
        assert!(parse(r#"{"boundary_tolerance": -0.1}"#).is_err());
        assert!(parse(r#"{"x_range": [3, 1]}"#).is_err());
        assert!(parse(r#"{"format": "png"}"#).is_err());
    }
}
