//! Sample files: one `value [probability]` record per line.
//!
//! Blank lines and text after `#` are ignored. Either every record carries a
//! probability or none does; without probabilities the outcomes are
//! equally likely.

use std::path::Path;

use riskcurves_core::measures::Sample;

use crate::CliError;

pub fn parse(text: &str, origin: &Path) -> Result<Sample, CliError> {
    let err = |line: usize, message: String| CliError::SampleLine { path: origin.to_path_buf(), line, message };
    let mut values = Vec::new();
    let mut probabilities = Vec::new();
    let mut weighted: Option<(bool, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() > 2 {
            return Err(err(line, format!("expected `value [probability]`, found {} fields", fields.len())));
        }
        let number = |s: &str, what: &str| -> Result<f64, CliError> {
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(err(line, format!("{what} `{s}` is not a finite number"))),
            }
        };
        values.push(number(fields[0], "value")?);
        let has_p = fields.len() == 2;
        match weighted {
            None => weighted = Some((has_p, line)),
            Some((w, first)) if w != has_p => {
                return Err(err(
                    line,
                    format!("line {first} {} a probability column but this line {}", if w { "has" } else { "has no" }, if has_p { "does" } else { "does not" }),
                ))
            }
            Some(_) => {}
        }
        if has_p {
            probabilities.push(number(fields[1], "probability")?);
        }
    }
    let sample = if weighted.is_some_and(|(w, _)| w) { Sample::with_probabilities(values, probabilities) } else { Sample::new(values) };
    sample.map_err(|e| CliError::core(origin.display().to_string(), e))
}

pub fn load(path: &Path) -> Result<Sample, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse(&text, path)
}
