//! Target resolution and error classification.

use std::path::Path;
use std::str::FromStr;

use bracket_flow::lie::io::read_bracket;
use bracket_flow::scenarios::Scenario;
use bracket_flow::{Error, LieBracket64};
use serde::Deserialize;

/// Error reported to the user with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let numerical = matches!(
            e,
            Error::SingularMap { .. }
                | Error::Normalization(_)
                | Error::ClosedForm(_)
                | Error::NotPositiveDefinite { .. }
                | Error::NotCertified { .. }
                | Error::Integration(_)
        );
        let message = e.to_string();
        if numerical {
            Self::numerical(message)
        } else {
            Self::validation(message)
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::validation(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::validation(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// A resolved bracket with a printable label.
#[derive(Debug, Clone)]
pub struct Target {
    pub label: String,
    pub bracket: LieBracket64,
}

/// Existing files win over scenario names.
pub fn resolve(spec: &str) -> CliResult<Target> {
    if Path::new(spec).is_file() {
        return Ok(Target { label: spec.to_string(), bracket: read_bracket(spec)? });
    }
    let scenario = Scenario::from_str(spec)
        .map_err(|e| Failure::validation(format!("'{spec}' is neither a bracket file nor a scenario ({e})")))?;
    Ok(Target { label: scenario.to_string(), bracket: scenario.build()? })
}

#[derive(Debug, Deserialize)]
struct ParamsEntry {
    name: String,
    #[serde(default)]
    params: Vec<f64>,
}

/// Reads `[{"name": "nosemi2", "params": [1, 1, 1]}, ...]`.
pub fn read_params_file(path: &Path) -> CliResult<Vec<Target>> {
    let text = std::fs::read_to_string(path)?;
    let entries: Vec<ParamsEntry> = serde_json::from_str(&text)?;
    entries
        .into_iter()
        .map(|e| {
            let scenario = Scenario::new(e.name, e.params);
            if !bracket_flow::scenarios::BUILT_IN.iter().any(|(n, _)| *n == scenario.name) {
                return Err(Failure::validation(format!("unknown scenario '{}'", scenario.name)));
            }
            Ok(Target { label: scenario.to_string(), bracket: scenario.build()? })
        })
        .collect()
}

/// File-name friendly version of a label.
pub fn file_stem(index: usize, label: &str) -> String {
    let clean: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!("{index:03}_{clean}")
}
