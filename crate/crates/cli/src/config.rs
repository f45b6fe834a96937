//! Parameter resolution: flags override the JSON file, which overrides the
//! defaults of 1.

use std::path::Path;

use morse_laplace::model::MorseParameters;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterFile {
    pub v0: Option<f64>,
    pub a: Option<f64>,
    pub mass: Option<f64>,
    pub hbar: Option<f64>,
}

impl ParameterFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `flags` win.
    pub fn overlay(self, flags: ParameterFile) -> ParameterFile {
        ParameterFile {
            v0: flags.v0.or(self.v0),
            a: flags.a.or(self.a),
            mass: flags.mass.or(self.mass),
            hbar: flags.hbar.or(self.hbar),
        }
    }

    pub fn resolve(self) -> CliResult<MorseParameters> {
        Ok(MorseParameters::new(
            self.mass.unwrap_or(1.0),
            self.hbar.unwrap_or(1.0),
            self.a.unwrap_or(1.0),
            self.v0.unwrap_or(1.0),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = ParameterFile {
            v0: Some(8.0),
            a: Some(2.0),
            ..Default::default()
        };
        let flags = ParameterFile {
            a: Some(1.0),
            ..Default::default()
        };
        let p = file.overlay(flags).resolve().unwrap();
        assert_eq!((p.v0(), p.a(), p.mass(), p.hbar()), (8.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        std::fs::write(&path, r#"{"v0": 8, "depth": 3}"#).unwrap();
        assert!(matches!(
            ParameterFile::load(&path),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn nonpositive_parameters_are_domain_errors() {
        let p = ParameterFile {
            mass: Some(-1.0),
            ..Default::default()
        };
        assert!(matches!(p.resolve(), Err(CliError::Domain(_))));
    }
}
