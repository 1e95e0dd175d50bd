//! Domain identifiers shared across the pipeline.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The four weather parameters carried by the grid store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parameter {
    /// Precipitable water (kg/m²).
    PW,
    /// Convective available potential energy (J/kg).
    CAPE,
    /// Air potential temperature (K).
    APT,
    /// Convective inhibition (J/kg), typically non-positive.
    CIN,
}

impl Parameter {
    pub const ALL: [Parameter; 4] = [Parameter::PW, Parameter::CAPE, Parameter::APT, Parameter::CIN];

    pub fn as_str(&self) -> &'static str {
        match self {
            Parameter::PW => "PW",
            Parameter::CAPE => "CAPE",
            Parameter::APT => "APT",
            Parameter::CIN => "CIN",
        }
    }

    /// Default unit label for the parameter.
    pub fn unit(&self) -> &'static str {
        match self {
            Parameter::PW => "kg/m^2",
            Parameter::CAPE => "J/kg",
            Parameter::APT => "K",
            Parameter::CIN => "J/kg",
        }
    }

    /// Parameters that are physically non-negative.
    pub fn non_negative(&self) -> bool {
        matches!(self, Parameter::PW | Parameter::CAPE)
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PW" => Ok(Parameter::PW),
            "CAPE" => Ok(Parameter::CAPE),
            "APT" => Ok(Parameter::APT),
            "CIN" | "CI" => Ok(Parameter::CIN),
            other => Err(format!("unknown weather parameter {other:?}")),
        }
    }
}

/// Descriptive statistics computed per aggregation cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Mean,
    Std,
    Min,
    Max,
    Q1,
    Median,
    Q3,
}

impl Statistic {
    /// The full seven-statistic set used by the per-region configuration.
    pub const FULL: [Statistic; 7] = [
        Statistic::Mean,
        Statistic::Std,
        Statistic::Min,
        Statistic::Max,
        Statistic::Q1,
        Statistic::Median,
        Statistic::Q3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Statistic::Mean => "mean",
            Statistic::Std => "std",
            Statistic::Min => "min",
            Statistic::Max => "max",
            Statistic::Q1 => "q1",
            Statistic::Median => "median",
            Statistic::Q3 => "q3",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(Statistic::Mean),
            "std" => Ok(Statistic::Std),
            "min" => Ok(Statistic::Min),
            "max" => Ok(Statistic::Max),
            "q1" => Ok(Statistic::Q1),
            "median" => Ok(Statistic::Median),
            "q3" => Ok(Statistic::Q3),
            other => Err(format!("unknown statistic {other:?}")),
        }
    }
}

/// What a model predicts: any advisory touching an ARTCC, or one named advisory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Artcc,
    AdvisoryName,
}

impl TargetKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TargetKind::Artcc => "artcc",
            TargetKind::AdvisoryName => "advisory_name",
        }
    }
}

impl FromStr for TargetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "artcc" => Ok(TargetKind::Artcc),
            "advisory_name" | "advisory-name" | "name" => Ok(TargetKind::AdvisoryName),
            other => Err(format!("unknown target kind {other:?}")),
        }
    }
}

/// A prediction target: an ARTCC code such as `ZNY`, or a reused advisory name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PredictionTarget {
    pub kind: TargetKind,
    pub key: String,
}

impl PredictionTarget {
    pub fn artcc(code: impl Into<String>) -> Result<Self, String> {
        let key = code.into().trim().to_ascii_uppercase();
        if !is_artcc_code(&key) {
            return Err(format!("ARTCC code {key:?} does not match Z[A-Z][A-Z]"));
        }
        Ok(PredictionTarget { kind: TargetKind::Artcc, key })
    }

    pub fn advisory_name(name: impl Into<String>) -> Result<Self, String> {
        let key = normalize_name(&name.into());
        if key.is_empty() {
            return Err("advisory name target must be non-empty".to_string());
        }
        Ok(PredictionTarget { kind: TargetKind::AdvisoryName, key })
    }

    /// Canonical string form used as registry key and in file names.
    pub fn registry_key(&self) -> String {
        format!("{}:{}", self.kind.as_str(), self.key)
    }

    /// File-system friendly slug, e.g. `artcc_ZNY` or `advisory_name_J109_WEVEL`.
    pub fn slug(&self) -> String {
        let key: String = self
            .key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        format!("{}_{}", self.kind.as_str(), key)
    }
}

impl fmt::Display for PredictionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.as_str(), self.key)
    }
}

/// True when `code` is a 3-letter center code of the form `Z[A-Z]{2}`.
pub fn is_artcc_code(code: &str) -> bool {
    let bytes = code.as_bytes();
    bytes.len() == 3 && bytes[0] == b'Z' && bytes[1..].iter().all(|b| b.is_ascii_uppercase())
}

/// Uppercase and collapse internal whitespace; advisory names are reused
/// across issuances with inconsistent spacing.
pub fn normalize_name(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_ascii_uppercase()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artcc_code_shape() {
        assert!(is_artcc_code("ZNY"));
        assert!(is_artcc_code("ZDC"));
        assert!(!is_artcc_code("zny"));
        assert!(!is_artcc_code("ZN"));
        assert!(!is_artcc_code("KZNY"));
        assert!(!is_artcc_code("ANY"));
    }

    #[test]
    fn name_normalization_collapses_whitespace() {
        assert_eq!(normalize_name("j109  wevel modified"), "J109 WEVEL MODIFIED");
        assert_eq!(normalize_name("  A   B  "), "A B");
    }

    #[test]
    fn target_constructors_validate() {
        assert!(PredictionTarget::artcc("zny").is_ok());
        assert!(PredictionTarget::artcc("XYZ").is_err());
        assert!(PredictionTarget::advisory_name("  ").is_err());
        let t = PredictionTarget::advisory_name("j109  wevel").unwrap();
        assert_eq!(t.key, "J109 WEVEL");
        assert_eq!(t.registry_key(), "advisory_name:J109 WEVEL");
    }
}
