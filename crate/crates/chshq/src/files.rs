//! Self-describing JSON file formats. Element codes are plain integers,
//! rationals cross the boundary as "num/den" strings, and every file embeds
//! the field description (p, k, modulus) so it can be read back without
//! context.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::game::{GameError, InputDistribution, Strategy};
use crate::incidence::{Configuration, IncidenceError, Line, Point};
use crate::ratio::{format_ratio, parse_ratio, ParseRatioError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Ratio(#[from] ParseRatioError),
    #[error("invalid {kind} file: {reason}")]
    Invalid { kind: &'static str, reason: String },
}

/// `"field": {"p": ..., "k": ..., "modulus": [...]}` as embedded in every
/// file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn of(spec: &FieldSpec) -> Self {
        FieldDescriptor {
            p: spec.p(),
            k: spec.k(),
            modulus: spec.modulus().to_vec(),
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, FieldError> {
        FieldSpec::from_parts(self.p, self.k, self.modulus.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyFile {
    pub field: FieldDescriptor,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl StrategyFile {
    pub fn of(strategy: &Strategy) -> Self {
        StrategyFile {
            field: FieldDescriptor::of(strategy.spec()),
            a: strategy.alice_codes().to_vec(),
            b: strategy.bob_codes().to_vec(),
        }
    }

    pub fn to_strategy(&self) -> Result<Strategy, FileError> {
        let spec = self.field.to_spec()?;
        Ok(Strategy::new(spec, self.a.clone(), self.b.clone())?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub q: u64,
    pub field: FieldDescriptor,
    pub points: Vec<[u64; 2]>,
    pub lines: Vec<[u64; 2]>,
}

impl ConfigurationFile {
    pub fn of(cfg: &Configuration) -> Self {
        ConfigurationFile {
            q: cfg.spec().q(),
            field: FieldDescriptor::of(cfg.spec()),
            points: cfg
                .points()
                .iter()
                .map(|p| [p.x().code(), p.y().code()])
                .collect(),
            lines: cfg
                .lines()
                .iter()
                .map(|l| [l.slope().code(), l.offset().code()])
                .collect(),
        }
    }

    pub fn to_configuration(&self) -> Result<Configuration, FileError> {
        let spec = self.field.to_spec()?;
        if spec.q() != self.q {
            return Err(FileError::Invalid {
                kind: "configuration",
                reason: format!("q = {} does not match the field order {}", self.q, spec.q()),
            });
        }
        let points = self
            .points
            .iter()
            .map(|&[x, y]| Point::new(spec.element(x)?, spec.element(y)?))
            .collect::<Result<Vec<_>, IncidenceError>>()?;
        let lines = self
            .lines
            .iter()
            .map(|&[s, o]| Line::new(spec.element(s)?, spec.element(o)?))
            .collect::<Result<Vec<_>, IncidenceError>>()?;
        Ok(Configuration::new(spec, points, lines)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionFile {
    pub field: FieldDescriptor,
    pub r: Vec<String>,
    pub p_cap: String,
}

impl DistributionFile {
    pub fn of(dist: &InputDistribution) -> Self {
        DistributionFile {
            field: FieldDescriptor::of(dist.spec()),
            r: dist.probs().iter().map(format_ratio).collect(),
            p_cap: format_ratio(dist.p_cap()),
        }
    }

    pub fn to_distribution(&self) -> Result<InputDistribution, FileError> {
        let spec = self.field.to_spec()?;
        let probs = self
            .r
            .iter()
            .map(|s| parse_ratio(s))
            .collect::<Result<Vec<_>, _>>()?;
        let p_cap = parse_ratio(&self.p_cap)?;
        Ok(InputDistribution::new(spec, probs, p_cap)?)
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn write_strategy(path: &Path, strategy: &Strategy) -> Result<(), FileError> {
    write_json(path, &StrategyFile::of(strategy))
}

pub fn read_strategy(path: &Path) -> Result<Strategy, FileError> {
    let file: StrategyFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.to_strategy()
}

pub fn write_configuration(path: &Path, cfg: &Configuration) -> Result<(), FileError> {
    write_json(path, &ConfigurationFile::of(cfg))
}

pub fn read_configuration(path: &Path) -> Result<Configuration, FileError> {
    let file: ConfigurationFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.to_configuration()
}

pub fn write_distribution(path: &Path, dist: &InputDistribution) -> Result<(), FileError> {
    write_json(path, &DistributionFile::of(dist))
}

pub fn read_distribution(path: &Path) -> Result<InputDistribution, FileError> {
    let file: DistributionFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.to_distribution()
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn strategy_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("s.json");
        let spec = FieldSpec::new(9).unwrap();
        let s = Strategy::new(spec, vec![0, 3, 6, 1, 4, 7, 2, 5, 8], vec![8; 9]).unwrap();
        write_strategy(&path, &s).unwrap();
        let back = read_strategy(&path).unwrap();
        assert_eq!(back, s);
        // Writes are byte-identical across runs.
        let first = fs::read(&path).unwrap();
        write_strategy(&path, &s).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
    }

    #[test]
    fn configuration_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("c.json");
        let spec = FieldSpec::new(3).unwrap();
        let cfg = Configuration::new(
            spec.clone(),
            vec![Point::new(spec.element(0).unwrap(), spec.element(0).unwrap()).unwrap()],
            vec![Line::new(spec.element(1).unwrap(), spec.element(0).unwrap()).unwrap()],
        )
        .unwrap();
        write_configuration(&path, &cfg).unwrap();
        assert_eq!(read_configuration(&path).unwrap(), cfg);
    }

    #[test]
    fn distribution_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("d.json");
        let spec = FieldSpec::new(4).unwrap();
        let dist = InputDistribution::uniform(&spec);
        write_distribution(&path, &dist).unwrap();
        assert_eq!(read_distribution(&path).unwrap(), dist);
    }

    #[test]
    fn mismatched_q_rejected() {
        let file = ConfigurationFile {
            q: 4,
            field: FieldDescriptor {
                p: 3,
                k: 1,
                modulus: vec![0],
            },
            points: vec![],
            lines: vec![],
        };
        assert!(matches!(
            file.to_configuration(),
            Err(FileError::Invalid { .. })
        ));
    }

    #[test]
    fn malformed_code_rejected() {
        let file = StrategyFile {
            field: FieldDescriptor {
                p: 3,
                k: 1,
                modulus: vec![0],
            },
            a: vec![0, 1, 5],
            b: vec![0, 0, 0],
        };
        assert!(file.to_strategy().is_err());
    }
}
