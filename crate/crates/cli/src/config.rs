//! Experiment configuration: defaults per experiment, a flat `key = value`
//! file format, and command-line overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read config file: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    Universality,
    PeTable,
    Ensembles,
    SurmiseKs,
    W2,
    Auc,
    RpSweep,
    Spiked,
    EcdfFig,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::Universality,
        Experiment::PeTable,
        Experiment::Ensembles,
        Experiment::SurmiseKs,
        Experiment::W2,
        Experiment::Auc,
        Experiment::RpSweep,
        Experiment::Spiked,
        Experiment::EcdfFig,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Universality => "universality",
            Experiment::PeTable => "pe_table",
            Experiment::Ensembles => "ensembles",
            Experiment::SurmiseKs => "surmise_ks",
            Experiment::W2 => "w2",
            Experiment::Auc => "auc",
            Experiment::RpSweep => "rp_sweep",
            Experiment::Spiked => "spiked",
            Experiment::EcdfFig => "ecdf_fig",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::InvalidValue {
                key: "format".into(),
                value: other.into(),
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

pub const DEFAULT_SEED: u64 = 20_250_101;

/// Disorder grid for the Rosenzweig–Porter sweep: 0 to 5 in steps of 0.25,
/// plus 0.7.
pub fn default_lambda_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.25).collect();
    grid.push(0.7);
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid
}

pub fn default_theta_grid() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub sizes: Vec<usize>,
    /// Samples per (n, ensemble) cell; pair count for `w2`.
    pub samples_per_cell: usize,
    pub master_seed: u64,
    pub bulk_fraction: f64,
    pub bootstrap_replicates: usize,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub lambda_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    /// Wishart sample count as a multiple of n (p = ratio · n).
    pub wishart_ratio: usize,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// Full-scale defaults for one experiment.
    pub fn defaults(experiment: Experiment) -> Self {
        use Experiment::*;
        let sizes = match experiment {
            Universality | PeTable | Auc => vec![50, 100, 200],
            _ => vec![100],
        };
        let samples_per_cell = match experiment {
            Auc => 500,
            RpSweep => 300,
            W2 => 100,
            _ => 200,
        };
        Self {
            experiment,
            sizes,
            samples_per_cell,
            master_seed: DEFAULT_SEED,
            bulk_fraction: 0.8,
            bootstrap_replicates: 1000,
            output_dir: PathBuf::from("results"),
            format: OutputFormat::Csv,
            lambda_grid: default_lambda_grid(),
            theta_grid: default_theta_grid(),
            wishart_ratio: 2,
            threads: None,
        }
    }

    /// Applies `key = value` lines. Blank lines and `#` comments are ignored.
    /// An `experiment` key, if present, must match the configured experiment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "experiment" => {
                let e: Experiment = value.parse()?;
                if e != self.experiment {
                    return Err(ConfigError::Invalid(format!(
                        "config file is for `{e}`, not `{}`",
                        self.experiment
                    )));
                }
            }
            "sizes" => self.sizes = parse_list(value).map_err(|_| bad())?,
            "samples_per_cell" => self.samples_per_cell = value.parse().map_err(|_| bad())?,
            "master_seed" => self.master_seed = value.parse().map_err(|_| bad())?,
            "bulk_fraction" => self.bulk_fraction = value.parse().map_err(|_| bad())?,
            "bootstrap_replicates" => {
                self.bootstrap_replicates = value.parse().map_err(|_| bad())?
            }
            "output_dir" => self.output_dir = PathBuf::from(value),
            "format" => self.format = value.parse()?,
            "lambda_grid" => self.lambda_grid = parse_list(value).map_err(|_| bad())?,
            "theta_grid" => self.theta_grid = parse_list(value).map_err(|_| bad())?,
            "wishart_ratio" => self.wishart_ratio = value.parse().map_err(|_| bad())?,
            "threads" => self.threads = Some(value.parse().map_err(|_| bad())?),
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: &str| Err(ConfigError::Invalid(msg.to_string()));
        if self.sizes.is_empty() {
            return fail("sizes must be nonempty");
        }
        if self.sizes.iter().any(|&n| n < 3) {
            return fail("every size must be at least 3");
        }
        if self.samples_per_cell < 2 {
            return fail("samples_per_cell must be at least 2");
        }
        if !(self.bulk_fraction > 0.0 && self.bulk_fraction <= 1.0) {
            return fail("bulk_fraction must lie in (0, 1]");
        }
        if self.bootstrap_replicates < 100 {
            return fail("bootstrap_replicates must be at least 100");
        }
        if self.wishart_ratio < 2 {
            return fail("wishart_ratio must be at least 2");
        }
        if self.threads == Some(0) {
            return fail("threads must be positive");
        }
        if self.experiment == Experiment::RpSweep {
            if self.lambda_grid.is_empty()
                || self.lambda_grid.iter().any(|l| l.is_nan() || *l < 0.0)
            {
                return fail("lambda_grid must be nonempty and nonnegative");
            }
            if self.samples_per_cell < 30 {
                return fail("rp_sweep needs at least 30 samples per lambda");
            }
        }
        if self.experiment == Experiment::Spiked
            && (self.theta_grid.is_empty()
                || self.theta_grid.iter().any(|t| t.is_nan() || *t < 0.0))
        {
            return fail("theta_grid must be nonempty and nonnegative");
        }
        Ok(())
    }

    /// Key/value echo used in result metadata.
    pub fn echo(&self) -> Vec<(String, String)> {
        let join = |xs: Vec<String>| xs.join(",");
        vec![
            ("experiment".into(), self.experiment.to_string()),
            (
                "sizes".into(),
                join(self.sizes.iter().map(|n| n.to_string()).collect()),
            ),
            ("samples_per_cell".into(), self.samples_per_cell.to_string()),
            ("master_seed".into(), self.master_seed.to_string()),
            ("bulk_fraction".into(), self.bulk_fraction.to_string()),
            (
                "bootstrap_replicates".into(),
                self.bootstrap_replicates.to_string(),
            ),
            ("format".into(), self.format.to_string()),
            (
                "lambda_grid".into(),
                join(self.lambda_grid.iter().map(|l| l.to_string()).collect()),
            ),
            (
                "theta_grid".into(),
                join(self.theta_grid.iter().map(|t| t.to_string()).collect()),
            ),
            ("wishart_ratio".into(), self.wishart_ratio.to_string()),
        ]
    }
}

fn parse_list<T: FromStr>(value: &str) -> Result<Vec<T>, T::Err> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_contains_thresholds() {
        let grid = default_lambda_grid();
        assert_eq!(grid.len(), 22);
        assert_eq!(grid.first(), Some(&0.0));
        assert_eq!(grid.last(), Some(&5.0));
        assert!(grid.contains(&0.5) && grid.contains(&0.7));
    }

    #[test]
    fn file_overrides_defaults() {
        let mut cfg = ExperimentConfig::defaults(Experiment::Auc);
        cfg.apply_file(
            "# comment\nexperiment = auc\nsizes = 20, 40\nsamples_per_cell=30 # inline\nformat = json\n",
        )
        .unwrap();
        assert_eq!(cfg.sizes, vec![20, 40]);
        assert_eq!(cfg.samples_per_cell, 30);
        assert_eq!(cfg.format, OutputFormat::Json);
        cfg.validate().unwrap();
    }

    #[test]
    fn bad_files_are_rejected() {
        let mut cfg = ExperimentConfig::defaults(Experiment::W2);
        assert_eq!(
            cfg.apply_file("sizes"),
            Err(ConfigError::Syntax { line: 1 })
        );
        assert_eq!(
            cfg.apply_file("colour = red"),
            Err(ConfigError::UnknownKey("colour".into()))
        );
        assert!(cfg.apply_file("experiment = auc").is_err());
        assert!(cfg.apply_file("sizes = 10, x").is_err());
        assert!(cfg.apply_file("format = xml").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = ExperimentConfig::defaults(Experiment::Universality);
        cfg.samples_per_cell = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::defaults(Experiment::RpSweep);
        cfg.samples_per_cell = 10;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::defaults(Experiment::Ensembles);
        cfg.sizes.clear();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.as_str().parse::<Experiment>().unwrap(), e);
        }
        assert!("tables".parse::<Experiment>().is_err());
    }
}
