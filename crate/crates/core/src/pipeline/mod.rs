//! Configuration and command implementations behind the `land` binary.
//!
//! Every command reads the artifacts of earlier commands from the output
//! directory and writes its own there, each file atomically. A missing
//! artifact fails with the name of the command that produces it.

mod commands;

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use commands::{baseline, dedupe, disambiguate, evaluate, ingest, run, sweep, train, Command};

use crate::disambig::DocumentSource;
use crate::kg::Schema;
use crate::model::Variant;
use crate::train::TrainConfig;
use crate::{Error, Result};

/// Offsets added to the master seed for each random stream.
pub const SPLIT_SEED_OFFSET: u64 = 0;
/// Initialization; negative sampling uses the next value.
pub const INIT_SEED_OFFSET: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    ScorePairs,
    TitleSimilarity,
}

impl Baseline {
    pub fn name(self) -> &'static str {
        match self {
            Baseline::ScorePairs => "score-pairs",
            Baseline::TitleSimilarity => "title-similarity",
        }
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "score-pairs" | "score_pairs" => Ok(Baseline::ScorePairs),
            "title-similarity" | "title_similarity" => Ok(Baseline::TitleSimilarity),
            other => Err(Error::Config(format!("unknown baseline {other:?}"))),
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inclusive threshold grid `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        // round away accumulated representation error so thresholds print cleanly
        (0..=n).map(|i| ((self.lo + i as f64 * self.step) * 1e9).round() / 1e9).collect()
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid { lo: 0.0, hi: 2.0, step: 0.05 }
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Config(format!("grid {s:?} is not lo:hi:step"));
        let [lo, hi, step] = parts[..] else {
            return Err(bad());
        };
        let p = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
        let g = Grid { lo: p(lo)?, hi: p(hi)?, step: p(step)? };
        if g.step.is_nan() || g.step <= 0.0 || g.hi.is_nan() || g.hi < g.lo {
            return Err(bad());
        }
        Ok(g)
    }
}

/// All settings of a run. Unset training fields fall back to the
/// schema's defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub triples: Option<PathBuf>,
    pub schema: Schema,
    pub variant: Variant,
    pub vectors: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub threshold: Option<f64>,
    pub grid: Grid,
    pub baseline: Option<Baseline>,
    pub post_filter: bool,
    pub seed: u64,
    pub out: PathBuf,
    /// Dimension of fallback title vectors when no vector file is given.
    pub text_dim: usize,
    pub document_source: DocumentSource,
    /// Score-Pairs links only pairs scoring strictly above the threshold.
    pub strict_pairs: bool,
    pub dim: Option<usize>,
    pub learning_rate: Option<f64>,
    pub negatives: Option<usize>,
    pub batch_size: Option<usize>,
    pub smoothing: Option<f64>,
    pub max_epochs: Option<usize>,
    pub eval_frequency: Option<usize>,
    pub patience: Option<usize>,
    pub validation_limit: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            triples: None,
            schema: Schema::Oc,
            variant: Variant::Unimodal,
            vectors: None,
            truth: None,
            threshold: None,
            grid: Grid::default(),
            baseline: None,
            post_filter: false,
            seed: 42,
            out: PathBuf::from("land-out"),
            text_dim: 64,
            document_source: DocumentSource::Fused,
            strict_pairs: false,
            dim: None,
            learning_rate: None,
            negatives: None,
            batch_size: None,
            smoothing: None,
            max_epochs: None,
            eval_frequency: None,
            patience: None,
            validation_limit: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::Config(format!("bad value {value:?} for {key}"))),
    }
}

impl PipelineConfig {
    /// Parse a `key = value` file; `#` starts a comment.
    pub fn from_str_config(text: &str) -> Result<Self> {
        let mut cfg = PipelineConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected key = value, found {line:?}"),
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_str_config(&fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "triples" => self.triples = Some(value.into()),
            "schema" => self.schema = parse(key, value)?,
            "variant" => self.variant = parse(key, value)?,
            "vectors" => self.vectors = Some(value.into()),
            "truth" => self.truth = Some(value.into()),
            "threshold" => self.threshold = Some(parse(key, value)?),
            "grid" => self.grid = value.parse()?,
            "baseline" => self.baseline = Some(value.parse()?),
            "post_filter" => self.post_filter = parse_bool(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "out" => self.out = value.into(),
            "text_dim" => self.text_dim = parse(key, value)?,
            "document_source" => {
                self.document_source = match value {
                    "fused" => DocumentSource::Fused,
                    "raw" => DocumentSource::Raw,
                    _ => return Err(Error::Config(format!("document_source must be fused or raw, found {value:?}"))),
                }
            }
            "strict_pairs" => self.strict_pairs = parse_bool(key, value)?,
            "dim" => self.dim = Some(parse(key, value)?),
            "learning_rate" => self.learning_rate = Some(parse(key, value)?),
            "negatives" => self.negatives = Some(parse(key, value)?),
            "batch_size" => self.batch_size = Some(parse(key, value)?),
            "smoothing" => self.smoothing = Some(parse(key, value)?),
            "max_epochs" => self.max_epochs = Some(parse(key, value)?),
            "eval_frequency" => self.eval_frequency = Some(parse(key, value)?),
            "patience" => self.patience = Some(parse(key, value)?),
            "validation_limit" => self.validation_limit = Some(parse(key, value)?),
            _ => return Err(Error::Config(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Training settings: schema defaults, then overrides, then the derived
    /// initialization seed.
    pub fn train_config(&self) -> TrainConfig {
        let base = match self.schema {
            Schema::Oc => TrainConfig::oc(),
            Schema::Aminer => TrainConfig::aminer(),
        };
        TrainConfig {
            dim: self.dim.unwrap_or(base.dim),
            learning_rate: self.learning_rate.unwrap_or(base.learning_rate),
            negatives: self.negatives.unwrap_or(base.negatives),
            batch_size: self.batch_size.unwrap_or(base.batch_size),
            smoothing: self.smoothing.unwrap_or(base.smoothing),
            max_epochs: self.max_epochs.unwrap_or(base.max_epochs),
            eval_frequency: self.eval_frequency.unwrap_or(base.eval_frequency),
            patience: self.patience.unwrap_or(base.patience),
            validation_limit: self.validation_limit.unwrap_or(base.validation_limit),
            seed: self.seed + INIT_SEED_OFFSET,
        }
    }

    /// Clustering threshold: explicit, else the best value reported for the
    /// schema's dataset.
    pub fn cluster_threshold(&self) -> f64 {
        self.threshold.unwrap_or(match self.schema {
            Schema::Oc => 0.6,
            Schema::Aminer => 0.26,
        })
    }

    pub fn artifact(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    /// Path of an artifact that an earlier command must have written.
    pub fn require(&self, name: &str, producer: &'static str) -> Result<PathBuf> {
        let path = self.artifact(name);
        if path.exists() {
            Ok(path)
        } else {
            Err(Error::MissingArtifact { path, producer })
        }
    }

    /// Path of a user-supplied input, checked for existence.
    pub fn input(&self, path: &Option<PathBuf>, key: &str) -> Result<PathBuf> {
        match path {
            Some(p) if p.exists() => Ok(p.clone()),
            Some(p) => Err(Error::Config(format!("{key} file {} does not exist", p.display()))),
            None => Err(Error::Config(format!("this command needs --{key}"))),
        }
    }
}

/// Write through a temporary sibling file, then rename over `path`.
pub fn write_atomic(path: &Path, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        f(&mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points() {
        let g: Grid = "0:2:0.05".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 41);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[12], 0.6);
        assert_eq!(pts[40], 2.0);
        assert_eq!("0.1:0.3:0.1".parse::<Grid>().unwrap().points(), vec![0.1, 0.2, 0.3]);
        assert!("0:2".parse::<Grid>().is_err());
        assert!("0:2:0".parse::<Grid>().is_err());
        assert!("1:0:0.1".parse::<Grid>().is_err());
    }

    #[test]
    fn config_file_and_overrides() {
        let mut cfg = PipelineConfig::from_str_config(
            "# run\nschema = aminer\nvariant = g_gru\nthreshold=0.3\npost_filter = true\ndim = 16 # small\n",
        )
        .unwrap();
        assert_eq!(cfg.schema, Schema::Aminer);
        assert_eq!(cfg.variant, Variant::GGru);
        assert!(cfg.post_filter);
        let t = cfg.train_config();
        assert_eq!((t.dim, t.learning_rate, t.negatives), (16, 0.0001, 32));
        assert_eq!(t.seed, 43);
        cfg.set("threshold", "0.5").unwrap();
        assert_eq!(cfg.cluster_threshold(), 0.5);
        assert!(cfg.set("nope", "1").is_err());
        assert!(PipelineConfig::from_str_config("dim 3").is_err());
    }

    #[test]
    fn default_thresholds() {
        let mut cfg = PipelineConfig::default();
        assert_eq!(cfg.cluster_threshold(), 0.6);
        cfg.schema = Schema::Aminer;
        assert_eq!(cfg.cluster_threshold(), 0.26);
    }

    #[test]
    fn missing_artifact_names_producer() {
        let cfg = PipelineConfig {
            out: PathBuf::from("/nonexistent/land"),
            ..PipelineConfig::default()
        };
        let err = cfg.require("model.ckpt", "train").unwrap_err();
        assert!(err.to_string().contains("land train"), "{err}");
    }
}
