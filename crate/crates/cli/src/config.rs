//! Run configuration: TOML file values overridden by command-line flags.

use crate::error::{CliError, Result};
use counterthread::svm::DEFAULT_SEED;
use counterthread::textfeat::{ChannelSet, FeatureConfig, NgramRange, DEFAULT_VOCAB_SIZE};
use counterthread::Strand;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// One strand or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StrandFilter {
    #[default]
    All,
    Only(Strand),
}

impl StrandFilter {
    pub fn strands(self) -> Vec<Strand> {
        match self {
            StrandFilter::All => Strand::ALL.to_vec(),
            StrandFilter::Only(s) => vec![s],
        }
    }

    pub fn admits(self, strand: Strand) -> bool {
        matches!(self, StrandFilter::All) || self == StrandFilter::Only(strand)
    }
}

impl fmt::Display for StrandFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandFilter::All => f.write_str("all"),
            StrandFilter::Only(s) => f.write_str(s.as_str()),
        }
    }
}

impl FromStr for StrandFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(StrandFilter::All);
        }
        s.parse::<Strand>().map(StrandFilter::Only).map_err(|e| e.to_string())
    }
}

impl Serialize for StrandFilter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrandFilter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub threads: Option<PathBuf>,
    pub annotations: Option<PathBuf>,
    pub parses: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub out: PathBuf,
    pub strand: StrandFilter,
    pub k: usize,
    pub word_ngrams: (usize, usize),
    pub dep_ngrams: (usize, usize),
    pub c: f64,
    pub folds: usize,
    pub seed: u64,
    pub threshold: f64,
    pub annotators: usize,
    /// Channel sets for `cv`; `train` uses the first one.
    pub channels: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: None,
            annotations: None,
            parses: None,
            lexicon: None,
            model: None,
            input: None,
            out: PathBuf::from("out"),
            strand: StrandFilter::All,
            k: DEFAULT_VOCAB_SIZE,
            word_ngrams: NgramRange::WORDS.into(),
            dep_ngrams: NgramRange::DEPS.into(),
            c: 1.0,
            folds: 10,
            seed: DEFAULT_SEED,
            threshold: counterthread::annotation::DEFAULT_THRESHOLD,
            annotators: 4,
            channels: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::parse(path, e))
    }

    /// Checks numeric ranges and that every configured input path exists.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("k", self.k as f64),
            ("folds", self.folds as f64),
            ("annotators", self.annotators as f64),
            ("c", self.c),
            ("threshold", self.threshold),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{name} must be positive")));
            }
        }
        if self.threshold > 1.0 {
            return Err(CliError::Config("threshold must be at most 1".into()));
        }
        self.feature_config()?;
        self.channel_sets()?;
        let inputs = [
            &self.threads,
            &self.annotations,
            &self.parses,
            &self.lexicon,
            &self.input,
        ];
        for p in inputs.into_iter().flatten() {
            if !p.exists() {
                return Err(CliError::Config(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }

    pub fn feature_config(&self) -> Result<FeatureConfig> {
        let range = |(lo, hi): (usize, usize)| NgramRange::new(lo, hi).map_err(|e| CliError::Config(e.to_string()));
        Ok(FeatureConfig {
            word_ngrams: range(self.word_ngrams)?,
            dep_ngrams: range(self.dep_ngrams)?,
            vocab_size: self.k,
        })
    }

    /// Configured channel sets; defaults to `words`, plus `deps` and `both`
    /// when parses are available.
    pub fn channel_sets(&self) -> Result<Vec<ChannelSet>> {
        if self.channels.is_empty() {
            return Ok(if self.parses.is_some() {
                vec![ChannelSet::WORDS, ChannelSet::DEPS, ChannelSet::BOTH]
            } else {
                vec![ChannelSet::WORDS]
            });
        }
        self.channels
            .iter()
            .flat_map(|s| s.split(','))
            .map(|s| s.parse().map_err(|e: counterthread::textfeat::UnknownChannels| CliError::Config(e.to_string())))
            .collect()
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}
