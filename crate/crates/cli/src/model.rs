//! Versioned model file.

use crate::error::{CliError, Result};
use counterthread::pipeline::{ClassifierConfig, TrainedClassifier};
use counterthread::svm::{MulticlassModel, ScalingParams};
use counterthread::textfeat::FeatureSpace;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u64,
    pub strand: String,
    pub features: FeatureSpace,
    pub scaling: ScalingParams,
    pub models: MulticlassModel,
    pub config: ClassifierConfig,
}

impl ModelFile {
    pub fn new(strand: &str, classifier: TrainedClassifier, config: ClassifierConfig) -> Self {
        ModelFile {
            format_version: FORMAT_VERSION,
            strand: strand.to_string(),
            features: classifier.space,
            scaling: classifier.scaling,
            models: classifier.model,
            config,
        }
    }

    pub fn classifier(&self) -> TrainedClassifier {
        TrainedClassifier {
            space: self.features.clone(),
            scaling: self.scaling.clone(),
            model: self.models.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    /// Parses a model, checking the version before the rest of the layout.
    pub fn from_json(text: &str, path: &Path) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::parse(path, e))?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| CliError::parse(path, "missing format_version"))?;
        if found != FORMAT_VERSION {
            return Err(CliError::VersionMismatch {
                found,
                expected: FORMAT_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| CliError::parse(path, e))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::formats::write_file(path, &self.to_json())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&crate::formats::read_file(path)?, path)
    }
}
