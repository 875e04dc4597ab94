//! Featurize, train, cross-validate and classify labelled posts.

use crate::sparse::SparseVec;
use crate::svm::{
    evaluate, fit_scaling, kfold_stratified, train_ovr, EvalReport, MulticlassModel, ScalingParams, SvmError,
    SvmParams, DEFAULT_SEED,
};
use crate::textfeat::{ChannelSet, FeatureConfig, FeatureSpace, Lexicon, PostNgrams};
use crate::thread::ConflatedClass;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Svm(#[from] SvmError),
    #[error("no post has the inputs required by channel set {0}")]
    NoUsablePosts(ChannelSet),
    #[error("post {0} lacks a dependency parse")]
    MissingParses(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPost {
    pub post_id: String,
    pub ngrams: PostNgrams,
    pub label: ConflatedClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub channels: ChannelSet,
    pub features: FeatureConfig,
    pub svm: SvmParams,
    pub folds: usize,
    pub seed: u64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            channels: ChannelSet::WORDS,
            features: FeatureConfig::default(),
            svm: SvmParams::default(),
            folds: 10,
            seed: DEFAULT_SEED,
        }
    }
}

/// Feature space, scaling and SVM fitted on one training set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedClassifier {
    pub space: FeatureSpace,
    pub scaling: ScalingParams,
    pub model: MulticlassModel,
}

impl TrainedClassifier {
    pub fn features(&self, post: &PostNgrams) -> Result<SparseVec, SvmError> {
        self.scaling.apply(&self.space.vectorize(post))
    }

    pub fn predict(&self, post: &PostNgrams) -> Result<ConflatedClass, PipelineError> {
        Ok(self.model.predict(&self.features(post)?)?)
    }

    /// Like [`predict`](Self::predict) but refuses posts the feature space
    /// cannot fully describe (a dependency channel without a parse).
    pub fn classify(&self, post_id: &str, post: &PostNgrams) -> Result<ConflatedClass, PipelineError> {
        if !self.space.covers(post) {
            return Err(PipelineError::MissingParses(post_id.to_string()));
        }
        self.predict(post)
    }
}

pub fn train_classifier(
    posts: &[&LabeledPost],
    config: &ClassifierConfig,
    lexicon: Option<&Lexicon>,
) -> Result<TrainedClassifier, PipelineError> {
    let space = FeatureSpace::fit(
        posts.iter().map(|p| &p.ngrams),
        config.channels,
        config.features,
        lexicon.cloned(),
    );
    let dim = space.dim();
    let raw: Vec<SparseVec> = posts.iter().map(|p| space.vectorize(&p.ngrams)).collect();
    let scaling = fit_scaling(&raw, dim)?;
    let rows = raw.iter().map(|x| scaling.apply(x)).collect::<Result<Vec<_>, _>>()?;
    let labels: Vec<ConflatedClass> = posts.iter().map(|p| p.label).collect();
    let model = train_ovr(&rows, &labels, dim, &config.svm)?;
    Ok(TrainedClassifier { space, scaling, model })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvOutcome {
    pub channels: ChannelSet,
    pub report: EvalReport,
    pub fold_reports: Vec<EvalReport>,
    /// `(post_id, gold, predicted)` in input order for evaluated posts.
    pub predictions: Vec<(String, ConflatedClass, ConflatedClass)>,
    /// Posts dropped because a required parse was missing.
    pub skipped: Vec<String>,
}

/// Stratified k-fold cross-validation. Vocabularies and scaling are refitted
/// on every training fold; folds run in parallel and are merged in order.
pub fn cross_validate(
    posts: &[LabeledPost],
    config: &ClassifierConfig,
    lexicon: Option<&Lexicon>,
) -> Result<CvOutcome, PipelineError> {
    let needs_parse = config.channels.deps;
    let (usable, skipped): (Vec<&LabeledPost>, Vec<&LabeledPost>) =
        posts.iter().partition(|p| !needs_parse || p.ngrams.deps.is_some());
    for p in &skipped {
        log::warn!("skipping post {}: no dependency parse", p.post_id);
    }
    if usable.is_empty() {
        return Err(PipelineError::NoUsablePosts(config.channels));
    }
    let labels: Vec<ConflatedClass> = usable.iter().map(|p| p.label).collect();
    let folds = kfold_stratified(&labels, config.folds, config.seed)?;

    let fold_preds: Vec<Vec<(usize, ConflatedClass)>> = folds
        .par_iter()
        .map(|test| -> Result<_, PipelineError> {
            let mut in_test = vec![false; usable.len()];
            for &i in test {
                in_test[i] = true;
            }
            let train: Vec<&LabeledPost> = (0..usable.len()).filter(|&i| !in_test[i]).map(|i| usable[i]).collect();
            let clf = train_classifier(&train, config, lexicon)?;
            test.iter()
                .map(|&i| Ok((i, clf.predict(&usable[i].ngrams)?)))
                .collect()
        })
        .collect::<Result<_, _>>()?;

    let mut predicted = vec![ConflatedClass::General; usable.len()];
    let mut fold_reports = Vec::with_capacity(folds.len());
    for preds in &fold_preds {
        let gold: Vec<ConflatedClass> = preds.iter().map(|&(i, _)| labels[i]).collect();
        let pred: Vec<ConflatedClass> = preds.iter().map(|&(_, p)| p).collect();
        fold_reports.push(evaluate(&gold, &pred)?);
        for &(i, p) in preds {
            predicted[i] = p;
        }
    }
    let report = evaluate(&labels, &predicted)?;
    let predictions = usable
        .iter()
        .zip(&predicted)
        .map(|(p, &pred)| (p.post_id.clone(), p.label, pred))
        .collect();
    Ok(CvOutcome {
        channels: config.channels,
        report,
        fold_reports,
        predictions,
        skipped: skipped.iter().map(|p| p.post_id.clone()).collect(),
    })
}
