//! Quantitative pipeline for studying counter-speech in hateful social media threads.
//!
//! The crate is split along the stages of the analysis:
//!
//! - [`thread`]: posts, threads, label codes and per-thread interaction statistics.
//! - [`annotation`]: collation of independent annotators and per-label consensus.
//! - [`regression`]: the thread-length OLS model with inference and table rendering.
//! - [`textfeat`]: tokenization, stemming, CoNLL-U ingestion and sparse n-gram features.
//! - [`svm`]: min-max scaling, a dual coordinate-descent linear SVM, one-vs-rest
//!   multiclass training, stratified folds and evaluation.
//! - [`pipeline`]: featurize, train, cross-validate and classify labelled posts.

pub mod annotation;
pub mod pipeline;
pub mod regression;
pub mod sparse;
pub mod svm;
pub mod textfeat;
pub mod thread;

pub use annotation::{collate, conflate, consensus, AnnotationRecord, ConsensusResult, Tally};
pub use thread::{
    assemble_thread, compute_thread_stats, ConflatedClass, LabelCode, Post, PostLabel, RawPost,
    Strand, Thread, ThreadStats,
};
pub use pipeline::{cross_validate, train_classifier, ClassifierConfig, CvOutcome, LabeledPost, TrainedClassifier};
