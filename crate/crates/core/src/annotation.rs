//! Collation of independent annotators and per-label consensus.
//!
//! Agreement is measured per label: a code reaches consensus on a post when the
//! fraction of annotators who assigned it is at least the threshold. A post is
//! retained when some code reaches consensus and `Undecided` does not.

use crate::thread::{ConflatedClass, LabelCode, PostLabel};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};

pub const DEFAULT_THRESHOLD: f64 = 0.75;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnnotationError {
    #[error("annotator `{annotator_id}` labelled post `{post_id}` more than once")]
    DuplicateAnnotation { post_id: String, annotator_id: String },
    #[error("unknown label code {code} on post `{post_id}`")]
    UnknownCode { post_id: String, code: LabelCode },
    #[error("annotator `{annotator_id}` gave post `{post_id}` an empty label set")]
    EmptyLabels { post_id: String, annotator_id: String },
    #[error("annotator `{annotator_id}` combined undecided with other codes on post `{post_id}`")]
    UndecidedMixed { post_id: String, annotator_id: String },
    #[error("post `{post_id}` has {found} annotators but only {expected} were declared")]
    TooManyAnnotators { post_id: String, found: usize, expected: usize },
    #[error("annotator count must be at least 1")]
    NoAnnotators,
    #[error("cannot conflate an empty code set")]
    EmptyCodeSet,
    #[error("undecided cannot be conflated")]
    UndecidedCode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub post_id: String,
    pub annotator_id: String,
    pub labels: BTreeSet<LabelCode>,
}

impl AnnotationRecord {
    pub fn new(post_id: &str, annotator_id: &str, labels: &[LabelCode]) -> Self {
        AnnotationRecord {
            post_id: post_id.to_string(),
            annotator_id: annotator_id.to_string(),
            labels: labels.iter().copied().collect(),
        }
    }
}

/// Per-post count of annotators assigning each code.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub counts: BTreeMap<LabelCode, usize>,
    /// Annotators who labelled this post at all.
    pub annotators: usize,
}

impl Tally {
    pub fn count(&self, code: LabelCode) -> usize {
        self.counts.get(&code).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsensusResult {
    pub post_id: String,
    pub consensus_labels: BTreeSet<LabelCode>,
    pub retained: bool,
    pub agreement: BTreeMap<LabelCode, f64>,
}

impl ConsensusResult {
    /// Conflated label for a retained post, `None` when the post was dropped.
    pub fn post_label(&self) -> Option<PostLabel> {
        if !self.retained {
            return None;
        }
        post_label(&self.consensus_labels).ok()
    }
}

pub fn collate(
    records: &[AnnotationRecord],
    n_annotators: usize,
) -> Result<BTreeMap<String, Tally>, AnnotationError> {
    if n_annotators == 0 {
        return Err(AnnotationError::NoAnnotators);
    }
    let mut seen: HashSet<(&str, &str)> = HashSet::with_capacity(records.len());
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for r in records {
        if !seen.insert((r.post_id.as_str(), r.annotator_id.as_str())) {
            return Err(AnnotationError::DuplicateAnnotation {
                post_id: r.post_id.clone(),
                annotator_id: r.annotator_id.clone(),
            });
        }
        if r.labels.is_empty() {
            return Err(AnnotationError::EmptyLabels {
                post_id: r.post_id.clone(),
                annotator_id: r.annotator_id.clone(),
            });
        }
        if r.labels.len() > 1 && r.labels.contains(&LabelCode::Undecided) {
            return Err(AnnotationError::UndecidedMixed {
                post_id: r.post_id.clone(),
                annotator_id: r.annotator_id.clone(),
            });
        }
        if let Some(&code) = r
            .labels
            .iter()
            .find(|c| matches!(c, LabelCode::Code(v) if *v > LabelCode::MAX_CODE))
        {
            return Err(AnnotationError::UnknownCode {
                post_id: r.post_id.clone(),
                code,
            });
        }
        let tally = tallies.entry(r.post_id.clone()).or_default();
        tally.annotators += 1;
        if tally.annotators > n_annotators {
            return Err(AnnotationError::TooManyAnnotators {
                post_id: r.post_id.clone(),
                found: tally.annotators,
                expected: n_annotators,
            });
        }
        for &code in &r.labels {
            *tally.counts.entry(code).or_insert(0) += 1;
        }
    }
    Ok(tallies)
}

/// Applies the agreement threshold (inclusive) to one post's tally.
///
/// Fractions are taken over the declared annotator count, so a missing
/// annotation counts against agreement.
pub fn consensus(post_id: &str, tally: &Tally, n_annotators: usize, threshold: f64) -> ConsensusResult {
    let n = n_annotators.max(1) as f64;
    let agreement: BTreeMap<LabelCode, f64> = tally
        .counts
        .iter()
        .map(|(&code, &count)| (code, count as f64 / n))
        .collect();
    let consensus_labels: BTreeSet<LabelCode> = agreement
        .iter()
        .filter(|(_, &frac)| frac >= threshold)
        .map(|(&code, _)| code)
        .collect();
    let retained =
        !consensus_labels.is_empty() && !consensus_labels.contains(&LabelCode::Undecided);
    ConsensusResult {
        post_id: post_id.to_string(),
        consensus_labels,
        retained,
        agreement,
    }
}

/// Folds raw codes into one of the four analysis classes.
///
/// When codes map to different classes the winner follows the priority
/// CyberHate > DisagreeOrInsult > SupportHate > General.
pub fn conflate(codes: &BTreeSet<LabelCode>) -> Result<ConflatedClass, AnnotationError> {
    if codes.is_empty() {
        return Err(AnnotationError::EmptyCodeSet);
    }
    let mut best: Option<ConflatedClass> = None;
    for code in codes {
        let class = code.conflated().ok_or(AnnotationError::UndecidedCode)?;
        if best.is_none_or(|b| class.priority() < b.priority()) {
            best = Some(class);
        }
    }
    best.ok_or(AnnotationError::EmptyCodeSet)
}

/// Conflated class plus the disagreement/insult flags the thread statistics need.
pub fn post_label(codes: &BTreeSet<LabelCode>) -> Result<PostLabel, AnnotationError> {
    let class = conflate(codes)?;
    Ok(PostLabel {
        class,
        disagreement: codes.contains(&LabelCode::DISAGREE)
            || codes.contains(&LabelCode::DISAGREE_EVIDENCE),
        insult: codes.contains(&LabelCode::INSULT),
    })
}
