use super::{ConflatedClass, PostLabel, Thread, ThreadError};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Regressor names in design-matrix column order.
pub const PREDICTOR_NAMES: [&str; 8] = [
    "hatecount",
    "support",
    "disagree",
    "insults",
    "uniqcontributors",
    "origpostertweets",
    "uniqhatefulcontributors",
    "uniqCScontributors",
];

/// Interaction counts for one thread; `length` is the regression response.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreadStats {
    /// Posts in the thread including the source.
    pub length: usize,
    pub hatecount: usize,
    pub support: usize,
    pub disagree: usize,
    pub insults: usize,
    pub uniqcontributors: usize,
    /// Replies written by the source author.
    pub origpostertweets: usize,
    pub uniqhatefulcontributors: usize,
    #[serde(rename = "uniqCScontributors")]
    pub uniq_cs_contributors: usize,
}

impl ThreadStats {
    pub fn predictors(&self) -> [f64; 8] {
        [
            self.hatecount as f64,
            self.support as f64,
            self.disagree as f64,
            self.insults as f64,
            self.uniqcontributors as f64,
            self.origpostertweets as f64,
            self.uniqhatefulcontributors as f64,
            self.uniq_cs_contributors as f64,
        ]
    }
}

/// Counts reply categories and contributor sets over a (consensus-filtered) thread.
///
/// Each reply lands in at most one category, picked by its conflated class.
/// A counter-speech reply counts as `disagree` when a disagreement code reached
/// consensus and as `insults` otherwise. The source post only contributes to
/// `length` and `uniqcontributors`.
pub fn compute_thread_stats(
    thread: &Thread,
    labels: &HashMap<String, PostLabel>,
) -> Result<ThreadStats, ThreadError> {
    let source_author = thread.source().author.as_str();
    let mut authors: HashSet<&str> = HashSet::from([source_author]);
    let mut hateful: HashSet<&str> = HashSet::new();
    let mut counter: HashSet<&str> = HashSet::new();
    let mut stats = ThreadStats {
        length: thread.len(),
        ..ThreadStats::default()
    };

    for reply in thread.replies() {
        let label = labels
            .get(&reply.post_id)
            .ok_or_else(|| ThreadError::MissingLabel(reply.post_id.clone()))?;
        let author = reply.author.as_str();
        authors.insert(author);
        if author == source_author {
            stats.origpostertweets += 1;
        }
        match label.class {
            ConflatedClass::CyberHate => {
                stats.hatecount += 1;
                hateful.insert(author);
            }
            ConflatedClass::SupportHate => stats.support += 1,
            ConflatedClass::DisagreeOrInsult => {
                if label.disagreement || !label.insult {
                    stats.disagree += 1;
                } else {
                    stats.insults += 1;
                }
                counter.insert(author);
            }
            ConflatedClass::General => {}
        }
    }
    stats.uniqcontributors = authors.len();
    stats.uniqhatefulcontributors = hateful.len();
    stats.uniq_cs_contributors = counter.len();
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thread::{assemble_thread, RawPost, Strand};

    #[test]
    fn source_only() {
        let t = assemble_thread(&[RawPost::new("s", "A", None, "")], "t", Strand::Sexist).unwrap();
        let s = compute_thread_stats(&t, &HashMap::new()).unwrap();
        assert_eq!(
            s,
            ThreadStats {
                length: 1,
                uniqcontributors: 1,
                ..ThreadStats::default()
            }
        );
    }

    #[test]
    fn mixed_thread() {
        let recs = [
            RawPost::new("s", "A", None, ""),
            RawPost::new("r1", "B", Some("s"), ""),
            RawPost::new("r2", "A", Some("s"), ""),
            RawPost::new("r3", "C", Some("s"), ""),
        ];
        let t = assemble_thread(&recs, "t", Strand::Sexist).unwrap();
        let labels = HashMap::from([
            ("r1".to_string(), PostLabel::new(ConflatedClass::DisagreeOrInsult)),
            ("r2".to_string(), PostLabel::new(ConflatedClass::General)),
            ("r3".to_string(), PostLabel::new(ConflatedClass::DisagreeOrInsult)),
        ]);
        let s = compute_thread_stats(&t, &labels).unwrap();
        assert_eq!(s.length, 4);
        assert_eq!(s.disagree, 2);
        assert_eq!(s.uniqcontributors, 3);
        assert_eq!(s.origpostertweets, 1);
        assert_eq!(s.uniq_cs_contributors, 2);
        assert_eq!(s.hatecount, 0);
    }

    #[test]
    fn insult_only_reply_counts_as_insult() {
        let recs = [RawPost::new("s", "A", None, ""), RawPost::new("r", "B", Some("s"), "")];
        let t = assemble_thread(&recs, "t", Strand::Racist).unwrap();
        let labels = HashMap::from([("r".to_string(), PostLabel::insult())]);
        let s = compute_thread_stats(&t, &labels).unwrap();
        assert_eq!((s.disagree, s.insults, s.uniq_cs_contributors), (0, 1, 1));
    }

    #[test]
    fn missing_label() {
        let recs = [RawPost::new("s", "A", None, ""), RawPost::new("r", "B", Some("s"), "")];
        let t = assemble_thread(&recs, "t", Strand::Racist).unwrap();
        assert_eq!(
            compute_thread_stats(&t, &HashMap::new()),
            Err(ThreadError::MissingLabel("r".into()))
        );
    }
}
