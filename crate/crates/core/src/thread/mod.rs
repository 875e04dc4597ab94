//! Posts, threads and per-thread interaction statistics.

mod labels;
mod stats;

pub use labels::{ConflatedClass, LabelCode, PostLabel, UnknownCode};
pub use stats::{compute_thread_stats, ThreadStats, PREDICTOR_NAMES};

use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThreadError {
    #[error("thread has no posts")]
    EmptyThread,
    #[error("thread has no source post (every record has reply_to set)")]
    MissingSource,
    #[error("thread has {0} records without reply_to; exactly one source is allowed")]
    MultipleSources(usize),
    #[error("duplicate post id `{0}`")]
    DuplicatePostId(String),
    #[error("reply `{0}` has no label entry")]
    MissingLabel(String),
}

/// The bias type a thread was sampled for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    Sexist,
    Racist,
    Homophobic,
}

impl Strand {
    pub const ALL: [Strand; 3] = [Strand::Sexist, Strand::Racist, Strand::Homophobic];

    pub fn as_str(self) -> &'static str {
        match self {
            Strand::Sexist => "sexist",
            Strand::Racist => "racist",
            Strand::Homophobic => "homophobic",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Strand::Sexist => "Sexist",
            Strand::Racist => "Racist",
            Strand::Homophobic => "Homophobic",
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strand `{0}` (expected sexist, racist or homophobic)")]
pub struct UnknownStrand(pub String);

impl FromStr for Strand {
    type Err = UnknownStrand;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sexist" => Ok(Strand::Sexist),
            "racist" => Ok(Strand::Racist),
            "homophobic" => Ok(Strand::Homophobic),
            _ => Err(UnknownStrand(s.to_string())),
        }
    }
}

/// One row of a scraped thread file, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPost {
    pub post_id: String,
    pub author: String,
    pub reply_to: Option<String>,
    pub text: String,
}

impl RawPost {
    pub fn new(post_id: &str, author: &str, reply_to: Option<&str>, text: &str) -> Self {
        RawPost {
            post_id: post_id.to_string(),
            author: author.to_string(),
            reply_to: reply_to.map(str::to_string),
            text: text.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: String,
    pub author: String,
    pub text: String,
    pub reply_to: Option<String>,
    pub position: usize,
    /// `reply_to` does not name a post that appears earlier in the thread.
    #[serde(default)]
    pub dangling: bool,
}

impl Post {
    pub fn is_source(&self) -> bool {
        self.reply_to.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub thread_id: String,
    pub strand: Strand,
    pub posts: Vec<Post>,
}

impl Thread {
    pub fn source(&self) -> &Post {
        &self.posts[0]
    }

    pub fn replies(&self) -> &[Post] {
        &self.posts[1..]
    }

    pub fn len(&self) -> usize {
        self.posts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posts.is_empty()
    }

    pub fn dangling(&self) -> impl Iterator<Item = &Post> {
        self.posts.iter().filter(|p| p.dangling)
    }

    /// Keeps the source and every reply accepted by `keep`, re-indexing positions.
    pub fn retain_replies<F>(&self, mut keep: F) -> Thread
    where
        F: FnMut(&Post) -> bool,
    {
        let posts = self
            .posts
            .iter()
            .enumerate()
            .filter(|(i, p)| *i == 0 || keep(p))
            .map(|(_, p)| p.clone())
            .enumerate()
            .map(|(position, p)| Post { position, ..p })
            .collect();
        Thread {
            thread_id: self.thread_id.clone(),
            strand: self.strand,
            posts,
        }
    }
}

/// Validates raw records of one thread file and orders them source-first.
///
/// Replies keep file order. A reply whose `reply_to` does not name an earlier
/// post is kept and flagged `dangling`.
pub fn assemble_thread(
    records: &[RawPost],
    thread_id: &str,
    strand: Strand,
) -> Result<Thread, ThreadError> {
    if records.is_empty() {
        return Err(ThreadError::EmptyThread);
    }
    let mut seen = HashSet::with_capacity(records.len());
    for r in records {
        if !seen.insert(r.post_id.as_str()) {
            return Err(ThreadError::DuplicatePostId(r.post_id.clone()));
        }
    }
    let sources: Vec<usize> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.reply_to.is_none())
        .map(|(i, _)| i)
        .collect();
    let source = match sources.as_slice() {
        [] => return Err(ThreadError::MissingSource),
        [one] => *one,
        many => return Err(ThreadError::MultipleSources(many.len())),
    };

    let ordered = std::iter::once(&records[source]).chain(
        records
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != source)
            .map(|(_, r)| r),
    );
    let mut earlier: HashSet<&str> = HashSet::with_capacity(records.len());
    let mut posts = Vec::with_capacity(records.len());
    for (position, r) in ordered.enumerate() {
        let dangling = match &r.reply_to {
            Some(parent) => !earlier.contains(parent.as_str()),
            None => false,
        };
        earlier.insert(r.post_id.as_str());
        posts.push(Post {
            post_id: r.post_id.clone(),
            author: r.author.clone(),
            text: r.text.clone(),
            reply_to: r.reply_to.clone(),
            position,
            dangling,
        });
    }
    Ok(Thread {
        thread_id: thread_id.to_string(),
        strand,
        posts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_post_thread() {
        let t = assemble_thread(&[RawPost::new("s", "a", None, "x")], "t1", Strand::Racist).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.source().is_source());
        assert!(t.replies().is_empty());
    }

    #[test]
    fn reply_chain_is_not_dangling() {
        let recs = [
            RawPost::new("S", "a", None, "src"),
            RawPost::new("R1", "b", Some("S"), "r1"),
            RawPost::new("R2", "c", Some("R1"), "r2"),
        ];
        let t = assemble_thread(&recs, "t", Strand::Sexist).unwrap();
        let ids: Vec<&str> = t.posts.iter().map(|p| p.post_id.as_str()).collect();
        assert_eq!(ids, ["S", "R1", "R2"]);
        assert_eq!(t.dangling().count(), 0);
        assert_eq!(t.posts[2].position, 2);
    }

    #[test]
    fn source_moves_to_front() {
        let recs = [
            RawPost::new("R1", "b", Some("S"), "r1"),
            RawPost::new("S", "a", None, "src"),
            RawPost::new("R2", "c", Some("S"), "r2"),
        ];
        let t = assemble_thread(&recs, "t", Strand::Sexist).unwrap();
        let ids: Vec<&str> = t.posts.iter().map(|p| p.post_id.as_str()).collect();
        assert_eq!(ids, ["S", "R1", "R2"]);
        assert_eq!(t.dangling().count(), 0);
    }

    #[test]
    fn errors() {
        assert_eq!(assemble_thread(&[], "t", Strand::Sexist), Err(ThreadError::EmptyThread));
        let two = [RawPost::new("a", "x", None, ""), RawPost::new("b", "y", None, "")];
        assert_eq!(
            assemble_thread(&two, "t", Strand::Sexist),
            Err(ThreadError::MultipleSources(2))
        );
        let dup = [RawPost::new("a", "x", None, ""), RawPost::new("a", "y", Some("a"), "")];
        assert_eq!(
            assemble_thread(&dup, "t", Strand::Sexist),
            Err(ThreadError::DuplicatePostId("a".into()))
        );
        let none = [RawPost::new("a", "x", Some("b"), "")];
        assert_eq!(assemble_thread(&none, "t", Strand::Sexist), Err(ThreadError::MissingSource));
    }

    #[test]
    fn retain_replies_keeps_source_and_reindexes() {
        let recs = [
            RawPost::new("S", "a", None, ""),
            RawPost::new("R1", "b", Some("S"), ""),
            RawPost::new("R2", "c", Some("S"), ""),
        ];
        let t = assemble_thread(&recs, "t", Strand::Sexist).unwrap();
        let kept = t.retain_replies(|p| p.post_id != "R1");
        assert_eq!(kept.len(), 2);
        assert_eq!(kept.posts[1].post_id, "R2");
        assert_eq!(kept.posts[1].position, 1);
        let none = t.retain_replies(|_| false);
        assert_eq!(none.len(), 1);
    }

    #[test]
    fn strand_parsing() {
        assert_eq!("Homophobic".parse::<Strand>().unwrap(), Strand::Homophobic);
        assert!("other".parse::<Strand>().is_err());
    }
}
