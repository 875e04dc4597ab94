use super::{
    build_vocabulary, dep_ngrams, tokenize, word_ngrams, DepUnit, Lexicon, NgramCounts, NgramRange,
    Vocabulary,
};
use crate::sparse::SparseVec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

pub const DEFAULT_VOCAB_SIZE: usize = 2000;

/// Which feature blocks a model uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelSet {
    pub words: bool,
    pub deps: bool,
    pub lexicon: bool,
}

impl ChannelSet {
    pub const WORDS: ChannelSet = ChannelSet { words: true, deps: false, lexicon: false };
    pub const DEPS: ChannelSet = ChannelSet { words: false, deps: true, lexicon: false };
    pub const BOTH: ChannelSet = ChannelSet { words: true, deps: true, lexicon: false };

    pub fn with_lexicon(self) -> Self {
        ChannelSet { lexicon: true, ..self }
    }
}

impl fmt::Display for ChannelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.words, self.deps) {
            (true, true) => "both",
            (true, false) => "words",
            (false, true) => "deps",
            (false, false) => "none",
        };
        if self.lexicon {
            if base == "none" {
                f.write_str("lexicon")
            } else {
                write!(f, "{base}+lexicon")
            }
        } else {
            f.write_str(base)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown channel set `{0}` (expected words, deps or both, optionally with +lexicon)")]
pub struct UnknownChannels(pub String);

impl FromStr for ChannelSet {
    type Err = UnknownChannels;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (base, lexicon) = match lower.strip_suffix("+lexicon") {
            Some(b) => (b, true),
            None => (lower.as_str(), false),
        };
        let set = match base {
            "words" => ChannelSet::WORDS,
            "deps" => ChannelSet::DEPS,
            "both" => ChannelSet::BOTH,
            "lexicon" if !lexicon => ChannelSet { words: false, deps: false, lexicon: true },
            _ => return Err(UnknownChannels(s.to_string())),
        };
        Ok(ChannelSet { lexicon: set.lexicon || lexicon, ..set })
    }
}

/// N-gram ranges and per-channel vocabulary cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub word_ngrams: NgramRange,
    pub dep_ngrams: NgramRange,
    pub vocab_size: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            word_ngrams: NgramRange::WORDS,
            dep_ngrams: NgramRange::DEPS,
            vocab_size: DEFAULT_VOCAB_SIZE,
        }
    }
}

/// Per-post raw material for every channel.
#[derive(Clone, Debug, PartialEq)]
pub struct PostNgrams {
    pub tokens: Vec<String>,
    pub words: NgramCounts,
    /// `None` when no parse is available for the post.
    pub deps: Option<NgramCounts>,
}

impl PostNgrams {
    pub fn extract(text: &str, units: Option<&[DepUnit]>, config: &FeatureConfig) -> Self {
        let tokens = tokenize(text);
        let words = word_ngrams(&tokens, config.word_ngrams);
        let deps = units.map(|u| dep_ngrams(u, config.dep_ngrams));
        PostNgrams { tokens, words, deps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    Words,
    Deps,
    Lexicon,
}

/// Vocabularies (and lexicon) fixing the column layout
/// `[word n-grams | dependency n-grams | lexicon density]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSpace {
    pub channels: ChannelSet,
    pub config: FeatureConfig,
    pub words: Option<Vocabulary>,
    pub deps: Option<Vocabulary>,
    pub lexicon: Option<Lexicon>,
}

impl FeatureSpace {
    /// Builds per-channel vocabularies from training posts. Posts without a
    /// parse contribute nothing to the dependency vocabulary.
    pub fn fit<'a, I>(posts: I, channels: ChannelSet, config: FeatureConfig, lexicon: Option<Lexicon>) -> Self
    where
        I: IntoIterator<Item = &'a PostNgrams> + Clone,
    {
        let words = channels
            .words
            .then(|| build_vocabulary(posts.clone().into_iter().map(|p| &p.words), config.vocab_size));
        let deps = channels.deps.then(|| {
            build_vocabulary(
                posts.clone().into_iter().filter_map(|p| p.deps.as_ref()),
                config.vocab_size,
            )
        });
        let lexicon = if channels.lexicon {
            Some(lexicon.unwrap_or_default())
        } else {
            None
        };
        FeatureSpace { channels, config, words, deps, lexicon }
    }

    pub fn blocks(&self) -> Vec<(Channel, Range<usize>)> {
        let mut out = Vec::new();
        let mut start = 0;
        if let Some(v) = &self.words {
            out.push((Channel::Words, start..start + v.len()));
            start += v.len();
        }
        if let Some(v) = &self.deps {
            out.push((Channel::Deps, start..start + v.len()));
            start += v.len();
        }
        if self.lexicon.is_some() {
            out.push((Channel::Lexicon, start..start + 1));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.blocks().last().map_or(0, |(_, r)| r.end)
    }

    /// Whether `post` has every input this space needs.
    pub fn covers(&self, post: &PostNgrams) -> bool {
        self.deps.is_none() || post.deps.is_some()
    }

    pub fn vectorize(&self, post: &PostNgrams) -> SparseVec {
        let mut pairs = Vec::new();
        for (channel, range) in self.blocks() {
            match channel {
                Channel::Words => {
                    let vocab = self.words.as_ref().expect("words block");
                    pairs.extend(l1_block(&post.words, vocab, range.start));
                }
                Channel::Deps => {
                    let vocab = self.deps.as_ref().expect("deps block");
                    if let Some(deps) = &post.deps {
                        pairs.extend(l1_block(deps, vocab, range.start));
                    }
                }
                Channel::Lexicon => {
                    let lex = self.lexicon.as_ref().expect("lexicon block");
                    if !post.tokens.is_empty() {
                        let density = lex.count_matches(&post.tokens) as f64 / post.tokens.len() as f64;
                        pairs.push((range.start, density));
                    }
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

/// Counts restricted to the vocabulary, divided by their own sum.
pub fn l1_normalize(counts: &BTreeMap<usize, usize>) -> Vec<(usize, f64)> {
    let total: usize = counts.values().sum();
    if total == 0 {
        return Vec::new();
    }
    counts
        .iter()
        .map(|(&col, &c)| (col, c as f64 / total as f64))
        .collect()
}

fn l1_block(counts: &NgramCounts, vocab: &Vocabulary, offset: usize) -> Vec<(usize, f64)> {
    let restricted: BTreeMap<usize, usize> = counts
        .iter()
        .filter_map(|(g, &c)| vocab.column(g).map(|col| (offset + col, c)))
        .collect();
    l1_normalize(&restricted)
}
