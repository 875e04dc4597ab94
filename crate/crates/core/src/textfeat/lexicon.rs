use super::tokenize;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Hateful-term list; multi-word phrases match contiguous raw tokens.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(from = "LexiconRepr")]
pub struct Lexicon {
    terms: BTreeSet<String>,
    source: String,
    #[serde(skip)]
    phrases: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct LexiconRepr {
    terms: BTreeSet<String>,
    source: String,
}

impl From<LexiconRepr> for Lexicon {
    fn from(r: LexiconRepr) -> Self {
        Lexicon::new(r.terms, &r.source)
    }
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.source == other.source
    }
}

impl Eq for Lexicon {}

impl Lexicon {
    pub fn new<I, S>(terms: I, source: &str) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let terms: BTreeSet<String> = terms
            .into_iter()
            .map(|t| t.as_ref().trim().to_lowercase())
            .filter(|t| !t.is_empty())
            .collect();
        let mut lex = Lexicon {
            terms,
            source: source.to_string(),
            phrases: Vec::new(),
        };
        lex.rebuild();
        lex
    }

    fn rebuild(&mut self) {
        self.phrases = self
            .terms
            .iter()
            .map(|t| tokenize(t))
            .filter(|p| !p.is_empty())
            .collect();
    }

    pub fn terms(&self) -> &BTreeSet<String> {
        &self.terms
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (possibly overlapping) phrase occurrences in `tokens`.
    pub fn count_matches<S: AsRef<str>>(&self, tokens: &[S]) -> usize {
        self.phrases
            .iter()
            .map(|phrase| {
                tokens
                    .windows(phrase.len())
                    .filter(|w| w.iter().zip(phrase).all(|(t, p)| t.as_ref() == p))
                    .count()
            })
            .sum()
    }
}

/// Reads a newline-delimited term list; blank lines and `#` comments are ignored.
///
/// An empty result is logged as a warning, not an error.
pub fn load_lexicon(text: &str, source: &str) -> Lexicon {
    let lex = Lexicon::new(
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#')),
        source,
    );
    if lex.is_empty() {
        log::warn!("lexicon `{source}` contains no terms");
    }
    lex
}
