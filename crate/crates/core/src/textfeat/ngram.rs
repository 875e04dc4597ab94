use super::{stem, DepUnit, TextFeatError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Multiset of n-gram strings.
pub type NgramCounts = BTreeMap<String, usize>;

/// Inclusive n-gram size range with `1 <= min <= max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct NgramRange {
    min: usize,
    max: usize,
}

impl NgramRange {
    pub const WORDS: NgramRange = NgramRange { min: 1, max: 5 };
    pub const DEPS: NgramRange = NgramRange { min: 1, max: 3 };

    pub fn new(min: usize, max: usize) -> Result<Self, TextFeatError> {
        if min == 0 || min > max {
            return Err(TextFeatError::InvalidRange { min, max });
        }
        Ok(NgramRange { min, max })
    }

    pub fn min(self) -> usize {
        self.min
    }

    pub fn max(self) -> usize {
        self.max
    }
}

impl TryFrom<(usize, usize)> for NgramRange {
    type Error = TextFeatError;

    fn try_from((min, max): (usize, usize)) -> Result<Self, Self::Error> {
        NgramRange::new(min, max)
    }
}

impl From<NgramRange> for (usize, usize) {
    fn from(r: NgramRange) -> Self {
        (r.min, r.max)
    }
}

/// Contiguous n-grams of `items`, joined by a single space.
pub fn ngrams<S: AsRef<str>>(items: &[S], range: NgramRange) -> NgramCounts {
    let mut counts = NgramCounts::new();
    for n in range.min..=range.max.min(items.len()) {
        for window in items.windows(n) {
            let mut gram = String::new();
            for (i, item) in window.iter().enumerate() {
                if i > 0 {
                    gram.push(' ');
                }
                gram.push_str(item.as_ref());
            }
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// N-grams over stemmed tokens.
pub fn word_ngrams<S: AsRef<str>>(tokens: &[S], range: NgramRange) -> NgramCounts {
    let stemmed: Vec<String> = tokens.iter().map(|t| stem(t.as_ref())).collect();
    ngrams(&stemmed, range)
}

/// N-grams over rendered dependency units (no stemming).
pub fn dep_ngrams(units: &[DepUnit], range: NgramRange) -> NgramCounts {
    let rendered: Vec<String> = units.iter().map(DepUnit::rendered).collect();
    ngrams(&rendered, range)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unigrams_and_bigrams() {
        let got = ngrams(&["a", "b", "c"], NgramRange::new(1, 2).unwrap());
        let want: NgramCounts = ["a", "b", "c", "a b", "b c"].iter().map(|s| (s.to_string(), 1)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_and_single() {
        assert!(word_ngrams::<&str>(&[], NgramRange::WORDS).is_empty());
        let unit = DepUnit::new("root", "ROOT", "hi");
        let got = dep_ngrams(std::slice::from_ref(&unit), NgramRange::DEPS);
        assert_eq!(got, NgramCounts::from([("root(ROOT, hi)".to_string(), 1)]));
    }

    #[test]
    fn repeated_grams_are_counted() {
        let got = word_ngrams(&["loving", "loving"], NgramRange::new(1, 2).unwrap());
        assert_eq!(got["love"], 2);
        assert_eq!(got["love love"], 1);
    }

    #[test]
    fn range_validation() {
        assert!(NgramRange::new(0, 2).is_err());
        assert!(NgramRange::new(3, 2).is_err());
    }
}
