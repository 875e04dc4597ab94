use super::NgramCounts;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Frozen n-gram vocabulary mapping each entry to a column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    entries: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_entries(entries: Vec<String>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Vocabulary { entries, index }
    }

    pub fn entries(&self) -> &[String] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, gram: &str) -> Option<usize> {
        self.index.get(gram).copied()
    }
}

impl From<Vec<String>> for Vocabulary {
    fn from(entries: Vec<String>) -> Self {
        Vocabulary::from_entries(entries)
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.entries
    }
}

/// Keeps the `k` n-grams with the highest total corpus count; ties go to the
/// lexicographically smaller n-gram.
pub fn build_vocabulary<'a, I>(docs: I, k: usize) -> Vocabulary
where
    I: IntoIterator<Item = &'a NgramCounts>,
{
    let mut totals: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in docs {
        for (gram, &count) in doc {
            *totals.entry(gram.as_str()).or_insert(0) += count;
        }
    }
    let mut ranked: Vec<(&str, usize)> = totals.into_iter().collect();
    // BTreeMap order is lexicographic, so a stable sort on count keeps the tiebreak.
    ranked.sort_by_key(|&(_, count)| std::cmp::Reverse(count));
    ranked.truncate(k);
    Vocabulary::from_entries(ranked.into_iter().map(|(g, _)| g.to_string()).collect())
}
