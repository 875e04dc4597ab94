//! Post text and dependency parses to fixed-width sparse feature vectors.

mod conllu;
mod lexicon;
mod ngram;
mod stem;
mod tokenize;
mod vectorize;
mod vocab;

pub use conllu::{parse_conllu, ConlluError, DepUnit, ROOT};
pub use lexicon::{load_lexicon, Lexicon};
pub use ngram::{dep_ngrams, ngrams, word_ngrams, NgramCounts, NgramRange};
pub use stem::stem;
pub use tokenize::{tokenize, URL_TOKEN};
pub use vectorize::{
    l1_normalize, Channel, ChannelSet, FeatureConfig, FeatureSpace, PostNgrams, UnknownChannels,
    DEFAULT_VOCAB_SIZE,
};
pub use vocab::{build_vocabulary, Vocabulary};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextFeatError {
    #[error("invalid n-gram range {min}..={max}")]
    InvalidRange { min: usize, max: usize },
}
