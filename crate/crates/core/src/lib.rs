//! Compound splitting for German and similar languages.
//!
//! Words are decomposed into known corpus words joined by optional filler
//! letters. Among the candidate decompositions one is chosen by
//!
//! * corpus frequency of the parts (geometric mean, [`split_frequency`]),
//! * the largest number of parts ([`split_eager`]),
//! * translation evidence from a sentence-aligned parallel corpus
//!   ([`parallel`]), optionally restricted to content-word parts ([`pos`]).
//!
//! [`eval`] scores predicted splits against a manually annotated gold
//! standard.

pub mod corpus;
pub mod error;
pub mod eval;
mod io;
pub mod lexicon;
pub mod parallel;
pub mod pipeline;
pub mod pos;
pub mod splitter;

pub use corpus::{KnownWordIndex, Tokenizer, WordCountTable};
pub use error::{Error, Result};
pub use eval::{classify, evaluate, Category, CategoryCounts, EvalReport, GoldStandard, MatchMode, SplitTable};
pub use lexicon::{merge_lexicons, train_lexicon, ParallelCorpus, SentencePair, TrainConfig, TranslationLexicon};
pub use parallel::{
    apply_knowledge, bootstrap_second_lexicon, choose_split_in_context, learn_knowledge, match_option,
    EvidenceMatch, ParallelConfig, SplittingKnowledge,
};
pub use pos::{content_words, restrict_index, PosTable, PosWhitelist};
pub use splitter::{
    enumerate_splits, score_frequency, split_eager, split_frequency, split_raw, SplitConfig, SplitOption,
    SplitPart,
};
pub use pipeline::{learn_from_corpus, Method, MethodSplitter, PosFilter};
