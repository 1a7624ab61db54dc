//! The five splitting methods behind one interface.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{KnownWordIndex, WordCountTable};
use crate::error::{Error, Result};
use crate::lexicon::{ParallelCorpus, TrainConfig, TranslationLexicon};
use crate::parallel::{
    apply_knowledge, bootstrap_second_lexicon, learn_knowledge, ParallelConfig, SplittingKnowledge,
};
use crate::pos::{content_words, restrict_index, PosTable, PosWhitelist};
use crate::splitter::{split_eager, split_frequency, split_raw, SplitOption};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Raw,
    Eager,
    Frequency,
    Parallel,
    ParallelPos,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Raw,
        Method::Eager,
        Method::Frequency,
        Method::Parallel,
        Method::ParallelPos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Raw => "raw",
            Method::Eager => "eager",
            Method::Frequency => "frequency",
            Method::Parallel => "parallel",
            Method::ParallelPos => "parallel-pos",
        }
    }

    pub fn uses_knowledge(self) -> bool {
        matches!(self, Method::Parallel | Method::ParallelPos)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}")))
    }
}

/// POS table plus whitelist.
#[derive(Clone, Debug)]
pub struct PosFilter {
    pub table: PosTable,
    pub whitelist: PosWhitelist,
}

impl PosFilter {
    pub fn restrict(&self, index: &KnownWordIndex) -> KnownWordIndex {
        restrict_index(index, &content_words(&self.table, &self.whitelist))
    }
}

/// Learns splitting knowledge over a parallel corpus.
///
/// Without a `lexicon` the bootstrap lexicon (plain plus pre-split training)
/// is trained first. With `pos`, only content words may be parts throughout.
pub fn learn_from_corpus(
    corpus: &ParallelCorpus,
    counts: &WordCountTable,
    index: &KnownWordIndex,
    lexicon: Option<&TranslationLexicon>,
    pos: Option<&PosFilter>,
    config: &ParallelConfig,
    train: &TrainConfig,
) -> Result<SplittingKnowledge> {
    config.validate()?;
    let index = match pos {
        Some(filter) => filter.restrict(index),
        None => index.clone(),
    };
    let trained;
    let lexicon = match lexicon {
        Some(l) => l,
        None => {
            trained = bootstrap_second_lexicon(corpus, &index, counts, &config.split, train)?;
            &trained
        }
    };
    Ok(learn_knowledge(corpus, &index, counts, lexicon, config))
}

/// A configured splitting method, ready to split words one at a time.
#[derive(Clone, Debug)]
pub struct MethodSplitter {
    method: Method,
    index: KnownWordIndex,
    counts: WordCountTable,
    config: crate::splitter::SplitConfig,
    knowledge: SplittingKnowledge,
}

impl MethodSplitter {
    /// `knowledge` is required by the parallel methods, `pos` by
    /// `parallel-pos`; both are ignored otherwise.
    pub fn new(
        method: Method,
        index: KnownWordIndex,
        counts: WordCountTable,
        config: crate::splitter::SplitConfig,
        knowledge: Option<SplittingKnowledge>,
        pos: Option<&PosFilter>,
    ) -> Result<Self> {
        config.validate()?;
        let knowledge = match (method.uses_knowledge(), knowledge) {
            (true, Some(k)) => k,
            (true, None) => {
                return Err(Error::Config(format!(
                    "method {method} needs splitting knowledge"
                )))
            }
            (false, _) => SplittingKnowledge::new(),
        };
        let (index, knowledge) = if method == Method::ParallelPos {
            let filter = pos.ok_or_else(|| {
                Error::Config("method parallel-pos needs a POS table".into())
            })?;
            let index = filter.restrict(&index);
            let knowledge = knowledge.restrict(&index);
            (index, knowledge)
        } else {
            (index, knowledge)
        };
        Ok(MethodSplitter {
            method,
            index,
            counts,
            config,
            knowledge,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn index(&self) -> &KnownWordIndex {
        &self.index
    }

    pub fn split(&self, word: &str) -> SplitOption {
        match self.method {
            Method::Raw => split_raw(word),
            Method::Eager => split_eager(word, &self.index, &self.counts, &self.config),
            Method::Frequency => split_frequency(word, &self.index, &self.counts, &self.config),
            Method::Parallel | Method::ParallelPos => {
                apply_knowledge(word, &self.knowledge, &self.index, &self.counts, &self.config)
            }
        }
    }
}
