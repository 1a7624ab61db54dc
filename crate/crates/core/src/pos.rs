//! Part-of-speech restriction of compound parts.
//!
//! Only words tagged mostly with content-word tags may serve as parts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;
use std::path::Path;

use crate::corpus::{canonical, KnownWordIndex};
use crate::error::{Error, Result};
use crate::io;

/// STTS tags of nouns, adjectives, adverbs, full, auxiliary and modal verbs,
/// and the negation particle.
pub const DEFAULT_WHITELIST: [&str; 18] = [
    "ADJA", "ADJD", "ADV", "NN", "NE", "PTKNEG", "VVFIN", "VVIMP", "VVINF", "VVIZU", "VVPP",
    "VAFIN", "VAIMP", "VAINF", "VAPP", "VMFIN", "VMINF", "VMPP",
];

/// Tag counts per word, aggregated from tagger output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PosTable {
    entries: BTreeMap<String, BTreeMap<String, u64>>,
}

impl PosTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, word: &str, tag: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self
            .entries
            .entry(canonical(word))
            .or_default()
            .entry(tag.to_string())
            .or_insert(0) += n;
    }

    pub fn tags(&self, word: &str) -> impl Iterator<Item = (&str, u64)> {
        self.entries
            .get(word)
            .into_iter()
            .flat_map(|m| m.iter().map(|(t, &n)| (t.as_str(), n)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads `word<TAB>tag<TAB>count` lines or `token<TAB>tag` lines (one per
    /// token); both may be mixed.
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut table = PosTable::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let (word, tag, n) = match fields.as_slice() {
                [word, tag] => (*word, *tag, 1),
                [word, tag, n] => (*word, *tag, io::parse_count(origin, line_no, n)?),
                _ => {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("expected 2 or 3 tab-separated columns, found {}", fields.len()),
                    ))
                }
            };
            if word.is_empty() || tag.is_empty() {
                return Err(Error::parse(origin, line_no, "empty word or tag"));
            }
            if n == 0 {
                return Err(Error::parse(origin, line_no, "count must be positive"));
            }
            table.add(word, tag, n);
            Ok(())
        })?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string())
    }
}

impl<'a> FromIterator<(&'a str, &'a str, u64)> for PosTable {
    fn from_iter<T: IntoIterator<Item = (&'a str, &'a str, u64)>>(iter: T) -> Self {
        let mut table = PosTable::new();
        for (w, t, n) in iter {
            table.add(w, t, n);
        }
        table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosWhitelist {
    tags: BTreeSet<String>,
}

impl Default for PosWhitelist {
    fn default() -> Self {
        PosWhitelist {
            tags: DEFAULT_WHITELIST.iter().map(|t| t.to_string()).collect(),
        }
    }
}

impl PosWhitelist {
    pub fn new<I, S>(tags: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tags: BTreeSet<String> = tags
            .into_iter()
            .map(Into::into)
            .filter(|t: &String| !t.is_empty())
            .collect();
        if tags.is_empty() {
            return Err(Error::Config("POS whitelist is empty".into()));
        }
        Ok(PosWhitelist { tags })
    }

    /// Tags separated by whitespace or commas; `#` starts a comment.
    pub fn read<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut tags = Vec::new();
        io::for_each_line(reader, origin, |_, line| {
            let line = line.split('#').next().unwrap_or("");
            tags.extend(
                line.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(String::from),
            );
            Ok(())
        })?;
        Self::new(tags)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read(io::open(path)?, &path.display().to_string())
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.tags.iter().map(String::as_str)
    }
}

/// Words whose whitelisted tag occurrences strictly outnumber the rest.
pub fn content_words(table: &PosTable, whitelist: &PosWhitelist) -> BTreeSet<String> {
    table
        .entries
        .iter()
        .filter(|(_, tags)| {
            let (content, other) = tags.iter().fold((0u64, 0u64), |(c, o), (t, &n)| {
                if whitelist.contains(t) {
                    (c + n, o)
                } else {
                    (c, o + n)
                }
            });
            content > other
        })
        .map(|(w, _)| w.clone())
        .collect()
}

/// The index limited to `allowed` words.
pub fn restrict_index(index: &KnownWordIndex, allowed: &BTreeSet<String>) -> KnownWordIndex {
    let mut restricted = index.clone();
    restricted.retain(|w| allowed.contains(w));
    restricted
}
