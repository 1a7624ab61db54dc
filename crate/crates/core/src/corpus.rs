//! Monolingual corpus statistics and the known-word index.
//!
//! Tokens are split on whitespace, stripped of leading and trailing
//! punctuation and lowercased. Every table in the crate is keyed by this
//! canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io;

/// Number of leading characters used as the index bucket key.
pub const PREFIX_LEN: usize = 3;

pub const DEFAULT_MIN_LENGTH: usize = 3;

/// Turns raw text into canonical tokens.
#[derive(Clone, Debug)]
pub struct Tokenizer {
    punctuation: Vec<char>,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Tokenizer {
            punctuation: (0u8..128)
                .map(char::from)
                .filter(char::is_ascii_punctuation)
                .collect(),
        }
    }
}

impl Tokenizer {
    pub fn with_punctuation(punctuation: impl IntoIterator<Item = char>) -> Self {
        Tokenizer {
            punctuation: punctuation.into_iter().collect(),
        }
    }

    /// Canonical form of a single token, or `None` if nothing is left after
    /// stripping punctuation.
    pub fn canonicalize(&self, token: &str) -> Option<String> {
        let stripped = token.trim_matches(|c: char| self.punctuation.contains(&c));
        if stripped.is_empty() {
            None
        } else {
            Some(stripped.to_lowercase())
        }
    }

    pub fn tokens<'a>(&'a self, line: &'a str) -> impl Iterator<Item = String> + 'a {
        line.split_whitespace().filter_map(|t| self.canonicalize(t))
    }
}

/// Lowercases a word the way the tokenizer does, without touching punctuation.
pub fn canonical(word: &str) -> String {
    word.trim().to_lowercase()
}

/// Word frequencies of a monolingual corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordCountTable {
    counts: BTreeMap<String, u64>,
}

impl WordCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Counts canonical tokens over `lines`.
    pub fn count_words<I, S>(lines: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::count_words_with(lines, &Tokenizer::default())
    }

    pub fn count_words_with<I, S>(lines: I, tokenizer: &Tokenizer) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = WordCountTable::new();
        for line in lines {
            for token in tokenizer.tokens(line.as_ref()) {
                table.add(&token, 1);
            }
        }
        table
    }

    /// Adds `n` occurrences of `word` (which must already be canonical).
    /// Adding zero is a no-op so that stored counts stay positive.
    pub fn add(&mut self, word: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(word.to_string()).or_insert(0) += n;
    }

    /// Sums another table into this one.
    pub fn merge(&mut self, other: &WordCountTable) {
        for (word, &n) in &other.counts {
            self.add(word, n);
        }
    }

    /// Occurrences of `word`; 0 if never seen.
    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Entries in word order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(w, &n)| (w.as_str(), n))
    }

    pub fn write_tsv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        for (word, n) in self.iter() {
            writeln!(out, "{word}\t{n}")?;
        }
        Ok(())
    }

    /// Reads the `word<TAB>count` format. `origin` names the source in errors.
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut table = WordCountTable::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("expected 2 tab-separated columns, found {}", fields.len()),
                ));
            }
            let word = fields[0];
            if word.is_empty() {
                return Err(Error::parse(origin, line_no, "empty word"));
            }
            let n = io::parse_count(origin, line_no, fields[1])?;
            if n == 0 {
                return Err(Error::parse(origin, line_no, "count must be positive"));
            }
            table.add(word, n);
            Ok(())
        })?;
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_file(path, |out| self.write_tsv(out))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string())
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for WordCountTable {
    fn from_iter<T: IntoIterator<Item = (S, u64)>>(iter: T) -> Self {
        let mut table = WordCountTable::new();
        for (word, n) in iter {
            table.add(&word.into(), n);
        }
        table
    }
}

/// Bucket key of a word: its first three characters, or the whole word when
/// it is shorter.
pub fn bucket_key(word: &str) -> &str {
    match word.char_indices().nth(PREFIX_LEN) {
        Some((end, _)) => &word[..end],
        None => word,
    }
}

/// Vocabulary of candidate compound parts, bucketed by prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnownWordIndex {
    buckets: BTreeMap<String, BTreeSet<String>>,
    min_length: usize,
}

impl KnownWordIndex {
    pub fn new(min_length: usize) -> Self {
        KnownWordIndex {
            buckets: BTreeMap::new(),
            min_length: min_length.max(1),
        }
    }

    /// Index of every counted word with at least `min_length` characters.
    pub fn build(counts: &WordCountTable, min_length: usize) -> Self {
        Self::from_words(counts.iter().map(|(w, _)| w), min_length)
    }

    pub fn from_words<I, S>(words: I, min_length: usize) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index = KnownWordIndex::new(min_length);
        for word in words {
            index.insert(word.as_ref());
        }
        index
    }

    /// Inserts `word` if it is long enough. Returns whether it is now present.
    pub fn insert(&mut self, word: &str) -> bool {
        if word.chars().count() < self.min_length {
            return false;
        }
        self.buckets
            .entry(bucket_key(word).to_string())
            .or_default()
            .insert(word.to_string());
        true
    }

    pub fn min_length(&self) -> usize {
        self.min_length
    }

    pub fn contains(&self, word: &str) -> bool {
        self.buckets
            .get(bucket_key(word))
            .is_some_and(|b| b.contains(word))
    }

    pub fn bucket(&self, prefix: &str) -> impl Iterator<Item = &str> {
        self.buckets
            .get(prefix)
            .into_iter()
            .flat_map(|b| b.iter().map(String::as_str))
    }

    /// Known words that `text` starts with, shortest first.
    pub fn prefixes_of<'a>(&'a self, text: &'a str) -> Vec<&'a str> {
        let mut found = Vec::new();
        // Words shorter than the bucket key live in a bucket of their own.
        for (k, (end, c)) in text.char_indices().take(PREFIX_LEN).enumerate() {
            let prefix = &text[..end + c.len_utf8()];
            if k + 1 < PREFIX_LEN {
                if self.contains(prefix) {
                    found.push(prefix);
                }
            } else {
                found.extend(self.bucket(prefix).filter(|w| text.starts_with(w)));
            }
        }
        found.sort_by_key(|w| w.len());
        found
    }

    pub fn len(&self) -> usize {
        self.buckets.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.values().all(BTreeSet::is_empty)
    }

    /// All words, ordered by bucket then word.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.buckets.values().flatten().map(String::as_str)
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.buckets.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Keeps only the words for which `keep` returns true.
    pub fn retain<F: FnMut(&str) -> bool>(&mut self, mut keep: F) {
        for bucket in self.buckets.values_mut() {
            bucket.retain(|w| keep(w));
        }
        self.buckets.retain(|_, b| !b.is_empty());
    }

    /// Writes `prefix<TAB>word` lines.
    pub fn write_tsv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        for (prefix, words) in &self.buckets {
            for word in words {
                writeln!(out, "{prefix}\t{word}")?;
            }
        }
        Ok(())
    }

    /// Reads the `prefix<TAB>word` format; a single-column line is taken as a
    /// bare word.
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str, min_length: usize) -> Result<Self> {
        let mut index = KnownWordIndex::new(min_length);
        io::for_each_line(reader, origin, |line_no, line| {
            let fields: Vec<&str> = line.split('\t').collect();
            let word = match fields.as_slice() {
                [word] => *word,
                [prefix, word] => {
                    if bucket_key(word) != *prefix {
                        return Err(Error::parse(
                            origin,
                            line_no,
                            format!("word {word:?} does not belong in bucket {prefix:?}"),
                        ));
                    }
                    *word
                }
                _ => {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        format!("expected 1 or 2 columns, found {}", fields.len()),
                    ))
                }
            };
            index.insert(&canonical(word));
            Ok(())
        })?;
        Ok(index)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_file(path, |out| self.write_tsv(out))
    }

    pub fn load(path: &Path, min_length: usize) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string(), min_length)
    }
}
