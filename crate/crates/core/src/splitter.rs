//! Enumeration of splitting options and the monolingual selection strategies.
//!
//! A word is covered left to right by known words, optionally followed at
//! each joint by a filler such as `s` or `es`. Every such covering is a
//! [`SplitOption`]; the unsplit word is always one of them.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use num_bigint::BigUint;

use crate::corpus::{canonical, KnownWordIndex, WordCountTable};
use crate::error::{Error, Result};

/// One part of a split: a known word plus whatever sits at the joint after it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitPart {
    pub word: String,
    /// Linking letters inserted after this part. Always empty on the last part.
    pub filler: String,
    /// Letters of `word` that were dropped at the joint (letter-dropping hook).
    pub dropped: String,
}

impl SplitPart {
    pub fn new(word: impl Into<String>) -> Self {
        SplitPart {
            word: word.into(),
            filler: String::new(),
            dropped: String::new(),
        }
    }

    pub fn with_filler(word: impl Into<String>, filler: impl Into<String>) -> Self {
        SplitPart {
            filler: filler.into(),
            ..SplitPart::new(word)
        }
    }

    /// The stretch of the compound this part accounts for.
    pub fn surface(&self) -> String {
        let stem = self
            .word
            .strip_suffix(self.dropped.as_str())
            .unwrap_or(&self.word);
        format!("{stem}{}", self.filler)
    }

    fn render_into(&self, out: &mut String) {
        out.push_str(&self.word);
        if self.dropped.is_empty() && self.filler.is_empty() {
            return;
        }
        out.push('(');
        if !self.dropped.is_empty() {
            out.push('-');
            out.push_str(&self.dropped);
        }
        if !self.filler.is_empty() {
            out.push('+');
            out.push_str(&self.filler);
        }
        out.push(')');
    }

    fn parse(token: &str) -> Option<SplitPart> {
        let Some(open) = token.find('(') else {
            return (!token.is_empty()).then(|| SplitPart::new(token));
        };
        let word = &token[..open];
        let inner = token[open + 1..].strip_suffix(')')?;
        if word.is_empty() || inner.is_empty() {
            return None;
        }
        let (dropped, filler) = match inner.split_once('+') {
            Some((d, f)) => (d, f),
            None => (inner, ""),
        };
        let dropped = if dropped.is_empty() {
            ""
        } else {
            dropped.strip_prefix('-')?
        };
        if inner.contains('+') && filler.is_empty() {
            return None;
        }
        Some(SplitPart {
            word: word.to_string(),
            filler: filler.to_string(),
            dropped: dropped.to_string(),
        })
    }
}

/// One decomposition of a word.
///
/// Equality, ordering and hashing look only at the canonical surface and the
/// part sequence; the out-of-vocabulary flag is informational.
#[derive(Clone, Debug)]
pub struct SplitOption {
    pub surface: String,
    pub parts: Vec<SplitPart>,
    /// Set on the unsplit option of a word that is not itself a known word.
    pub oov: bool,
}

impl PartialEq for SplitOption {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface && self.parts == other.parts
    }
}

impl Eq for SplitOption {}

impl std::hash::Hash for SplitOption {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.surface.hash(state);
        self.parts.hash(state);
    }
}

impl PartialOrd for SplitOption {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SplitOption {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.surface, &self.parts).cmp(&(&other.surface, &other.parts))
    }
}

impl SplitOption {
    /// The word kept whole.
    pub fn unsplit(word: &str) -> Self {
        let word = canonical(word);
        SplitOption {
            parts: vec![SplitPart::new(word.clone())],
            surface: word,
            oov: false,
        }
    }

    pub fn from_parts(surface: &str, parts: Vec<SplitPart>) -> Self {
        SplitOption {
            surface: canonical(surface),
            parts,
            oov: false,
        }
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_split(&self) -> bool {
        self.parts.len() > 1
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().map(|p| p.word.as_str())
    }

    /// Whether the parts (with fillers) spell out the surface exactly.
    pub fn covers_surface(&self) -> bool {
        match self.parts.split_last() {
            None => false,
            Some((last, _)) if !last.filler.is_empty() || !last.dropped.is_empty() => false,
            Some(_) => {
                let joined: String = self.parts.iter().map(SplitPart::surface).collect();
                joined == self.surface
            }
        }
    }

    /// Character offsets in the surface at which one part ends and the next
    /// begins. Fillers count toward the part before them.
    pub fn joints(&self) -> Vec<usize> {
        let mut offset = 0;
        let mut joints = Vec::with_capacity(self.parts.len().saturating_sub(1));
        for part in &self.parts[..self.parts.len().saturating_sub(1)] {
            offset += part.surface().chars().count();
            joints.push(offset);
        }
        joints
    }

    /// Space-separated parts, fillers as `word(+s)`, dropped letters as
    /// `word(-n)`. An unsplit word renders as itself.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            part.render_into(&mut out);
        }
        out
    }

    /// Parses a rendered option for `surface` and checks that it covers it.
    pub fn parse(surface: &str, rendered: &str) -> std::result::Result<Self, String> {
        let parts = rendered
            .split_whitespace()
            .map(|t| SplitPart::parse(&canonical(t)).ok_or_else(|| format!("bad part {t:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if parts.is_empty() {
            return Err("no parts".to_string());
        }
        let option = SplitOption::from_parts(surface, parts);
        if !option.covers_surface() {
            return Err(format!(
                "parts {:?} do not spell {:?}",
                rendered, option.surface
            ));
        }
        Ok(option)
    }
}

impl fmt::Display for SplitOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitConfig {
    pub fillers: Vec<String>,
    pub min_part_length: usize,
    /// Keep the unsplit word as a candidate even when splits exist.
    pub allow_whole_word: bool,
    /// Letters that may be dropped from the end of a part at a joint.
    /// Empty by default.
    pub deletions: Vec<String>,
    /// Words longer than this (in characters) are not searched and come back
    /// unsplit.
    pub max_word_length: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            fillers: vec!["s".to_string(), "es".to_string()],
            min_part_length: 3,
            allow_whole_word: true,
            deletions: Vec::new(),
            max_word_length: 100,
        }
    }
}

impl SplitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fillers.iter().any(String::is_empty) {
            return Err(Error::Config("empty filler; the plain joint is always allowed".into()));
        }
        if self.deletions.iter().any(String::is_empty) {
            return Err(Error::Config("empty letter deletion".into()));
        }
        if self.min_part_length == 0 {
            return Err(Error::Config("minimum part length must be at least 1".into()));
        }
        Ok(())
    }
}

struct Search<'a> {
    index: &'a KnownWordIndex,
    config: &'a SplitConfig,
    stack: Vec<SplitPart>,
    found: Vec<Vec<SplitPart>>,
}

impl Search<'_> {
    fn long_enough(&self, word: &str) -> bool {
        word.chars().count() >= self.config.min_part_length
    }

    fn cover(&mut self, rest: &str) {
        let index = self.index;
        for word in index.prefixes_of(rest) {
            if !self.long_enough(word) {
                continue;
            }
            if word.len() == rest.len() {
                self.stack.push(SplitPart::new(word));
                self.found.push(self.stack.clone());
                self.stack.pop();
            } else {
                self.joint(word, "", &rest[word.len()..]);
            }
        }
        if self.config.deletions.is_empty() {
            return;
        }
        let config = self.config;
        for (end, _) in rest.char_indices().skip(1) {
            for dropped in &config.deletions {
                let word = format!("{}{dropped}", &rest[..end]);
                if index.contains(&word) && self.long_enough(&word) {
                    self.joint(&word, dropped, &rest[end..]);
                }
            }
        }
    }

    fn joint(&mut self, word: &str, dropped: &str, remaining: &str) {
        let part = SplitPart {
            word: word.to_string(),
            filler: String::new(),
            dropped: dropped.to_string(),
        };
        self.stack.push(part.clone());
        self.cover(remaining);
        self.stack.pop();

        let config = self.config;
        for filler in &config.fillers {
            if remaining.len() > filler.len() && remaining.starts_with(filler.as_str()) {
                self.stack.push(SplitPart {
                    filler: filler.clone(),
                    ..part.clone()
                });
                self.cover(&remaining[filler.len()..]);
                self.stack.pop();
            }
        }
    }
}

/// Every way of covering `word` with known words and fillers, plus the
/// unsplit word.
///
/// Options come sorted by decreasing number of parts, then by part sequence.
pub fn enumerate_splits(
    word: &str,
    index: &KnownWordIndex,
    config: &SplitConfig,
) -> Vec<SplitOption> {
    let surface = canonical(word);
    let mut whole = SplitOption::unsplit(&surface);
    whole.oov = !index.contains(&surface);
    if surface.is_empty() || surface.chars().count() > config.max_word_length {
        return vec![whole];
    }

    let mut search = Search {
        index,
        config,
        stack: Vec::new(),
        found: Vec::new(),
    };
    search.cover(&surface);

    let mut options: Vec<SplitOption> = search
        .found
        .into_iter()
        .filter(|parts| parts.len() > 1)
        .map(|parts| SplitOption::from_parts(&surface, parts))
        .collect();
    if config.allow_whole_word || options.is_empty() {
        options.push(whole);
    }
    options.sort_by(|a, b| {
        (Reverse(a.num_parts()), &a.parts).cmp(&(Reverse(b.num_parts()), &b.parts))
    });
    options.dedup();
    options
}

/// Geometric mean of part counts, kept as an exact product so that options
/// with different numbers of parts compare without rounding.
#[derive(Clone, Debug)]
pub struct GeometricMean {
    product: BigUint,
    n: u32,
}

impl GeometricMean {
    pub fn of(option: &SplitOption, counts: &WordCountTable) -> Self {
        let product = option
            .words()
            .fold(BigUint::from(1u32), |acc, w| acc * counts.get(w));
        GeometricMean {
            product,
            n: option.num_parts().max(1) as u32,
        }
    }

    pub fn value(&self) -> f64 {
        if self.n == 1 {
            return biguint_to_f64(&self.product);
        }
        let bits = self.product.bits();
        if bits == 0 {
            return 0.0;
        }
        // ln of the product without overflowing f64
        let shift = bits.saturating_sub(64);
        let top = biguint_to_f64(&(&self.product >> shift));
        let ln = top.ln() + shift as f64 * std::f64::consts::LN_2;
        (ln / self.n as f64).exp()
    }
}

fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_u64_digits()
        .iter()
        .rev()
        .fold(0.0, |acc, &d| acc * 18446744073709551616.0 + d as f64)
}

impl PartialEq for GeometricMean {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GeometricMean {}

impl PartialOrd for GeometricMean {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeometricMean {
    /// a^(1/n) vs b^(1/m) compared as a^m vs b^n.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.n == other.n {
            return self.product.cmp(&other.product);
        }
        self.product
            .pow(other.n)
            .cmp(&other.product.pow(self.n))
    }
}

/// Geometric mean of the corpus counts of the option's parts. Fillers carry
/// no count; an unseen part makes the score 0.
pub fn score_frequency(option: &SplitOption, counts: &WordCountTable) -> f64 {
    GeometricMean::of(option, counts).value()
}

/// Picks the highest-scoring option from `options` (in enumeration order).
/// Exact ties go to fewer parts, then to the earlier option.
pub fn best_by_frequency<'a>(
    options: &'a [SplitOption],
    counts: &WordCountTable,
) -> Option<&'a SplitOption> {
    let mut best: Option<(&SplitOption, GeometricMean)> = None;
    for option in options {
        let score = GeometricMean::of(option, counts);
        let better = match &best {
            None => true,
            Some((incumbent, top)) => match score.cmp(top) {
                Ordering::Greater => true,
                Ordering::Equal => option.num_parts() < incumbent.num_parts(),
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((option, score));
        }
    }
    best.map(|(o, _)| o)
}

/// Frequency-based split.
pub fn split_frequency(
    word: &str,
    index: &KnownWordIndex,
    counts: &WordCountTable,
    config: &SplitConfig,
) -> SplitOption {
    let options = enumerate_splits(word, index, config);
    best_by_frequency(&options, counts)
        .cloned()
        .expect("enumeration yields at least one option")
}

/// Splits into as many parts as possible; the frequency score decides among
/// equally fine splits.
pub fn split_eager(
    word: &str,
    index: &KnownWordIndex,
    counts: &WordCountTable,
    config: &SplitConfig,
) -> SplitOption {
    let options = enumerate_splits(word, index, config);
    let most = options.iter().map(SplitOption::num_parts).max().unwrap_or(1);
    let finest: Vec<SplitOption> = options
        .into_iter()
        .filter(|o| o.num_parts() == most)
        .collect();
    best_by_frequency(&finest, counts)
        .cloned()
        .expect("enumeration yields at least one option")
}

/// Leaves the word alone.
pub fn split_raw(word: &str) -> SplitOption {
    SplitOption::unsplit(word)
}
