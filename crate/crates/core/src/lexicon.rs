//! Translation lexicons p(english | german): loading, EM training and merging.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;

use crate::corpus::Tokenizer;
use crate::error::{Error, Result};
use crate::io;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentencePair {
    pub german: Vec<String>,
    pub english: Vec<String>,
}

/// Sentence-aligned German/English text, tokens in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParallelCorpus {
    pairs: Vec<SentencePair>,
}

impl ParallelCorpus {
    /// Builds a corpus, rejecting pairs with an empty side.
    pub fn new(pairs: Vec<SentencePair>) -> Result<Self> {
        if let Some(i) = pairs
            .iter()
            .position(|p| p.german.is_empty() || p.english.is_empty())
        {
            return Err(Error::Config(format!("sentence pair {} has an empty side", i + 1)));
        }
        Ok(ParallelCorpus { pairs })
    }

    /// Tokenizes aligned sentence strings. Pairs where either side has no
    /// tokens are skipped.
    pub fn from_sentences<I, G, E>(sentences: I, tokenizer: &Tokenizer) -> Self
    where
        I: IntoIterator<Item = (G, E)>,
        G: AsRef<str>,
        E: AsRef<str>,
    {
        let pairs = sentences
            .into_iter()
            .map(|(g, e)| SentencePair {
                german: tokenizer.tokens(g.as_ref()).collect(),
                english: tokenizer.tokens(e.as_ref()).collect(),
            })
            .filter(|p| !p.german.is_empty() && !p.english.is_empty())
            .collect();
        ParallelCorpus { pairs }
    }

    /// Reads two line-aligned files.
    pub fn load_aligned(german: &Path, english: &Path, tokenizer: &Tokenizer) -> Result<Self> {
        let read = |path: &Path| -> Result<Vec<String>> {
            io::open(path)?
                .lines()
                .collect::<std::io::Result<Vec<_>>>()
                .map_err(|e| Error::io(path, e))
        };
        let g = read(german)?;
        let e = read(english)?;
        if g.len() != e.len() {
            return Err(Error::Parse {
                origin: english.display().to_string(),
                line: g.len().min(e.len()) + 1,
                message: format!(
                    "line count {} does not match {} lines in {}",
                    e.len(),
                    g.len(),
                    german.display()
                ),
            });
        }
        Ok(Self::from_sentences(g.into_iter().zip(e), tokenizer))
    }

    /// Reads a `german<TAB>english` file.
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str, tokenizer: &Tokenizer) -> Result<Self> {
        let mut sentences = Vec::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let (g, e) = line.split_once('\t').ok_or_else(|| {
                Error::parse(origin, line_no, "expected german<TAB>english")
            })?;
            if e.contains('\t') {
                return Err(Error::parse(origin, line_no, "more than 2 columns"));
            }
            sentences.push((g.to_string(), e.to_string()));
            Ok(())
        })?;
        Ok(Self::from_sentences(sentences, tokenizer))
    }

    pub fn load_tsv(path: &Path, tokenizer: &Tokenizer) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string(), tokenizer)
    }

    pub fn pairs(&self) -> &[SentencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Applies `f` to every German token, keeping the English side as is.
    pub fn map_german<F>(&self, mut f: F) -> ParallelCorpus
    where
        F: FnMut(&str) -> Vec<String>,
    {
        let pairs = self
            .pairs
            .iter()
            .map(|p| SentencePair {
                german: p.german.iter().flat_map(|t| f(t)).collect(),
                english: p.english.clone(),
            })
            .collect();
        ParallelCorpus { pairs }
    }
}

/// Conditional probabilities p(english | german).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TranslationLexicon {
    table: BTreeMap<String, BTreeMap<String, f64>>,
}

impl TranslationLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets p(english | german). Probabilities outside (0, 1] are rejected.
    pub fn insert(&mut self, german: &str, english: &str, p: f64) -> Result<()> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Config(format!(
                "probability {p} for {german} -> {english} is outside (0, 1]"
            )));
        }
        self.table
            .entry(german.to_string())
            .or_default()
            .insert(english.to_string(), p);
        Ok(())
    }

    /// p(english | german), 0 when absent.
    pub fn prob(&self, german: &str, english: &str) -> f64 {
        self.table
            .get(german)
            .and_then(|m| m.get(english))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn translations(&self, german: &str) -> impl Iterator<Item = (&str, f64)> {
        self.table
            .get(german)
            .into_iter()
            .flat_map(|m| m.iter().map(|(e, &p)| (e.as_str(), p)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.table.iter().flat_map(|(g, m)| {
            m.iter().map(move |(e, &p)| (g.as_str(), e.as_str(), p))
        })
    }

    pub fn german_words(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }

    /// Number of (german, english) entries.
    pub fn len(&self) -> usize {
        self.table.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Union of two lexicons. Where both define an entry the larger
    /// probability wins.
    pub fn merge(&self, other: &TranslationLexicon) -> TranslationLexicon {
        let mut merged = self.clone();
        for (g, e, p) in other.iter() {
            let slot = merged
                .table
                .entry(g.to_string())
                .or_default()
                .entry(e.to_string())
                .or_insert(p);
            *slot = slot.max(p);
        }
        merged
    }

    /// `german<TAB>english<TAB>probability`, by german word then descending
    /// probability.
    pub fn write_tsv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        for (g, entries) in &self.table {
            let mut sorted: Vec<(&String, &f64)> = entries.iter().collect();
            sorted.sort_by(|a, b| b.1.total_cmp(a.1).then_with(|| a.0.cmp(b.0)));
            for (e, p) in sorted {
                writeln!(out, "{g}\t{e}\t{p}")?;
            }
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut lexicon = TranslationLexicon::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let fields: Vec<&str> = line.split('\t').collect();
            let [g, e, p] = fields.as_slice() else {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("expected 3 tab-separated columns, found {}", fields.len()),
                ));
            };
            if g.is_empty() || e.is_empty() {
                return Err(Error::parse(origin, line_no, "empty word"));
            }
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| Error::parse(origin, line_no, format!("invalid probability {p:?}")))?;
            lexicon
                .insert(&g.to_lowercase(), &e.to_lowercase(), p)
                .map_err(|_| {
                    Error::parse(origin, line_no, format!("probability {p} outside (0, 1]"))
                })
        })?;
        Ok(lexicon)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_file(path, |out| self.write_tsv(out))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrainConfig {
    pub iterations: usize,
    /// Entries below this probability are dropped after the last iteration.
    pub prune_floor: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            iterations: 5,
            prune_floor: 1e-4,
        }
    }
}

/// Outcome of EM training.
#[derive(Clone, Debug)]
pub struct Training {
    pub lexicon: TranslationLexicon,
    /// Corpus log-likelihood under the initial model and after each
    /// iteration; `iterations + 1` values.
    pub log_likelihood: Vec<f64>,
}

/// Interned vocabularies and a dense-per-german sparse table used while
/// training.
struct Model {
    german: Vec<String>,
    english: Vec<String>,
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
    /// t[g] maps english id -> p(e | g)
    t: Vec<BTreeMap<usize, f64>>,
}

impl Model {
    fn new(corpus: &ParallelCorpus) -> Self {
        fn intern(vocab: &mut Vec<String>, ids: &mut HashMap<String, usize>, w: &str) -> usize {
            if let Some(&id) = ids.get(w) {
                return id;
            }
            vocab.push(w.to_string());
            ids.insert(w.to_string(), vocab.len() - 1);
            vocab.len() - 1
        }
        let (mut german, mut english) = (Vec::new(), Vec::new());
        let (mut gid, mut eid) = (HashMap::new(), HashMap::new());
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = corpus
            .pairs()
            .iter()
            .map(|p| {
                (
                    p.german.iter().map(|w| intern(&mut german, &mut gid, w)).collect(),
                    p.english.iter().map(|w| intern(&mut english, &mut eid, w)).collect(),
                )
            })
            .collect();

        // uniform over co-occurring English words
        let mut t: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); german.len()];
        for (g_ids, e_ids) in &pairs {
            for &g in g_ids {
                for &e in e_ids {
                    t[g].insert(e, 1.0);
                }
            }
        }
        for row in &mut t {
            let uniform = 1.0 / row.len() as f64;
            row.values_mut().for_each(|p| *p = uniform);
        }
        Model {
            german,
            english,
            pairs,
            t,
        }
    }

    fn log_likelihood(&self) -> f64 {
        self.pairs
            .iter()
            .map(|(g_ids, e_ids)| {
                let l = g_ids.len() as f64;
                e_ids
                    .iter()
                    .map(|e| {
                        let mass: f64 = g_ids.iter().map(|&g| self.t[g][e]).sum();
                        (mass / l).ln()
                    })
                    .sum::<f64>()
            })
            .sum()
    }

    fn step(&mut self) {
        let mut expected: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); self.german.len()];
        for (g_ids, e_ids) in &self.pairs {
            for e in e_ids {
                let mass: f64 = g_ids.iter().map(|&g| self.t[g][e]).sum();
                for &g in g_ids {
                    *expected[g].entry(*e).or_insert(0.0) += self.t[g][e] / mass;
                }
            }
        }
        for (row, counts) in self.t.iter_mut().zip(expected) {
            let total: f64 = counts.values().sum();
            for (e, p) in row.iter_mut() {
                *p = counts.get(e).copied().unwrap_or(0.0) / total;
            }
        }
    }

    fn into_lexicon(self, prune_floor: f64) -> TranslationLexicon {
        let mut lexicon = TranslationLexicon::new();
        for (g, row) in self.t.into_iter().enumerate() {
            for (e, p) in row {
                if p >= prune_floor && p > 0.0 {
                    lexicon
                        .insert(&self.german[g], &self.english[e], p.min(1.0))
                        .expect("probability in range");
                }
            }
        }
        lexicon
    }
}

/// Trains p(e | g) by expectation maximization over co-occurrences within
/// sentence pairs. Each English token's mass is shared among the German
/// tokens of its sentence in proportion to the current probabilities.
pub fn train_lexicon_with_history(corpus: &ParallelCorpus, config: &TrainConfig) -> Result<Training> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if config.iterations == 0 {
        return Err(Error::Config("at least one EM iteration is required".into()));
    }
    let mut model = Model::new(corpus);
    let mut log_likelihood = vec![model.log_likelihood()];
    for _ in 0..config.iterations {
        model.step();
        log_likelihood.push(model.log_likelihood());
    }
    Ok(Training {
        lexicon: model.into_lexicon(config.prune_floor),
        log_likelihood,
    })
}

pub fn train_lexicon(corpus: &ParallelCorpus, config: &TrainConfig) -> Result<TranslationLexicon> {
    train_lexicon_with_history(corpus, config).map(|t| t.lexicon)
}

pub fn merge_lexicons(a: &TranslationLexicon, b: &TranslationLexicon) -> TranslationLexicon {
    a.merge(b)
}
