//! Splitting guided by the English side of a parallel corpus.
//!
//! A split is supported when its parts find translations in the English
//! sentence. Decisions made over a whole corpus are tallied per word type
//! into [`SplittingKnowledge`], which is then applied to new text with the
//! frequency method as back-off.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::{canonical, KnownWordIndex, WordCountTable};
use crate::error::{Error, Result};
use crate::io;
use crate::lexicon::{merge_lexicons, train_lexicon, ParallelCorpus, TrainConfig, TranslationLexicon};
use crate::splitter::{
    enumerate_splits, split_frequency, GeometricMean, SplitConfig, SplitOption,
};

pub const DEFAULT_THRESHOLD: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct ParallelConfig {
    pub split: SplitConfig,
    /// Minimum p(english | part) for an English token to count as evidence.
    pub threshold: f64,
}

impl Default for ParallelConfig {
    fn default() -> Self {
        ParallelConfig {
            split: SplitConfig::default(),
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl ParallelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Config(format!(
                "threshold {} must lie in (0, 1)",
                self.threshold
            )));
        }
        self.split.validate()
    }
}

/// How much of the English sentence a split option accounts for.
#[derive(Clone, Debug, PartialEq)]
pub struct EvidenceMatch {
    pub option: SplitOption,
    pub covered_parts: usize,
    /// English token positions used as evidence, in part order.
    pub consumed: Vec<usize>,
}

impl EvidenceMatch {
    pub fn fully_covered(&self) -> bool {
        self.covered_parts == self.option.num_parts()
    }
}

/// Matches parts against English tokens, each English token backing at most
/// one part.
///
/// Parts are visited left to right and take the first free token above the
/// threshold. When every candidate token is taken, earlier parts are moved
/// to other tokens if that frees one (augmenting paths), so the number of
/// covered parts is the largest possible under the one-use rule.
pub fn match_option(
    option: &SplitOption,
    english: &[String],
    lexicon: &TranslationLexicon,
    threshold: f64,
) -> EvidenceMatch {
    let candidates: Vec<Vec<usize>> = option
        .parts
        .iter()
        .map(|part| {
            (0..english.len())
                .filter(|&j| lexicon.prob(&part.word, &english[j]) >= threshold)
                .collect()
        })
        .collect();

    fn augment(
        part: usize,
        candidates: &[Vec<usize>],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &j in &candidates[part] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if owner[j].is_none_or(|other| augment(other, candidates, owner, visited)) {
                owner[j] = Some(part);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; english.len()];
    for part in 0..candidates.len() {
        let mut visited = vec![false; english.len()];
        augment(part, &candidates, &mut owner, &mut visited);
    }

    let mut assigned: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(j, p)| p.map(|p| (p, j)))
        .collect();
    assigned.sort_unstable();
    let consumed: Vec<usize> = assigned.into_iter().map(|(_, j)| j).collect();
    EvidenceMatch {
        option: option.clone(),
        covered_parts: consumed.len(),
        consumed,
    }
}

/// Chooses among pre-enumerated options using the English sentence.
///
/// Split options compete on covered parts, then on number of parts, then on
/// frequency score. Without any evidence the word stays whole.
pub fn choose_among(
    options: &[SplitOption],
    english: &[String],
    counts: &WordCountTable,
    lexicon: &TranslationLexicon,
    threshold: f64,
) -> SplitOption {
    if let [only] = options {
        return only.clone();
    }
    let mut best: Option<(EvidenceMatch, GeometricMean)> = None;
    for option in options.iter().filter(|o| o.is_split()) {
        let m = match_option(option, english, lexicon, threshold);
        if m.covered_parts == 0 {
            continue;
        }
        let score = GeometricMean::of(option, counts);
        let better = match &best {
            None => true,
            Some((top, top_score)) => m
                .covered_parts
                .cmp(&top.covered_parts)
                .then(option.num_parts().cmp(&top.option.num_parts()))
                .then_with(|| score.cmp(top_score))
                == Ordering::Greater,
        };
        if better {
            best = Some((m, score));
        }
    }
    match best {
        Some((m, _)) => m.option,
        None => options
            .iter()
            .find(|o| !o.is_split())
            .cloned()
            .unwrap_or_else(|| SplitOption::unsplit(&options[0].surface)),
    }
}

/// Splits `word` as it occurs in a sentence whose translation is `english`.
pub fn choose_split_in_context(
    word: &str,
    english: &[String],
    index: &KnownWordIndex,
    counts: &WordCountTable,
    lexicon: &TranslationLexicon,
    config: &ParallelConfig,
) -> SplitOption {
    let options = enumerate_splits(word, index, &config.split);
    choose_among(&options, english, counts, lexicon, config.threshold)
}

/// Per word type, how often each option was chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplittingKnowledge {
    table: BTreeMap<String, BTreeMap<SplitOption, u64>>,
}

impl SplittingKnowledge {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, option: SplitOption, n: u64) {
        if n == 0 {
            return;
        }
        *self
            .table
            .entry(option.surface.clone())
            .or_default()
            .entry(option)
            .or_insert(0) += n;
    }

    pub fn absorb(&mut self, other: SplittingKnowledge) {
        for (_, options) in other.table {
            for (option, n) in options {
                self.record(option, n);
            }
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.table.contains_key(word)
    }

    /// Tallies for `word`, in option order.
    pub fn options(&self, word: &str) -> impl Iterator<Item = (&SplitOption, u64)> {
        self.table
            .get(word)
            .into_iter()
            .flat_map(|m| m.iter().map(|(o, &n)| (o, n)))
    }

    pub fn count(&self, option: &SplitOption) -> u64 {
        self.table
            .get(&option.surface)
            .and_then(|m| m.get(option))
            .copied()
            .unwrap_or(0)
    }

    /// Number of distinct words.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(String::as_str)
    }

    /// The most often chosen option; ties go to more parts, then the higher
    /// frequency score, then option order.
    pub fn majority(&self, word: &str, counts: &WordCountTable) -> Option<SplitOption> {
        let mut best: Option<(&SplitOption, u64, GeometricMean)> = None;
        for (option, n) in self.options(word) {
            let score = GeometricMean::of(option, counts);
            let better = match &best {
                None => true,
                Some((top, top_n, top_score)) => n
                    .cmp(top_n)
                    .then(option.num_parts().cmp(&top.num_parts()))
                    .then_with(|| score.cmp(top_score))
                    == Ordering::Greater,
            };
            if better {
                best = Some((option, n, score));
            }
        }
        best.map(|(o, _, _)| o.clone())
    }

    /// Drops split options that use a part missing from `index`. Words left
    /// without options disappear.
    pub fn restrict(&self, index: &KnownWordIndex) -> SplittingKnowledge {
        let mut out = SplittingKnowledge::new();
        for options in self.table.values() {
            for (option, &n) in options {
                if !option.is_split() || option.words().all(|w| index.contains(w)) {
                    out.record(option.clone(), n);
                }
            }
        }
        out
    }

    /// `word<TAB>rendered option<TAB>count`, sorted by word then option.
    pub fn write_tsv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        for (word, options) in &self.table {
            for (option, n) in options {
                writeln!(out, "{word}\t{}\t{n}", option.render())?;
            }
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut knowledge = SplittingKnowledge::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let fields: Vec<&str> = line.split('\t').collect();
            let [word, rendered, n] = fields.as_slice() else {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("expected 3 tab-separated columns, found {}", fields.len()),
                ));
            };
            let option = SplitOption::parse(word, rendered)
                .map_err(|m| Error::parse(origin, line_no, m))?;
            let n = io::parse_count(origin, line_no, n)?;
            if n == 0 {
                return Err(Error::parse(origin, line_no, "count must be positive"));
            }
            knowledge.record(option, n);
            Ok(())
        })?;
        Ok(knowledge)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_file(path, |out| self.write_tsv(out))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string())
    }
}

/// Splits every German token of the corpus in the context of its sentence
/// pair and tallies the choices per word type.
pub fn learn_knowledge(
    corpus: &ParallelCorpus,
    index: &KnownWordIndex,
    counts: &WordCountTable,
    lexicon: &TranslationLexicon,
    config: &ParallelConfig,
) -> SplittingKnowledge {
    corpus
        .pairs()
        .par_iter()
        .fold(SplittingKnowledge::new, |mut acc, pair| {
            for token in &pair.german {
                let choice =
                    choose_split_in_context(token, &pair.english, index, counts, lexicon, config);
                acc.record(choice, 1);
            }
            acc
        })
        .reduce(SplittingKnowledge::new, |mut a, b| {
            a.absorb(b);
            a
        })
}

/// Trains a second lexicon on the corpus with its German side pre-split by
/// the frequency method, and joins it with a lexicon trained on the corpus
/// as is. Fillers are dropped from the split side.
pub fn bootstrap_second_lexicon(
    corpus: &ParallelCorpus,
    index: &KnownWordIndex,
    counts: &WordCountTable,
    config: &SplitConfig,
    train: &TrainConfig,
) -> Result<TranslationLexicon> {
    let plain = train_lexicon(corpus, train)?;
    let mut cache: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let split_corpus = corpus.map_german(|token| {
        cache
            .entry(token.to_string())
            .or_insert_with(|| {
                split_frequency(token, index, counts, config)
                    .words()
                    .map(String::from)
                    .collect()
            })
            .clone()
    });
    let second = train_lexicon(&split_corpus, train)?;
    Ok(merge_lexicons(&plain, &second))
}

/// Most frequent learned option for `word`, or the frequency method when the
/// word was never seen.
pub fn apply_knowledge(
    word: &str,
    knowledge: &SplittingKnowledge,
    index: &KnownWordIndex,
    counts: &WordCountTable,
    config: &SplitConfig,
) -> SplitOption {
    let key = canonical(word);
    knowledge
        .majority(&key, counts)
        .unwrap_or_else(|| split_frequency(&key, index, counts, config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tokens(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn option(surface: &str, rendered: &str) -> SplitOption {
        SplitOption::parse(surface, rendered).unwrap()
    }

    fn lexicon(entries: &[(&str, &str, f64)]) -> TranslationLexicon {
        let mut lex = TranslationLexicon::new();
        for (g, e, p) in entries {
            lex.insert(g, e, *p).unwrap();
        }
        lex
    }

    fn aktionsplan_setup() -> (KnownWordIndex, WordCountTable) {
        let counts: WordCountTable = [
            ("aktionsplan", 852),
            ("aktion", 960),
            ("aktions", 5),
            ("akt", 224),
            ("ion", 1),
            ("plan", 710),
            ("frei", 885),
            ("tag", 1864),
            ("freitag", 556),
        ]
        .into_iter()
        .collect();
        (KnownWordIndex::build(&counts, 3), counts)
    }

    #[test]
    fn both_parts_find_evidence() {
        let lex = lexicon(&[("aktion", "action", 0.8), ("plan", "plan", 0.9)]);
        let m = match_option(
            &option("aktionsplan", "aktion(+s) plan"),
            &tokens("the action plan"),
            &lex,
            0.01,
        );
        assert_eq!(m.covered_parts, 2);
        assert_eq!(m.consumed, vec![1, 2]);
        assert!(m.fully_covered());
    }

    #[test]
    fn no_evidence_for_freitag_parts() {
        let lex = lexicon(&[("frei", "free", 0.7), ("tag", "day", 0.8)]);
        let m = match_option(&option("freitag", "frei tag"), &tokens("on friday"), &lex, 0.01);
        assert_eq!(m.covered_parts, 0);
        let m = match_option(&option("freitag", "frei tag"), &[], &lex, 0.01);
        assert_eq!(m.covered_parts, 0);
        assert!(m.consumed.is_empty());
    }

    #[test]
    fn each_english_token_used_once() {
        let lex = lexicon(&[("plan", "plan", 0.9), ("aktion", "plan", 0.5)]);
        let m = match_option(&option("aktionsplan", "aktion(+s) plan"), &tokens("plan"), &lex, 0.01);
        assert_eq!(m.covered_parts, 1);
        assert_eq!(m.consumed, vec![0]);
    }

    #[test]
    fn earlier_part_gives_way() {
        // "aktion" could take "plan" first, but then "plan" would find nothing
        let lex = lexicon(&[("aktion", "plan", 0.5), ("aktion", "action", 0.4), ("plan", "plan", 0.9)]);
        let m = match_option(&option("aktionsplan", "aktion(+s) plan"), &tokens("plan action"), &lex, 0.01);
        assert_eq!(m.covered_parts, 2);
        assert_eq!(m.consumed, vec![1, 0]);
    }

    #[test]
    fn threshold_is_inclusive() {
        let lex = lexicon(&[("plan", "plan", 0.01)]);
        let o = option("plan", "plan");
        assert_eq!(match_option(&o, &tokens("plan"), &lex, 0.01).covered_parts, 1);
        assert_eq!(match_option(&o, &tokens("plan"), &lex, 0.011).covered_parts, 0);
    }

    #[test]
    fn context_splits_aktionsplan_not_freitag() {
        let (index, counts) = aktionsplan_setup();
        let lex = lexicon(&[
            ("aktion", "action", 0.8),
            ("aktions", "action", 0.3),
            ("plan", "plan", 0.9),
            ("frei", "free", 0.7),
            ("tag", "day", 0.8),
        ]);
        let config = ParallelConfig::default();
        let split = choose_split_in_context(
            "Aktionsplan",
            &tokens("the action plan"),
            &index,
            &counts,
            &lex,
            &config,
        );
        // both two-part options are fully covered; frequency prefers aktion(+s)
        assert_eq!(split.render(), "aktion(+s) plan");
        let split =
            choose_split_in_context("freitag", &tokens("on friday"), &index, &counts, &lex, &config);
        assert_eq!(split.render(), "freitag");
    }

    #[test]
    fn more_parts_win_within_coverage_tier() {
        let (index, counts) = aktionsplan_setup();
        let lex = lexicon(&[("akt", "action", 0.5), ("aktion", "action", 0.8), ("plan", "plan", 0.9)]);
        let split = choose_split_in_context(
            "aktionsplan",
            &tokens("action plan"),
            &index,
            &counts,
            &lex,
            &ParallelConfig::default(),
        );
        assert_eq!(split.render(), "akt ion(+s) plan");
    }

    #[test]
    fn single_option_returned_regardless() {
        let (index, counts) = aktionsplan_setup();
        let split = choose_split_in_context(
            "plan",
            &tokens("nothing here"),
            &index,
            &counts,
            &TranslationLexicon::new(),
            &ParallelConfig::default(),
        );
        assert_eq!(split.render(), "plan");
        let config = ParallelConfig {
            split: SplitConfig {
                allow_whole_word: false,
                ..SplitConfig::default()
            },
            ..ParallelConfig::default()
        };
        let only = KnownWordIndex::from_words(["frei", "tag"], 3);
        let split = choose_split_in_context("freitag", &[], &only, &counts, &TranslationLexicon::new(), &config);
        assert_eq!(split.render(), "frei tag");
    }

    #[test]
    fn knowledge_tallies_and_majority() {
        let mut k = SplittingKnowledge::new();
        k.record(option("grundrechte", "grund rechte"), 213);
        k.record(option("grundrechte", "grundrechte"), 17);
        assert_eq!(k.count(&option("grundrechte", "grund rechte")), 213);
        let counts = WordCountTable::new();
        let index = KnownWordIndex::new(3);
        let chosen = apply_knowledge("Grundrechte", &k, &index, &counts, &SplitConfig::default());
        assert_eq!(chosen.render(), "grund rechte");
    }

    #[test]
    fn knowledge_ties_prefer_more_parts() {
        let mut k = SplittingKnowledge::new();
        k.record(option("aktionsplan", "aktionsplan"), 4);
        k.record(option("aktionsplan", "aktions plan"), 4);
        k.record(option("aktionsplan", "akt ion(+s) plan"), 3);
        let (index, counts) = aktionsplan_setup();
        let chosen = apply_knowledge("aktionsplan", &k, &index, &counts, &SplitConfig::default());
        assert_eq!(chosen.render(), "aktions plan");

        // equal counts and parts: frequency score decides (825.6 > 59.6)
        k.record(option("aktionsplan", "aktion(+s) plan"), 4);
        let chosen = apply_knowledge("aktionsplan", &k, &index, &counts, &SplitConfig::default());
        assert_eq!(chosen.render(), "aktion(+s) plan");
    }

    #[test]
    fn unseen_words_back_off_to_frequency() {
        let (index, counts) = aktionsplan_setup();
        let k = SplittingKnowledge::new();
        let config = SplitConfig::default();
        for w in ["freitag", "aktionsplan", "unbekannt"] {
            assert_eq!(
                apply_knowledge(w, &k, &index, &counts, &config),
                split_frequency(w, &index, &counts, &config)
            );
        }
    }

    #[test]
    fn learn_single_pair() {
        let (index, counts) = aktionsplan_setup();
        let corpus = ParallelCorpus::new(vec![crate::lexicon::SentencePair {
            german: tokens("der aktionsplan"),
            english: tokens("the action plan"),
        }])
        .unwrap();
        let lex = lexicon(&[("aktion", "action", 0.8), ("plan", "plan", 0.9)]);
        let k = learn_knowledge(&corpus, &index, &counts, &lex, &ParallelConfig::default());
        assert_eq!(k.len(), 2);
        for w in ["der", "aktionsplan"] {
            assert_eq!(k.options(w).count(), 1);
            assert_eq!(k.options(w).map(|(_, n)| n).sum::<u64>(), 1);
        }
        assert_eq!(k.count(&option("aktionsplan", "aktion(+s) plan")), 1);
    }

    #[test]
    fn learn_repeated_context_matches_replay() {
        let (index, counts) = aktionsplan_setup();
        let pair = crate::lexicon::SentencePair {
            german: tokens("aktionsplan am freitag"),
            english: tokens("action plan on friday"),
        };
        let corpus = ParallelCorpus::new(vec![pair.clone(), pair.clone()]).unwrap();
        let lex = lexicon(&[("aktion", "action", 0.8), ("plan", "plan", 0.9)]);
        let config = ParallelConfig::default();
        let k = learn_knowledge(&corpus, &index, &counts, &lex, &config);

        // replay the chooser token by token
        let mut expected: BTreeMap<SplitOption, u64> = BTreeMap::new();
        for p in [&pair, &pair] {
            for t in &p.german {
                let o = choose_split_in_context(t, &p.english, &index, &counts, &lex, &config);
                *expected.entry(o).or_default() += 1;
            }
        }
        for (o, n) in &expected {
            assert_eq!(k.count(o), *n);
        }
        assert_eq!(k.count(&option("aktionsplan", "aktion(+s) plan")), 2);
        assert_eq!(k.count(&option("freitag", "freitag")), 2);
    }

    #[test]
    fn empty_corpus_gives_empty_knowledge() {
        let (index, counts) = aktionsplan_setup();
        let k = learn_knowledge(
            &ParallelCorpus::default(),
            &index,
            &counts,
            &TranslationLexicon::new(),
            &ParallelConfig::default(),
        );
        assert!(k.is_empty());
    }

    #[test]
    fn bootstrap_learns_compound_internal_sense() {
        let sentences = [
            ("die grundrechte", "the basic rights"),
            ("grundrechte", "basic rights"),
            ("der grund", "the reason"),
            ("die rechte", "the rights"),
        ];
        let corpus = ParallelCorpus::from_sentences(sentences, &Default::default());
        let counts: WordCountTable =
            [("grundrechte", 2), ("grund", 40), ("rechte", 50), ("die", 100), ("der", 100)]
                .into_iter()
                .collect();
        let index = KnownWordIndex::build(&counts, 3);
        let merged = bootstrap_second_lexicon(
            &corpus,
            &index,
            &counts,
            &SplitConfig::default(),
            &TrainConfig::default(),
        )
        .unwrap();
        assert!(merged.prob("grund", "basic") >= 0.01, "{merged:?}");
    }

    #[test]
    fn bootstrap_without_splits_equals_plain() {
        let corpus = ParallelCorpus::from_sentences(
            [("der plan", "the plan"), ("die aktion", "the action")],
            &Default::default(),
        );
        let counts = WordCountTable::count_words(["der plan die aktion"]);
        let index = KnownWordIndex::build(&counts, 3);
        let train = TrainConfig::default();
        let merged =
            bootstrap_second_lexicon(&corpus, &index, &counts, &SplitConfig::default(), &train)
                .unwrap();
        assert_eq!(merged, train_lexicon(&corpus, &train).unwrap());
    }

    #[test]
    fn bootstrap_single_pair_entries() {
        // One EM step on ([aktion, plan], [action, plan]) starting uniform
        // gives every entry 1/2.
        let corpus = ParallelCorpus::from_sentences([("aktionsplan", "action plan")], &Default::default());
        let counts: WordCountTable =
            [("aktionsplan", 1), ("aktion", 960), ("plan", 710)].into_iter().collect();
        let index = KnownWordIndex::build(&counts, 3);
        let train = TrainConfig {
            iterations: 1,
            ..TrainConfig::default()
        };
        let merged =
            bootstrap_second_lexicon(&corpus, &index, &counts, &SplitConfig::default(), &train)
                .unwrap();
        for (g, e) in [("aktion", "action"), ("aktion", "plan"), ("plan", "action"), ("plan", "plan")] {
            assert_eq!(merged.prob(g, e), 0.5, "{g} -> {e}");
        }
        assert_eq!(merged.prob("aktionsplan", "action"), 0.5);
    }

    #[test]
    fn knowledge_tsv_round_trip() {
        let mut k = SplittingKnowledge::new();
        k.record(option("aktionsplan", "aktion(+s) plan"), 3);
        k.record(option("aktionsplan", "aktionsplan"), 1);
        k.record(option("freitag", "freitag"), 7);
        let mut buf = Vec::new();
        k.write_tsv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "aktionsplan\taktion(+s) plan\t3\naktionsplan\taktionsplan\t1\nfreitag\tfreitag\t7\n"
        );
        assert_eq!(SplittingKnowledge::read_tsv(buf.as_slice(), "k").unwrap(), k);
        let err = SplittingKnowledge::read_tsv("freitag\tfrei tage\t1\n".as_bytes(), "k.tsv").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn restrict_drops_excluded_parts() {
        let mut k = SplittingKnowledge::new();
        k.record(option("folgenden", "folgen den"), 5);
        k.record(option("folgenden", "folgenden"), 1);
        let index = KnownWordIndex::from_words(["folgen", "folgenden"], 3);
        let r = k.restrict(&index);
        assert_eq!(r.options("folgenden").count(), 1);
        assert_eq!(r.majority("folgenden", &WordCountTable::new()).unwrap().render(), "folgenden");
    }

    proptest! {
        #[test]
        fn one_use_and_threshold_monotone(
            parts in prop::collection::vec(prop::sample::select(vec!["aaa", "bbb", "ccc"]), 1..4),
            english in prop::collection::vec(prop::sample::select(vec!["x", "y", "z"]), 0..6),
            probs in prop::collection::vec(0.001f64..1.0, 9),
            t1 in 0.001f64..0.9, dt in 0.0f64..0.5,
        ) {
            let mut lex = TranslationLexicon::new();
            for (i, (g, e)) in ["aaa", "bbb", "ccc"].iter()
                .flat_map(|g| ["x", "y", "z"].map(move |e| (*g, e)))
                .enumerate() {
                lex.insert(g, e, probs[i]).unwrap();
            }
            let surface: String = parts.concat();
            let o = SplitOption::from_parts(&surface, parts.iter().map(|p| crate::splitter::SplitPart::new(*p)).collect());
            let english: Vec<String> = english.into_iter().map(String::from).collect();
            let low = match_option(&o, &english, &lex, t1);
            let high = match_option(&o, &english, &lex, (t1 + dt).min(0.999));
            let mut seen = low.consumed.clone();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), low.covered_parts);
            prop_assert!(low.covered_parts <= o.num_parts());
            prop_assert!(high.covered_parts <= low.covered_parts);
        }
    }
}
