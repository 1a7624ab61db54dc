//! Evaluation of predicted splits against a gold standard.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::io::BufRead;
use std::path::Path;

use serde::Serialize;

use crate::corpus::canonical;
use crate::error::{Error, Result};
use crate::io;
use crate::splitter::SplitOption;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// Should be split and was split correctly.
    CorrectSplit,
    /// Should not be split and was not.
    CorrectNon,
    /// Should be split but was not.
    WrongNot,
    /// Should be split and was, but into the wrong parts.
    WrongFaulty,
    /// Should not be split but was.
    WrongSplit,
}

/// How predicted and gold splits are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MatchMode {
    /// Parts and fillers must agree.
    #[default]
    Strict,
    /// Only the joint positions in the surface string must agree.
    Lenient,
}

pub fn classify(predicted: &SplitOption, gold: &SplitOption, mode: MatchMode) -> Result<Category> {
    if predicted.surface != gold.surface {
        return Err(Error::SurfaceMismatch {
            predicted: predicted.surface.clone(),
            gold: gold.surface.clone(),
        });
    }
    let same = match mode {
        MatchMode::Strict => predicted.parts == gold.parts,
        MatchMode::Lenient => predicted.joints() == gold.joints(),
    };
    Ok(match (gold.is_split(), predicted.is_split()) {
        (true, true) if same => Category::CorrectSplit,
        (true, true) => Category::WrongFaulty,
        (true, false) => Category::WrongNot,
        (false, true) => Category::WrongSplit,
        (false, false) => Category::CorrectNon,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CategoryCounts {
    pub correct_split: u64,
    pub correct_non: u64,
    pub wrong_not: u64,
    pub wrong_faulty: u64,
    pub wrong_split: u64,
}

impl CategoryCounts {
    pub fn new(
        correct_split: u64,
        correct_non: u64,
        wrong_not: u64,
        wrong_faulty: u64,
        wrong_split: u64,
    ) -> Self {
        CategoryCounts {
            correct_split,
            correct_non,
            wrong_not,
            wrong_faulty,
            wrong_split,
        }
    }

    pub fn add(&mut self, category: Category) {
        match category {
            Category::CorrectSplit => self.correct_split += 1,
            Category::CorrectNon => self.correct_non += 1,
            Category::WrongNot => self.wrong_not += 1,
            Category::WrongFaulty => self.wrong_faulty += 1,
            Category::WrongSplit => self.wrong_split += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.correct_split + self.correct_non + self.wrong_not + self.wrong_faulty + self.wrong_split
    }
}

/// A ratio that may have had a zero denominator, in which case it reads 0
/// and is marked undefined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ratio {
    pub value: f64,
    pub defined: bool,
}

impl Ratio {
    fn of(numerator: u64, denominator: u64) -> Self {
        if denominator == 0 {
            Ratio {
                value: 0.0,
                defined: false,
            }
        } else {
            Ratio {
                value: numerator as f64 / denominator as f64,
                defined: true,
            }
        }
    }
}

impl fmt::Display for Ratio {
    /// Percent with one decimal, `-` when undefined.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.defined {
            write!(f, "{:.1}%", self.value * 100.0)
        } else {
            f.write_str("-")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalReport {
    pub counts: CategoryCounts,
    pub precision: Ratio,
    pub recall: Ratio,
    pub accuracy: Ratio,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    label: &'a str,
    #[serde(flatten)]
    counts: CategoryCounts,
    total: u64,
    precision: f64,
    precision_defined: bool,
    recall: f64,
    recall_defined: bool,
    accuracy: f64,
    accuracy_defined: bool,
}

impl EvalReport {
    pub fn from_counts(counts: CategoryCounts) -> Self {
        let c = &counts;
        EvalReport {
            precision: Ratio::of(c.correct_split, c.correct_split + c.wrong_faulty + c.wrong_split),
            recall: Ratio::of(c.correct_split, c.correct_split + c.wrong_faulty + c.wrong_not),
            accuracy: Ratio::of(c.correct_split + c.correct_non, c.total()),
            counts,
        }
    }

    /// Table with the columns correct split/not, wrong not/faulty/split and
    /// the three metrics.
    pub fn render_table(&self, label: &str) -> String {
        let width = label.len().max(6);
        let c = &self.counts;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:width$}  {:>7} {:>7}  {:>7} {:>7} {:>7}  {:>7} {:>7} {:>7}",
            "", "correct", "", "wrong", "", "", "", "", ""
        );
        let _ = writeln!(
            out,
            "{:width$}  {:>7} {:>7}  {:>7} {:>7} {:>7}  {:>7} {:>7} {:>7}",
            "method", "split", "not", "not", "faulty", "split", "prec.", "recall", "acc."
        );
        let _ = writeln!(
            out,
            "{:width$}  {:>7} {:>7}  {:>7} {:>7} {:>7}  {:>7} {:>7} {:>7}",
            label,
            c.correct_split,
            c.correct_non,
            c.wrong_not,
            c.wrong_faulty,
            c.wrong_split,
            self.precision.to_string(),
            self.recall.to_string(),
            self.accuracy.to_string()
        );
        out
    }

    fn record<'a>(&self, label: &'a str) -> ReportRecord<'a> {
        ReportRecord {
            label,
            counts: self.counts,
            total: self.counts.total(),
            precision: self.precision.value,
            precision_defined: self.precision.defined,
            recall: self.recall.value,
            recall_defined: self.recall.defined,
            accuracy: self.accuracy.value,
            accuracy_defined: self.accuracy.defined,
        }
    }

    /// One JSON object on a single line.
    pub fn to_json_line(&self, label: &str) -> String {
        serde_json::to_string(&self.record(label)).expect("report serializes")
    }

    /// Header plus one row; undefined ratios are written as `-`.
    pub fn to_tsv(&self, label: &str) -> String {
        let c = &self.counts;
        let ratio = |r: Ratio| {
            if r.defined {
                format!("{:.6}", r.value)
            } else {
                "-".to_string()
            }
        };
        format!(
            "label\tcorrect_split\tcorrect_non\twrong_not\twrong_faulty\twrong_split\ttotal\tprecision\trecall\taccuracy\n\
             {label}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            c.correct_split,
            c.correct_non,
            c.wrong_not,
            c.wrong_faulty,
            c.wrong_split,
            c.total(),
            ratio(self.precision),
            ratio(self.recall),
            ratio(self.accuracy)
        )
    }
}

/// Splits keyed by canonical surface word, read from `surface<TAB>parts`
/// lines. Used for both gold annotations and predictions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitTable {
    entries: BTreeMap<String, SplitOption>,
}

pub type GoldStandard = SplitTable;

impl SplitTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry; a conflicting second entry for the same word is an error.
    pub fn insert(&mut self, option: SplitOption) -> std::result::Result<(), String> {
        match self.entries.get(&option.surface) {
            Some(existing) if *existing != option => Err(format!(
                "conflicting entries for {:?}: {} vs {}",
                option.surface, existing, option
            )),
            _ => {
                self.entries.insert(option.surface.clone(), option);
                Ok(())
            }
        }
    }

    pub fn get(&self, word: &str) -> Option<&SplitOption> {
        self.entries.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &SplitOption)> {
        self.entries.iter().map(|(w, o)| (w.as_str(), o))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A missing or bare second column means "not split".
    pub fn read_tsv<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut table = SplitTable::new();
        io::for_each_line(reader, origin, |line_no, line| {
            let mut fields = line.split('\t');
            let surface = canonical(fields.next().unwrap_or(""));
            let rendered = fields.next().unwrap_or("").trim();
            if fields.next().is_some() {
                return Err(Error::parse(origin, line_no, "more than 2 columns"));
            }
            if surface.is_empty() {
                return Err(Error::parse(origin, line_no, "empty surface word"));
            }
            let rendered = if rendered.is_empty() { surface.as_str() } else { rendered };
            let option = SplitOption::parse(&surface, rendered)
                .map_err(|m| Error::parse(origin, line_no, m))?;
            table
                .insert(option)
                .map_err(|m| Error::parse(origin, line_no, m))
        })?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_tsv(io::open(path)?, &path.display().to_string())
    }
}

impl FromIterator<SplitOption> for SplitTable {
    fn from_iter<T: IntoIterator<Item = SplitOption>>(iter: T) -> Self {
        SplitTable {
            entries: iter.into_iter().map(|o| (o.surface.clone(), o)).collect(),
        }
    }
}

/// Classifies the prediction for every gold word and tallies the results.
pub fn evaluate(predictions: &SplitTable, gold: &GoldStandard, mode: MatchMode) -> Result<EvalReport> {
    let missing: Vec<String> = gold
        .iter()
        .filter(|(w, _)| predictions.get(w).is_none())
        .map(|(w, _)| w.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingPredictions(missing));
    }
    let mut counts = CategoryCounts::default();
    for (word, gold_option) in gold.iter() {
        let predicted = predictions.get(word).expect("checked above");
        counts.add(classify(predicted, gold_option, mode)?);
    }
    Ok(EvalReport::from_counts(counts))
}
