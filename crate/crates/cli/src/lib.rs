//! Command-line front end: counting, indexing, lexicon training, learning
//! splitting knowledge, splitting word lists and evaluating predictions.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use decompound::corpus::canonical;
use decompound::{
    evaluate, learn_from_corpus, train_lexicon, GoldStandard, KnownWordIndex, MatchMode, Method,
    MethodSplitter, ParallelConfig, ParallelCorpus, PosFilter, PosTable, PosWhitelist, SplitConfig,
    SplitTable, SplittingKnowledge, Tokenizer, TrainConfig, TranslationLexicon, WordCountTable,
};

#[derive(Parser, Debug)]
#[command(name = "decompound", version, about = "Split compound words using corpus statistics and parallel text")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count canonical word tokens in text files (one sentence per line).
    Count {
        #[arg(long = "corpus", required = true)]
        corpus: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the prefix-bucketed index of known words from a counts file.
    Index {
        #[arg(long)]
        counts: PathBuf,
        #[arg(long, default_value_t = 3)]
        min_part_len: usize,
        #[command(flatten)]
        pos: PosArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a translation lexicon on a parallel corpus.
    TrainLexicon {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 5)]
        em_iters: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the merged lexicon: plain training joined with training on the
    /// frequency-split German side.
    Bootstrap {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        pos: PosArgs,
        #[arg(long, default_value_t = 5)]
        em_iters: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Split every German token of a parallel corpus in context and write the
    /// per-word tallies.
    LearnSplits {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        pos: PosArgs,
        /// Lexicon to use; bootstrapped from the corpus when absent.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, default_value_t = decompound::parallel::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = 5)]
        em_iters: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Split a word list (one word per line) or running text.
    Split(SplitArgs),
    /// Score predicted splits against a gold standard.
    Evaluate {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        /// Compare parts and fillers exactly (default).
        #[arg(long, conflicts_with = "lenient")]
        strict: bool,
        /// Compare joint positions only.
        #[arg(long)]
        lenient: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Row label in the report.
        #[arg(long)]
        label: Option<String>,
        /// Report file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Frequency)]
    pub method: MethodArg,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub pos: PosArgs,
    /// Learned splitting knowledge for the parallel methods.
    #[arg(long)]
    pub knowledge: Option<PathBuf>,
    /// Parallel corpus to learn knowledge from when no knowledge file is given.
    #[command(flatten)]
    pub corpus: OptionalCorpusArgs,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, default_value_t = decompound::parallel::DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[arg(long, default_value_t = 5)]
    pub em_iters: usize,
    /// Treat the input as running text and emit one line per token, with the
    /// original spelling in the first column.
    #[arg(long)]
    pub sentences: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Counts, index and splitting options.
#[derive(Args, Debug)]
pub struct ModelArgs {
    #[arg(long)]
    pub counts: Option<PathBuf>,
    /// Index file; built from the counts when absent.
    #[arg(long)]
    pub index: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "s,es")]
    pub fillers: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub min_part_len: usize,
}

#[derive(Args, Debug)]
pub struct PosArgs {
    /// POS table: word, tag and optional count per line.
    #[arg(long)]
    pub pos: Option<PathBuf>,
    /// Whitelisted tags: a file, or "default" for the built-in set.
    #[arg(long, default_value = "default")]
    pub pos_whitelist: String,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// German side, one sentence per line (with --english).
    #[arg(long, requires = "english", conflicts_with = "parallel")]
    pub german: Option<PathBuf>,
    #[arg(long, requires = "german")]
    pub english: Option<PathBuf>,
    /// Both sides in one file: german<TAB>english per line.
    #[arg(long, required_unless_present = "german")]
    pub parallel: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OptionalCorpusArgs {
    #[arg(long, requires = "english", conflicts_with = "parallel")]
    pub german: Option<PathBuf>,
    #[arg(long, requires = "german")]
    pub english: Option<PathBuf>,
    #[arg(long)]
    pub parallel: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Raw,
    Eager,
    Frequency,
    Parallel,
    ParallelPos,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Raw => Method::Raw,
            MethodArg::Eager => Method::Eager,
            MethodArg::Frequency => Method::Frequency,
            MethodArg::Parallel => Method::Parallel,
            MethodArg::ParallelPos => Method::ParallelPos,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Tsv,
    Jsonl,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { corpus, out } => {
            let tokenizer = Tokenizer::default();
            let mut counts = WordCountTable::new();
            for path in &corpus {
                let lines = read_lines(path)?;
                counts.merge(&WordCountTable::count_words_with(lines, &tokenizer));
            }
            write_output(Some(&out), |w| counts.write_tsv(w))
        }
        Command::Index {
            counts,
            min_part_len,
            pos,
            out,
        } => {
            let counts = WordCountTable::load(&counts)?;
            let mut index = KnownWordIndex::build(&counts, min_part_len);
            if let Some(filter) = pos.load()? {
                index = filter.restrict(&index);
            }
            write_output(Some(&out), |w| index.write_tsv(w))
        }
        Command::TrainLexicon {
            corpus,
            em_iters,
            out,
        } => {
            let corpus = corpus.load()?;
            let lexicon = train_lexicon(&corpus, &train_config(em_iters))?;
            write_output(Some(&out), |w| lexicon.write_tsv(w))
        }
        Command::Bootstrap {
            corpus,
            model,
            pos,
            em_iters,
            out,
        } => {
            let corpus = corpus.load()?;
            let (counts, index, config) = model.load()?;
            let index = match pos.load()? {
                Some(filter) => filter.restrict(&index),
                None => index,
            };
            let lexicon = decompound::bootstrap_second_lexicon(
                &corpus,
                &index,
                &counts,
                &config,
                &train_config(em_iters),
            )?;
            write_output(Some(&out), |w| lexicon.write_tsv(w))
        }
        Command::LearnSplits {
            corpus,
            model,
            pos,
            lexicon,
            threshold,
            em_iters,
            out,
        } => {
            let corpus = corpus.load()?;
            let (counts, index, split) = model.load()?;
            let filter = pos.load()?;
            let lexicon = lexicon.map(|p| TranslationLexicon::load(&p)).transpose()?;
            let knowledge = learn_from_corpus(
                &corpus,
                &counts,
                &index,
                lexicon.as_ref(),
                filter.as_ref(),
                &ParallelConfig { split, threshold },
                &train_config(em_iters),
            )?;
            write_output(Some(&out), |w| knowledge.write_tsv(w))
        }
        Command::Split(args) => split(args),
        Command::Evaluate {
            predictions,
            gold,
            strict: _,
            lenient,
            format,
            label,
            out,
        } => {
            let mode = if lenient { MatchMode::Lenient } else { MatchMode::Strict };
            let predicted = SplitTable::load(&predictions)?;
            let gold_table = GoldStandard::load(&gold)?;
            let report = evaluate(&predicted, &gold_table, mode)
                .with_context(|| format!("evaluating {}", predictions.display()))?;
            let label = label.unwrap_or_else(|| {
                predictions
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            });
            let text = match format {
                Format::Table => report.render_table(&label),
                Format::Tsv => report.to_tsv(&label),
                Format::Jsonl => report.to_json_line(&label),
            };
            write_output(out.as_deref(), |w| {
                w.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    w.write_all(b"\n")?;
                }
                Ok(())
            })
        }
    }
}

fn split(args: SplitArgs) -> Result<()> {
    let method = Method::from(args.method);
    let lines = read_lines(&args.input)?;

    let (counts, index, config) = if method == Method::Raw {
        (WordCountTable::new(), KnownWordIndex::new(args.model.min_part_len), args.model.split_config())
    } else {
        args.model.load()?
    };
    let filter = args.pos.load()?;
    if method == Method::ParallelPos && filter.is_none() {
        bail!("method parallel-pos needs --pos");
    }
    let knowledge = if method.uses_knowledge() {
        Some(load_knowledge(&args, &counts, &index, &config, filter.as_ref())?)
    } else {
        None
    };
    let splitter = MethodSplitter::new(method, index, counts, config, knowledge, filter.as_ref())?;

    if args.sentences {
        let rows: Vec<Vec<(String, String)>> = lines
            .par_iter()
            .map(|line| {
                line.split_whitespace()
                    .filter_map(|t| {
                        let original = t.trim_matches(|c: char| c.is_ascii_punctuation());
                        (!original.is_empty())
                            .then(|| (original.to_string(), splitter.split(original).render()))
                    })
                    .collect()
            })
            .collect();
        write_output(args.out.as_deref(), |w| {
            for (i, sentence) in rows.iter().enumerate() {
                if i > 0 {
                    writeln!(w)?;
                }
                for (original, rendered) in sentence {
                    writeln!(w, "{original}\t{rendered}")?;
                }
            }
            Ok(())
        })
    } else {
        let words: Vec<String> = lines
            .iter()
            .map(|l| canonical(l))
            .filter(|w| !w.is_empty())
            .collect();
        let rendered: Vec<String> = words.par_iter().map(|w| splitter.split(w).render()).collect();
        write_output(args.out.as_deref(), |w| {
            for (word, r) in words.iter().zip(&rendered) {
                writeln!(w, "{word}\t{r}")?;
            }
            Ok(())
        })
    }
}

fn load_knowledge(
    args: &SplitArgs,
    counts: &WordCountTable,
    index: &KnownWordIndex,
    split: &SplitConfig,
    filter: Option<&PosFilter>,
) -> Result<SplittingKnowledge> {
    if let Some(path) = &args.knowledge {
        return Ok(SplittingKnowledge::load(path)?);
    }
    let Some(corpus) = args.corpus.load()? else {
        bail!(
            "method {} needs --knowledge or a parallel corpus (--parallel, or --german with --english)",
            Method::from(args.method)
        );
    };
    let lexicon = args.lexicon.as_ref().map(|p| TranslationLexicon::load(p)).transpose()?;
    let config = ParallelConfig {
        split: split.clone(),
        threshold: args.threshold,
    };
    Ok(learn_from_corpus(
        &corpus,
        counts,
        index,
        lexicon.as_ref(),
        filter,
        &config,
        &train_config(args.em_iters),
    )?)
}

impl ModelArgs {
    fn split_config(&self) -> SplitConfig {
        SplitConfig {
            fillers: self.fillers.iter().filter(|f| !f.is_empty()).cloned().collect(),
            min_part_length: self.min_part_len,
            ..SplitConfig::default()
        }
    }

    fn load(&self) -> Result<(WordCountTable, KnownWordIndex, SplitConfig)> {
        let Some(counts_path) = &self.counts else {
            bail!("--counts is required");
        };
        let counts = WordCountTable::load(counts_path)?;
        let index = match &self.index {
            Some(p) => KnownWordIndex::load(p, self.min_part_len)?,
            None => KnownWordIndex::build(&counts, self.min_part_len),
        };
        let config = self.split_config();
        config.validate()?;
        Ok((counts, index, config))
    }
}

impl PosArgs {
    fn load(&self) -> Result<Option<PosFilter>> {
        let Some(path) = &self.pos else {
            return Ok(None);
        };
        let whitelist = if self.pos_whitelist == "default" {
            PosWhitelist::default()
        } else {
            PosWhitelist::load(Path::new(&self.pos_whitelist))?
        };
        Ok(Some(PosFilter {
            table: PosTable::load(path)?,
            whitelist,
        }))
    }
}

fn load_corpus(
    german: Option<&Path>,
    english: Option<&Path>,
    parallel: Option<&Path>,
) -> Result<Option<ParallelCorpus>> {
    let tokenizer = Tokenizer::default();
    Ok(match (german, english, parallel) {
        (_, _, Some(p)) => Some(ParallelCorpus::load_tsv(p, &tokenizer)?),
        (Some(g), Some(e), None) => Some(ParallelCorpus::load_aligned(g, e, &tokenizer)?),
        _ => None,
    })
}

impl CorpusArgs {
    fn load(&self) -> Result<ParallelCorpus> {
        load_corpus(self.german.as_deref(), self.english.as_deref(), self.parallel.as_deref())?
            .context("a parallel corpus is required")
    }
}

impl OptionalCorpusArgs {
    fn load(&self) -> Result<Option<ParallelCorpus>> {
        load_corpus(self.german.as_deref(), self.english.as_deref(), self.parallel.as_deref())
    }
}

fn train_config(iterations: usize) -> TrainConfig {
    TrainConfig {
        iterations,
        ..TrainConfig::default()
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    BufReader::new(file)
        .lines()
        .enumerate()
        .map(|(i, l)| l.with_context(|| format!("{}:{}: unreadable line", path.display(), i + 1)))
        .collect()
}

/// Writes to `path` through a temporary file in the same directory, so that a
/// failed run leaves no partial output. `None` writes to standard output.
fn write_output<F>(path: Option<&Path>, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let Some(path) = path else {
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        f(&mut out).and_then(|_| out.flush()).context("writing to standard output")?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a file in {}", dir.display()))?;
    let mut out = BufWriter::new(tmp);
    f(&mut out)
        .and_then(|_| out.flush())
        .with_context(|| format!("writing {}", path.display()))?;
    let tmp = out.into_inner().map_err(|e| e.into_error())?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
