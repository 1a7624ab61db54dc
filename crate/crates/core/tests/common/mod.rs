#![allow(dead_code)]

use std::collections::BTreeSet;

use decompound::{ParallelCorpus, PosTable, Tokenizer, TranslationLexicon, WordCountTable};

/// All decompositions of `word` found by trying every set of boundary
/// positions and every filler reading of each non-final piece. Returns
/// (word, filler) sequences; the unsplit word is always included.
pub fn brute_force_options(
    word: &str,
    vocab: &BTreeSet<String>,
    fillers: &[&str],
    min_len: usize,
) -> BTreeSet<Vec<(String, String)>> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = BTreeSet::new();
    out.insert(vec![(word.to_string(), String::new())]);
    if chars.len() < 2 {
        return out;
    }
    let known = |w: &str| vocab.contains(w) && w.chars().count() >= min_len;
    for mask in 1u32..(1 << (chars.len() - 1)) {
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 0..chars.len() - 1 {
            if mask & (1 << i) != 0 {
                pieces.push(chars[start..=i].iter().collect::<String>());
                start = i + 1;
            }
        }
        pieces.push(chars[start..].iter().collect::<String>());

        // each non-final piece is word + filler for one of the fillers (or none)
        let mut partial: Vec<Vec<(String, String)>> = vec![Vec::new()];
        for (k, piece) in pieces.iter().enumerate() {
            let last = k + 1 == pieces.len();
            let mut readings = Vec::new();
            if known(piece) {
                readings.push((piece.clone(), String::new()));
            }
            if !last {
                for f in fillers {
                    if let Some(stem) = piece.strip_suffix(f) {
                        if !stem.is_empty() && known(stem) {
                            readings.push((stem.to_string(), f.to_string()));
                        }
                    }
                }
            }
            partial = partial
                .into_iter()
                .flat_map(|seq| {
                    readings.iter().map(move |r| {
                        let mut s = seq.clone();
                        s.push(r.clone());
                        s
                    })
                })
                .collect();
            if partial.is_empty() {
                break;
            }
        }
        out.extend(partial);
    }
    out
}

pub fn counts(entries: &[(&str, u64)]) -> WordCountTable {
    entries.iter().map(|&(w, n)| (w, n)).collect()
}

pub fn aktionsplan_counts() -> WordCountTable {
    counts(&[
        ("aktionsplan", 852),
        ("aktion", 960),
        ("aktions", 5),
        ("akt", 224),
        ("ion", 1),
        ("plan", 710),
    ])
}

pub fn freitag_counts() -> WordCountTable {
    counts(&[("frei", 885), ("tag", 1864), ("freitag", 556)])
}

/// Sentence pairs of the 50-sentence desk corpus: "aktionsplan" always next
/// to "action plan", "freitag" always next to "friday", and the parts seen
/// on their own elsewhere.
pub const DESK_CORPUS: [(&str, &str, usize); 7] = [
    ("der Aktionsplan", "the action plan", 12),
    ("am Freitag", "on Friday", 10),
    ("die Aktion", "the action", 6),
    ("der Plan", "the plan", 6),
    ("wir sind frei", "we are free", 4),
    ("der Tag", "the day", 4),
    ("wir sind hier", "we are here", 8),
];

pub fn desk_corpus() -> ParallelCorpus {
    let sentences = DESK_CORPUS
        .iter()
        .flat_map(|&(g, e, n)| std::iter::repeat_n((g, e), n));
    ParallelCorpus::from_sentences(sentences, &Tokenizer::default())
}

/// Counts of the German side of [`desk_corpus`].
pub fn desk_counts() -> WordCountTable {
    WordCountTable::count_words(
        DESK_CORPUS
            .iter()
            .flat_map(|&(g, _, n)| std::iter::repeat_n(g, n)),
    )
}

pub fn folgenden_corpus() -> ParallelCorpus {
    ParallelCorpus::from_sentences(
        [
            ("die folgenden Punkte", "the following points"),
            ("im folgenden Jahr", "in the following year"),
            ("die Folgen", "the consequences"),
            ("den Plan", "the plan"),
        ],
        &Tokenizer::default(),
    )
}

pub fn folgenden_counts() -> WordCountTable {
    counts(&[
        ("folgenden", 40),
        ("folgen", 120),
        ("den", 900),
        ("die", 1000),
        ("punkte", 30),
        ("jahr", 50),
        ("plan", 70),
    ])
}

pub fn folgenden_lexicon() -> TranslationLexicon {
    let mut lex = TranslationLexicon::new();
    for (g, e, p) in [
        ("folgenden", "following", 0.8),
        ("folgen", "consequences", 0.6),
        ("folgen", "following", 0.2),
        ("den", "the", 0.4),
        ("die", "the", 0.7),
        ("punkte", "points", 0.9),
        ("jahr", "year", 0.9),
        ("plan", "plan", 0.9),
    ] {
        lex.insert(g, e, p).unwrap();
    }
    lex
}

pub fn folgenden_pos() -> PosTable {
    [
        ("den", "ART", 880),
        ("den", "PDS", 15),
        ("den", "NN", 5),
        ("folgen", "NN", 90),
        ("folgen", "VVFIN", 25),
        ("folgen", "VVINF", 5),
        ("folgenden", "ADJA", 40),
        ("die", "ART", 1000),
        ("punkte", "NN", 30),
        ("jahr", "NN", 50),
        ("plan", "NN", 70),
    ]
    .into_iter()
    .collect()
}
