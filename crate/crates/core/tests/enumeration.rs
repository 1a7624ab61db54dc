mod common;

use std::collections::BTreeSet;

use decompound::{enumerate_splits, KnownWordIndex, SplitConfig};
use proptest::prelude::*;

use common::brute_force_options;

fn enumerated(word: &str, vocab: &BTreeSet<String>, min_len: usize) -> BTreeSet<Vec<(String, String)>> {
    let index = KnownWordIndex::from_words(vocab, min_len);
    let config = SplitConfig {
        min_part_length: min_len,
        ..SplitConfig::default()
    };
    enumerate_splits(word, &index, &config)
        .into_iter()
        .map(|o| o.parts.into_iter().map(|p| (p.word, p.filler)).collect())
        .collect()
}

#[test]
fn oracle_agrees_on_aktionsplan() {
    let vocab: BTreeSet<String> = ["aktionsplan", "aktions", "aktion", "akt", "ion", "plan"]
        .map(String::from)
        .into();
    let oracle = brute_force_options("aktionsplan", &vocab, &["s", "es"], 3);
    assert_eq!(oracle.len(), 4);
    assert_eq!(enumerated("aktionsplan", &vocab, 3), oracle);
}

#[test]
fn every_short_word_over_small_alphabet() {
    // all words up to length 7 over {a, e, s}
    let vocab: BTreeSet<String> = ["a", "as", "es", "sa", "ase", "e", "ss", "aes", "sea"]
        .map(String::from)
        .into();
    let mut words = vec![String::new()];
    for _ in 0..7 {
        words = words
            .iter()
            .flat_map(|w| ['a', 'e', 's'].map(|c| format!("{w}{c}")))
            .collect();
        for w in &words {
            for min_len in [1, 2] {
                assert_eq!(
                    enumerated(w, &vocab, min_len),
                    brute_force_options(w, &vocab, &["s", "es"], min_len),
                    "{w} (min {min_len})"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn matches_brute_force(vocab in prop::collection::btree_set("[abes]{1,4}", 1..15),
                           word in "[abes]{1,12}", min_len in 1usize..4) {
        prop_assert_eq!(
            enumerated(&word, &vocab, min_len),
            brute_force_options(&word, &vocab, &["s", "es"], min_len)
        );
    }

    #[test]
    fn matches_brute_force_on_compounds(vocab in prop::collection::vec("[abes]{2,4}", 2..8),
                                        picks in prop::collection::vec((0usize..8, 0usize..3), 1..4)) {
        // words glued from vocabulary items, so that real splits exist
        let fillers = ["", "s", "es"];
        let mut word = String::new();
        for (i, (w, f)) in picks.iter().enumerate() {
            word.push_str(&vocab[w % vocab.len()]);
            if i + 1 < picks.len() {
                word.push_str(fillers[*f]);
            }
        }
        prop_assume!(word.chars().count() <= 12);
        let vocab: BTreeSet<String> = vocab.into_iter().collect();
        let got = enumerated(&word, &vocab, 2);
        prop_assert!(!got.is_empty());
        prop_assert_eq!(got, brute_force_options(&word, &vocab, &["s", "es"], 2));
    }
}
