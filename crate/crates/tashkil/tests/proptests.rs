//! Randomized properties of the script layer, edit profiles, statistics
//! accumulation, and database serialization.

use proptest::prelude::*;

use tashkil::db::AnalysisDb;
use tashkil::rank::edit_profile;
use tashkil::script::{
    dediacritize, externalize_wasla, from_hsb, normalize, to_hsb, DiacWord,
};
use tashkil::stats::{analyze_corpus, StatsAccumulator};
use tashkil::wellformed::Validator;

/// The 37 HSB letter symbols (36 letters plus Alif Wasla).
const HSB_LETTERS: &[char] = &[
    '\'', 'Ā', 'Â', 'ŵ', 'Ǎ', 'ŷ', 'A', 'b', 'ħ', 't', 'θ', 'j', 'H', 'x', 'd', 'ð', 'r', 'z',
    's', 'š', 'S', 'D', 'T', 'Ď', 'ς', 'γ', 'f', 'q', 'k', 'l', 'm', 'n', 'h', 'w', 'ý', 'y', 'Ä',
];
/// The nine HSB diacritic symbols.
const HSB_MARKS: &[char] = &['a', 'u', 'i', 'ã', 'ũ', 'ĩ', '~', '.', 'á'];

/// A word in HSB: 1..=8 letters, each carrying 0..=2 marks (possibly
/// duplicated or misordered, as wild text has them).
fn arb_hsb_word() -> impl Strategy<Value = String> {
    prop::collection::vec(
        (
            prop::sample::select(HSB_LETTERS),
            prop::collection::vec(prop::sample::select(HSB_MARKS), 0..=2),
        ),
        1..=8,
    )
    .prop_map(|segments| {
        let mut word = String::new();
        for (letter, marks) in segments {
            word.push(letter);
            word.extend(marks);
        }
        word
    })
}

fn arb_arabic_word() -> impl Strategy<Value = String> {
    arb_hsb_word().prop_map(|h| from_hsb(&h).unwrap())
}

/// HSB words mixed with pass-through tokens (punctuation, digits).
fn arb_hsb_text() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            4 => arb_hsb_word(),
            1 => prop::sample::select(&[",", "!", "?", ";", "12", "7"]).prop_map(str::to_string),
        ],
        1..=6,
    )
    .prop_map(|chunks| chunks.join(" "))
}

fn arb_corpus_line() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            5 => arb_arabic_word(),
            1 => prop::sample::select(&[",", ".", "42"]).prop_map(str::to_string),
        ],
        0..=6,
    )
    .prop_map(|tokens| tokens.join(" "))
}

proptest! {
    #[test]
    fn segmentation_is_lossless(s in "\\PC{0,24}") {
        prop_assert_eq!(DiacWord::segment(&s).serialize(), s);
    }

    #[test]
    fn segmentation_round_trips_arabic(w in arb_arabic_word()) {
        prop_assert_eq!(DiacWord::segment(&w).serialize(), w);
    }

    #[test]
    fn normalize_is_idempotent_and_letter_preserving(w in arb_arabic_word()) {
        let once = normalize(&w);
        prop_assert_eq!(normalize(&once), once.clone());
        prop_assert_eq!(dediacritize(&once), dediacritize(&w));
        prop_assert!(once.chars().count() <= w.chars().count());
    }

    #[test]
    fn wasla_externalization_is_idempotent(w in arb_arabic_word(), keep in any::<bool>()) {
        let once = externalize_wasla(&w, keep);
        prop_assert_eq!(externalize_wasla(&once, keep), once.clone());
        let wasla_left = once.contains('\u{0671}');
        prop_assert!(!wasla_left, "Wasla survived externalization");
    }

    #[test]
    fn hsb_text_round_trips(text in arb_hsb_text()) {
        let arabic = from_hsb(&text).unwrap();
        prop_assert_eq!(to_hsb(&arabic).unwrap(), text);
    }

    #[test]
    fn arabic_round_trips_through_hsb(w in arb_arabic_word()) {
        prop_assert_eq!(from_hsb(&to_hsb(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn edit_profile_total_is_symmetric_and_growth_antisymmetric(
        a in "[a-d]{0,8}",
        b in "[a-d]{0,8}",
    ) {
        let ab = edit_profile(&a, &b);
        let ba = edit_profile(&b, &a);
        prop_assert_eq!(ab.distance(), ba.distance());
        let growth_ab = ab.insertions as i64 - ab.deletions as i64;
        let growth_ba = ba.insertions as i64 - ba.deletions as i64;
        prop_assert_eq!(growth_ab, -growth_ba);
    }

    #[test]
    fn edit_profile_identity_growth_and_bounds(a in "[a-d]{0,8}", b in "[a-d]{0,8}") {
        prop_assert_eq!(edit_profile(&a, &a).distance(), 0);
        let profile = edit_profile(&a, &b);
        let (la, lb) = (a.chars().count() as i64, b.chars().count() as i64);
        prop_assert_eq!(profile.insertions as i64 - profile.deletions as i64, lb - la);
        prop_assert!(profile.distance() as i64 >= (lb - la).abs());
        prop_assert!(profile.distance() as i64 <= la.max(lb));
    }

    #[test]
    fn edit_profile_satisfies_triangle_inequality(
        a in "[a-c]{0,6}",
        b in "[a-c]{0,6}",
        c in "[a-c]{0,6}",
    ) {
        let direct = edit_profile(&a, &c).distance();
        let via = edit_profile(&a, &b).distance() + edit_profile(&b, &c).distance();
        prop_assert!(direct <= via);
    }

    #[test]
    fn bare_skeleton_costs_insertions_only(w in arb_arabic_word()) {
        let bare = dediacritize(&w);
        let profile = edit_profile(&bare, &w);
        prop_assert_eq!(profile.substitutions, 0);
        prop_assert_eq!(profile.deletions, 0);
        prop_assert_eq!(
            profile.insertions as usize,
            w.chars().count() - bare.chars().count()
        );
    }

    #[test]
    fn stats_shards_merge_to_the_whole(
        lines in prop::collection::vec(arb_corpus_line(), 0..=12),
        split in 0usize..=12,
    ) {
        let validator = Validator::new();
        let mut whole = StatsAccumulator::default();
        for line in &lines {
            whole.add_line(line, &validator);
        }

        let k = split.min(lines.len());
        let mut left = StatsAccumulator::default();
        for line in &lines[..k] {
            left.add_line(line, &validator);
        }
        let mut right = StatsAccumulator::default();
        for line in &lines[k..] {
            right.add_line(line, &validator);
        }

        let mut forward = left;
        forward.merge(&right);
        prop_assert_eq!(forward, whole);
        let mut backward = right;
        backward.merge(&left);
        prop_assert_eq!(backward, whole);
        prop_assert_eq!(analyze_corpus(lines.iter()), whole.finalize());
    }
}

/// Deletion/insertion ties in the backtrace resolve toward deletion in both
/// directions, so the decomposition is role-dependent even though the totals
/// agree.
#[test]
fn edit_profile_tie_decomposition_is_role_dependent() {
    let ab = edit_profile("acbd", "bdb");
    let ba = edit_profile("bdb", "acbd");
    assert_eq!(ab.distance(), 3);
    assert_eq!(ba.distance(), 3);
    assert_eq!((ab.insertions, ab.substitutions, ab.deletions), (0, 2, 1));
    assert_eq!((ba.insertions, ba.substitutions, ba.deletions), (2, 0, 1));
}

/// Row subsets of the fixture database, in arbitrary order, reach a stable
/// canonical form after one serialization.
#[test]
fn db_serialization_reaches_canonical_fixpoint() {
    let text = std::fs::read_to_string(
        std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/analyses.tsv"),
    )
    .unwrap();
    let header: Vec<&str> = text.lines().filter(|l| l.starts_with('#')).collect();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).collect();

    let mut runner = proptest::test_runner::TestRunner::default();
    let strategy = (
        prop::collection::vec(any::<bool>(), rows.len()),
        prop::collection::vec(any::<usize>(), 0..=16),
    );
    runner
        .run(&strategy, |(keep, swaps)| {
            let mut subset: Vec<&str> = rows
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&r, _)| r)
                .collect();
            if subset.is_empty() {
                subset.push(rows[0]);
            }
            for (i, s) in swaps.iter().enumerate() {
                let a = i % subset.len();
                let b = s % subset.len();
                subset.swap(a, b);
            }
            let scrambled = format!("{}\n{}\n", header.join("\n"), subset.join("\n"));

            let db = AnalysisDb::load(&scrambled).unwrap();
            let canonical = db.serialize();
            let reloaded = AnalysisDb::load(&canonical).unwrap();
            prop_assert_eq!(&reloaded, &db);
            prop_assert_eq!(reloaded.serialize(), canonical);
            Ok(())
        })
        .unwrap();
}
