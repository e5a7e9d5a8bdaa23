//! Corpus-level diacritic usage statistics.
//!
//! Counts accumulate per line into a value-like [`StatsAccumulator`];
//! accumulators from disjoint line sets merge associatively, and
//! [`StatsAccumulator::finalize`] derives the ratios, so a parallel
//! per-line map with a merge reduce reproduces a sequential scan exactly.
//!
//! Everything is counted on the raw text — the order ratios exist
//! precisely to measure how inconsistently clusters are written, so
//! normalizing first would erase the signal.

use serde::{Deserialize, Serialize};

use crate::pipeline::{tokenize_line, windows};
use crate::script::chars::{Diacritic, ALIF, ALIF_MAQSURA};
use crate::script::normalize::diacritic_profile;
use crate::script::word::DiacWord;
use crate::wellformed::Validator;

/// Raw integer counts over a set of lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StatsAccumulator {
    pub lines: u64,
    pub lines_with_diac: u64,
    /// Arabic words: tokens containing at least one Arabic letter.
    pub words: u64,
    pub words_with_diac: u64,
    pub diacritics: u64,
    /// Diacritized words passing well-formedness, i.e. maximally
    /// diacritized words.
    pub maximal_words: u64,
    /// Per-mark totals in Unicode order.
    pub diac_counts: [u64; 9],
    /// Word-final Fathatan written before its Alif / Alif Maqsura (`..ãA`).
    pub tanwiyn_before: u64,
    /// Word-final Fathatan written on the Alif / Alif Maqsura (`..Aã`).
    pub tanwiyn_after: u64,
    /// Shadda written before the vowel of its cluster.
    pub shadda_first: u64,
    /// Vowel written before the Shadda of its cluster.
    pub vowel_first: u64,
}

impl StatsAccumulator {
    pub fn add_line(&mut self, line: &str, validator: &Validator) {
        self.lines += 1;
        if diacritic_profile(line).total() > 0 {
            self.lines_with_diac += 1;
        }
        let tokens = tokenize_line(line, 1);
        for window in windows(&tokens) {
            let texts: Vec<&str> = window.iter().map(|t| t.text.as_str()).collect();
            let verdicts = validator.check_context(&texts);
            for (token, verdict) in window.iter().zip(&verdicts) {
                if !verdict.applicable {
                    continue;
                }
                self.words += 1;
                let profile = diacritic_profile(&token.text);
                if profile.total() > 0 {
                    self.words_with_diac += 1;
                    self.diacritics += u64::from(profile.total());
                    for (slot, &n) in self.diac_counts.iter_mut().zip(&profile.counts) {
                        *slot += u64::from(n);
                    }
                    if verdict.ok {
                        self.maximal_words += 1;
                    }
                }
                self.count_order_sites(&token.text);
            }
        }
    }

    /// Tally the two written-order choices: Shadda relative to the vowel
    /// sharing its cluster, and a word-final Fathatan relative to the Alif
    /// (or Alif Maqsura) it rides with.
    fn count_order_sites(&mut self, word: &str) {
        let w = DiacWord::segment(word);
        for (_, cluster) in &w.segments {
            let shadda = cluster.marks.iter().position(|&m| m == Diacritic::Shadda);
            let vowel = cluster.marks.iter().position(|m| m.is_vowel());
            if let (Some(s), Some(v)) = (shadda, vowel) {
                if s < v {
                    self.shadda_first += 1;
                } else {
                    self.vowel_first += 1;
                }
            }
        }
        let n = w.segments.len();
        if n >= 2 && matches!(w.segments[n - 1].0, ALIF | ALIF_MAQSURA) {
            let last = &w.segments[n - 1].1;
            if last.contains(Diacritic::Fathatan) {
                self.tanwiyn_after += 1;
            } else if last.is_empty() && w.segments[n - 2].1.contains(Diacritic::Fathatan) {
                self.tanwiyn_before += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &StatsAccumulator) {
        self.lines += other.lines;
        self.lines_with_diac += other.lines_with_diac;
        self.words += other.words;
        self.words_with_diac += other.words_with_diac;
        self.diacritics += other.diacritics;
        self.maximal_words += other.maximal_words;
        for (slot, &n) in self.diac_counts.iter_mut().zip(&other.diac_counts) {
            *slot += n;
        }
        self.tanwiyn_before += other.tanwiyn_before;
        self.tanwiyn_after += other.tanwiyn_after;
        self.shadda_first += other.shadda_first;
        self.vowel_first += other.vowel_first;
    }

    pub fn finalize(&self) -> CorpusStats {
        let pct = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                100.0 * num as f64 / den as f64
            }
        };
        let mut diac_distribution = [0.0; 9];
        if self.diacritics > 0 {
            for (slot, &n) in diac_distribution.iter_mut().zip(&self.diac_counts) {
                *slot = n as f64 / self.diacritics as f64;
            }
        }
        let tanwiyn_sites = self.tanwiyn_before + self.tanwiyn_after;
        let shadda_sites = self.shadda_first + self.vowel_first;
        CorpusStats {
            line_count: self.lines,
            word_count: self.words,
            pct_lines_with_diac: pct(self.lines_with_diac, self.lines),
            pct_words_with_diac: pct(self.words_with_diac, self.words),
            diacs_per_diac_word: if self.words_with_diac == 0 {
                0.0
            } else {
                self.diacritics as f64 / self.words_with_diac as f64
            },
            pct_maximal_words: pct(self.maximal_words, self.words),
            diac_distribution,
            pct_wellformed_of_diac_words: pct(self.maximal_words, self.words_with_diac),
            tanwiyn_alif_order: TanwiynAlifOrder {
                before: pct(self.tanwiyn_before, tanwiyn_sites),
                after: pct(self.tanwiyn_after, tanwiyn_sites),
            },
            shadda_vowel_order: ShaddaVowelOrder {
                shadda_first: pct(self.shadda_first, shadda_sites),
                vowel_first: pct(self.vowel_first, shadda_sites),
            },
            empty: self.diacritics == 0,
        }
    }
}

/// Split of word-final Fathatan spellings, in percent of such sites.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TanwiynAlifOrder {
    pub before: f64,
    pub after: f64,
}

/// Split of Shadda-vowel written order, in percent of shared clusters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ShaddaVowelOrder {
    pub shadda_first: f64,
    pub vowel_first: f64,
}

/// Finalized per-corpus quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub line_count: u64,
    /// Arabic words only.
    pub word_count: u64,
    pub pct_lines_with_diac: f64,
    pub pct_words_with_diac: f64,
    pub diacs_per_diac_word: f64,
    /// Maximally diacritized words over all Arabic words.
    pub pct_maximal_words: f64,
    /// Relative frequencies of the nine marks in Unicode order; sums to 1
    /// unless the corpus carries no diacritics at all (then all-zero and
    /// `empty` is set).
    pub diac_distribution: [f64; 9],
    /// Same numerator as `pct_maximal_words`, over diacritized words only.
    pub pct_wellformed_of_diac_words: f64,
    pub tanwiyn_alif_order: TanwiynAlifOrder,
    pub shadda_vowel_order: ShaddaVowelOrder,
    /// No diacritic anywhere in the corpus.
    pub empty: bool,
}

pub fn analyze_corpus<I, S>(lines: I) -> CorpusStats
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let validator = Validator::new();
    let mut acc = StatsAccumulator::default();
    for line in lines {
        acc.add_line(line.as_ref(), &validator);
    }
    acc.finalize()
}

/// Pearson correlation of two mark distributions; `None` when either side
/// has zero variance.
pub fn correlate(a: &[f64; 9], b: &[f64; 9]) -> Option<f64> {
    let mean = |v: &[f64; 9]| v.iter().sum::<f64>() / 9.0;
    let (ma, mb) = (mean(a), mean(b));
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        var_a += (x - ma) * (x - ma);
        var_b += (y - mb) * (y - mb);
    }
    if var_a == 0.0 || var_b == 0.0 {
        None
    } else {
        Some(cov / (var_a * var_b).sqrt())
    }
}
