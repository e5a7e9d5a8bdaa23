//! Well-formedness checking for maximally diacritized words.
//!
//! A word passes when it decomposes as: optional starting patterns
//! (conjunction, preposition, definite article or other Alif Wasla), one or
//! more middle units (a clustered letter or a licensed elongation letter),
//! and an optional ending pattern (Tanwiyn cluster or the silent Alif of a
//! plural Waw). On top of the grammar sit sequence rules (no double Sukun,
//! no Sukun before Shadda except context-finally) and the two cross-word
//! context rules around Alif Wasla.
//!
//! Checking runs on the raw (pre-normalization) word so that mark-order
//! errors stay observable; the grammar itself is matched against the
//! normalized form.

use std::collections::HashSet;

use crate::script::chars::{
    is_arabic_letter, is_sun_letter, is_weak_letter, Diacritic, ALIF, ALIF_HAMZA, ALIF_MADDA,
    ALIF_MAQSURA, ALIF_WASLA, HAMZA, LAM, TEH_MARBUTA, WAW, YEH,
};
use crate::script::normalize::{diacritic_profile, normalize};
use crate::script::word::DiacWord;

const DEFAULT_EXCEPTIONS: &str = include_str!("../data/exceptions.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationCode {
    /// Shadda written after the vowel of its cluster.
    ShaddaOrder,
    /// Word-final Fathatan written on the Alif instead of before it.
    TanwiynOrder,
    /// A cluster with no canonical view, or one impossible on its seat.
    IncompatibleCluster,
    /// Diacritics before the first letter of the word.
    WordInitialDiacritic,
    /// A bare elongation letter in a position that licenses none.
    BareLetterNotAllowed,
    /// A consonant with no cluster, or with an incomplete one.
    MissingClusterOnLetter,
    /// A broken starting pattern (article or prefix shape).
    InvalidStartPattern,
    /// A Tanwiyn cluster outside a valid word ending.
    InvalidEndingPattern,
    /// Two consecutive Sukun letters away from the context end.
    DoubleSukun,
    /// A Sukun letter followed by a Shadda letter away from the context end.
    SukunBeforeShadda,
    /// A word ending in Sukun directly before a Wasla-initial word.
    ContextFinalSukunBeforeWasla,
    /// A context-initial Alif Wasla missing its short vowel.
    WaslaMissingInitialVowel,
    /// No grammar pattern and no exception entry applies.
    UnknownException,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    /// Letter index the violation anchors to, when one is identifiable.
    pub letter: Option<usize>,
}

impl Violation {
    fn at(code: ViolationCode, letter: usize) -> Violation {
        Violation { code, letter: Some(letter) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordVerdict {
    pub ok: bool,
    /// False for tokens without a single Arabic letter; such tokens are
    /// excluded from corpus-level percentages.
    pub applicable: bool,
    pub violations: Vec<Violation>,
}

impl WordVerdict {
    fn not_applicable() -> WordVerdict {
        WordVerdict { ok: true, applicable: false, violations: Vec::new() }
    }

    pub fn codes(&self) -> Vec<ViolationCode> {
        let mut codes: Vec<ViolationCode> = self.violations.iter().map(|v| v.code).collect();
        codes.sort();
        codes.dedup();
        codes
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ContextFlags {
    pub at_context_start: bool,
    pub at_context_end: bool,
}

impl ContextFlags {
    pub fn standalone() -> ContextFlags {
        ContextFlags { at_context_start: true, at_context_end: true }
    }
}

/// One letter with the canonical view of its cluster.
#[derive(Debug, Clone, Copy)]
struct Unit {
    ch: char,
    shadda: bool,
    vowel: Option<Diacritic>,
    dagger: bool,
}

impl Unit {
    fn bare(&self) -> bool {
        !self.shadda && self.vowel.is_none() && !self.dagger
    }

    fn short_vowel(&self) -> Option<Diacritic> {
        self.vowel.filter(|v| v.is_short_vowel())
    }
}

pub struct Validator {
    exceptions: HashSet<String>,
}

impl Default for Validator {
    fn default() -> Validator {
        Validator::new()
    }
}

impl Validator {
    /// Validator with the default exception lexicon.
    pub fn new() -> Validator {
        let exceptions = DEFAULT_EXCEPTIONS
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| l.split('\t').next().unwrap_or(l).trim().to_string())
            .collect();
        Validator { exceptions }
    }

    /// Validator with a custom exception word list (exact surface matches).
    pub fn with_exceptions<I: IntoIterator<Item = String>>(exceptions: I) -> Validator {
        Validator { exceptions: exceptions.into_iter().collect() }
    }

    pub fn check_word(&self, word: &str, flags: ContextFlags) -> WordVerdict {
        let raw = DiacWord::segment(word);
        if !raw.letters().any(is_arabic_letter) {
            return WordVerdict::not_applicable();
        }
        if self.exceptions.contains(word) {
            return WordVerdict { ok: true, applicable: true, violations: Vec::new() };
        }
        if !raw.initial.is_empty() {
            return WordVerdict {
                ok: false,
                applicable: true,
                violations: vec![Violation { code: ViolationCode::WordInitialDiacritic, letter: None }],
            };
        }

        let mut violations = order_violations(&raw);

        // the grammar runs on the normalized form; order errors were
        // captured above and clear under normalization
        let norm = DiacWord::segment(&normalize(word));
        let mut units = Vec::with_capacity(norm.segments.len());
        let mut incompatible = false;
        for (i, (ch, cluster)) in norm.segments.iter().enumerate() {
            match cluster.canonical() {
                Some(c) => units.push(Unit { ch: *ch, shadda: c.shadda, vowel: c.vowel, dagger: c.dagger }),
                None => {
                    violations.push(Violation::at(ViolationCode::IncompatibleCluster, i));
                    incompatible = true;
                }
            }
        }
        if incompatible {
            return WordVerdict { ok: false, applicable: true, violations };
        }

        violations.extend(sequence_violations(&units, flags));
        let parses = parse_word(&units, flags);
        if !parses {
            diagnose(&units, flags, &mut violations);
            if violations.is_empty() {
                violations.push(Violation { code: ViolationCode::UnknownException, letter: None });
            }
        }
        WordVerdict { ok: violations.is_empty(), applicable: true, violations }
    }

    /// Check a context window (the words between two delimiters), applying
    /// the cross-word Wasla rules on top of per-word checks.
    pub fn check_context<S: AsRef<str>>(&self, words: &[S]) -> Vec<WordVerdict> {
        let n = words.len();
        let mut verdicts: Vec<WordVerdict> = words
            .iter()
            .enumerate()
            .map(|(i, w)| {
                self.check_word(
                    w.as_ref(),
                    ContextFlags { at_context_start: i == 0, at_context_end: i + 1 == n },
                )
            })
            .collect();
        for i in 0..n.saturating_sub(1) {
            if !verdicts[i].applicable || !verdicts[i + 1].applicable {
                continue;
            }
            if starts_with_wasla(words[i + 1].as_ref())
                && !ends_with_vowel_representation(words[i].as_ref())
            {
                verdicts[i].violations.push(Violation {
                    code: ViolationCode::ContextFinalSukunBeforeWasla,
                    letter: None,
                });
                verdicts[i].ok = false;
            }
        }
        verdicts
    }

    /// True when the word passes `check_word` and actually carries
    /// diacritics (a parseable but mark-free token does not count).
    pub fn is_maximally_diacritized(&self, word: &str, flags: ContextFlags) -> bool {
        let v = self.check_word(word, flags);
        v.applicable && v.ok && diacritic_profile(word).total() > 0
    }
}

/// Any word-initial unhamzated Alif is an Alif Wasla.
pub fn starts_with_wasla(word: &str) -> bool {
    word.chars()
        .find(|c| Diacritic::from_char(*c).is_none())
        .is_some_and(|c| matches!(c, ALIF | ALIF_WASLA))
}

/// A word "ends with a vowel representation" when, after skipping trailing
/// silent Alifs, its last letter carries a vowel mark (short, Tanwiyn, or
/// Dagger Alif) or closes a long vowel.
pub fn ends_with_vowel_representation(word: &str) -> bool {
    let w = DiacWord::segment(word);
    if w.segments.is_empty() {
        return false;
    }
    let mut idx = w.segments.len() - 1;
    while idx > 0
        && matches!(w.segments[idx].0, ALIF | ALIF_MAQSURA)
        && w.segments[idx].1.is_empty()
    {
        idx -= 1;
    }
    let (ch, cluster) = &w.segments[idx];
    let Some(canon) = cluster.canonical() else { return false };
    match canon.vowel {
        Some(v) if v.is_vowel() => true,
        Some(_) => false, // Sukun
        None => {
            if canon.dagger {
                return true;
            }
            if !cluster.is_empty() {
                return false;
            }
            idx > 0
                && match *ch {
                    WAW => w.segments[idx - 1].1.vowel() == Some(Diacritic::Damma),
                    YEH => w.segments[idx - 1].1.vowel() == Some(Diacritic::Kasra),
                    _ => false,
                }
        }
    }
}

fn order_violations(raw: &DiacWord) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, (_, cluster)) in raw.segments.iter().enumerate() {
        let shadda_pos = cluster.marks.iter().position(|m| *m == Diacritic::Shadda);
        if let Some(p) = shadda_pos {
            if cluster.marks[..p].iter().any(|m| m.is_vowel_slot()) {
                out.push(Violation::at(ViolationCode::ShaddaOrder, i));
            }
        }
    }
    let n = raw.segments.len();
    if n >= 2 {
        let (ch, cluster) = &raw.segments[n - 1];
        if matches!(*ch, ALIF | ALIF_MAQSURA) && cluster.contains(Diacritic::Fathatan) {
            out.push(Violation::at(ViolationCode::TanwiynOrder, n - 1));
        }
    }
    out
}

fn sequence_violations(units: &[Unit], flags: ContextFlags) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 1..units.len() {
        if units[i - 1].vowel != Some(Diacritic::Sukun) {
            continue;
        }
        let relaxed = flags.at_context_end && i + 1 == units.len();
        if units[i].shadda && !relaxed {
            out.push(Violation::at(ViolationCode::SukunBeforeShadda, i));
        } else if units[i].vowel == Some(Diacritic::Sukun) && !relaxed {
            out.push(Violation::at(ViolationCode::DoubleSukun, i));
        }
    }
    out
}

/// Positions reachable by consuming the optional starting patterns, in the
/// fixed order conjunction < preposition < article/Wasla.
fn start_positions(units: &[Unit], flags: ContextFlags) -> Vec<usize> {
    let mut bases = vec![0usize];
    if let Some(u) = units.first() {
        if matches!(u.ch, WAW | '\u{0641}') && is_exactly(u, Diacritic::Fatha) {
            bases.push(1); // wa / fa
        }
    }
    let mut with_prep = bases.clone();
    for &b in &bases {
        if let Some(u) = units.get(b) {
            let vowel = match u.ch {
                '\u{0628}' => Some(Diacritic::Kasra), // bi
                '\u{0643}' => Some(Diacritic::Fatha), // ka
                LAM => Some(Diacritic::Kasra),        // li
                _ => None,
            };
            if vowel.is_some_and(|v| is_exactly(u, v)) {
                with_prep.push(b + 1);
            }
        }
    }
    let mut out = with_prep.clone();
    for &b in &with_prep {
        let Some(u) = units.get(b) else { continue };
        if !matches!(u.ch, ALIF | ALIF_WASLA) || !wasla_cluster_ok(u, b == 0, flags) {
            continue;
        }
        out.push(b + 1); // generic Wasla
        if let Some(l) = units.get(b + 1) {
            if l.ch == LAM {
                if is_exactly(l, Diacritic::Sukun) {
                    out.push(b + 2); // article before a moon letter
                }
                if l.bare()
                    && units
                        .get(b + 2)
                        .is_some_and(|next| next.shadda && is_sun_letter(next.ch))
                {
                    out.push(b + 2); // article assimilated into a sun letter
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn is_exactly(u: &Unit, vowel: Diacritic) -> bool {
    !u.shadda && !u.dagger && u.vowel == Some(vowel)
}

fn wasla_cluster_ok(u: &Unit, word_initial: bool, flags: ContextFlags) -> bool {
    if word_initial && flags.at_context_start {
        !u.shadda && !u.dagger && u.short_vowel().is_some()
    } else {
        u.bare()
    }
}

fn parse_word(units: &[Unit], flags: ContextFlags) -> bool {
    start_positions(units, flags)
        .into_iter()
        .any(|s| parse_rest(units, s, false))
}

fn parse_rest(units: &[Unit], i: usize, have_middle: bool) -> bool {
    let n = units.len();
    if i == n {
        return have_middle;
    }
    let u = &units[i];

    if have_middle && ending_consumes_all(units, i) {
        return true;
    }

    // middle unit: a clustered letter
    if is_arabic_letter(u.ch) && !matches!(u.ch, ALIF | ALIF_WASLA | ALIF_MAQSURA | ALIF_MADDA) {
        let m1 = match u.vowel {
            Some(Diacritic::Sukun) => !u.shadda && !u.dagger,
            Some(v) if v.is_short_vowel() => !u.dagger || v == Diacritic::Fatha,
            _ => false,
        };
        if m1 && parse_rest(units, i + 1, true) {
            return true;
        }
    }

    // middle unit: elongation letters (aA / uw / iy, final aý, bare Madda)
    let prev_vowel = i.checked_sub(1).and_then(|p| units[p].short_vowel());
    let prev_dagger = i > 0 && units[i - 1].dagger;
    let elongation = match u.ch {
        ALIF_MADDA => u.bare(),
        ALIF => u.bare() && prev_vowel == Some(Diacritic::Fatha) && !prev_dagger,
        WAW => u.bare() && prev_vowel == Some(Diacritic::Damma),
        YEH => u.bare() && prev_vowel == Some(Diacritic::Kasra),
        ALIF_MAQSURA => {
            i + 1 == n
                && prev_vowel == Some(Diacritic::Fatha)
                && !prev_dagger
                && (u.bare() || (u.dagger && !u.shadda && u.vowel.is_none()))
        }
        _ => false,
    };
    if elongation && parse_rest(units, i + 1, true) {
        return true;
    }
    false
}

/// Ending patterns, which must consume the rest of the word: a Tanwiyn
/// cluster (with its silent Alif where one is due) or a plural Waw with its
/// silent Alif.
fn ending_consumes_all(units: &[Unit], i: usize) -> bool {
    let n = units.len();
    let u = &units[i];

    if !matches!(u.ch, ALIF | ALIF_WASLA | ALIF_MAQSURA | ALIF_MADDA) && !u.dagger {
        match u.vowel {
            Some(Diacritic::Dammatan) | Some(Diacritic::Kasratan) if i + 1 == n => return true,
            Some(Diacritic::Fathatan) => {
                let alifless_seat = matches!(u.ch, ALIF_HAMZA | TEH_MARBUTA)
                    || (u.ch == HAMZA
                        && i >= 1
                        && units[i - 1].ch == ALIF
                        && units[i - 1].bare());
                if i + 1 == n && alifless_seat {
                    return true;
                }
                if i + 2 == n
                    && !alifless_seat
                    && matches!(units[n - 1].ch, ALIF | ALIF_MAQSURA)
                    && units[n - 1].bare()
                {
                    return true;
                }
            }
            _ => {}
        }
    }

    if u.ch == WAW && i + 2 == n && units[n - 1].ch == ALIF && units[n - 1].bare() {
        let prev_damma = i >= 1 && units[i - 1].short_vowel() == Some(Diacritic::Damma);
        if u.bare() && prev_damma {
            return true; // -uwA
        }
        if is_exactly(u, Diacritic::Sukun) {
            return true; // -w.A
        }
    }
    false
}

/// Best-effort per-letter attribution once the grammar has failed.
fn diagnose(units: &[Unit], flags: ContextFlags, out: &mut Vec<Violation>) {
    use ViolationCode::*;
    let n = units.len();
    let before = out.len();
    for i in 0..n {
        let u = &units[i];
        if i == 0 && matches!(u.ch, ALIF | ALIF_WASLA) {
            if flags.at_context_start {
                if u.short_vowel().is_none() {
                    out.push(Violation::at(WaslaMissingInitialVowel, 0));
                } else if u.shadda || u.dagger {
                    out.push(Violation::at(InvalidStartPattern, 0));
                }
            } else if !u.bare() {
                out.push(Violation::at(InvalidStartPattern, 0));
            }
            continue;
        }
        match u.ch {
            ALIF | ALIF_WASLA => {
                let prev = &units[i - 1];
                let licensed = u.bare()
                    && (prev.short_vowel() == Some(Diacritic::Fatha) && !prev.dagger
                        || (prev.vowel == Some(Diacritic::Fathatan) && i + 1 == n)
                        || (prev.ch == WAW
                            && i + 1 == n
                            && (prev.bare() || prev.vowel == Some(Diacritic::Sukun)))
                        || after_prefix(units, i));
                if !licensed {
                    let code = if u.bare() { BareLetterNotAllowed } else { IncompatibleCluster };
                    out.push(Violation::at(code, i));
                }
            }
            ALIF_MAQSURA => {
                let prev_fatha =
                    i > 0 && units[i - 1].short_vowel() == Some(Diacritic::Fatha);
                let prev_tanwiyn = i > 0 && units[i - 1].vowel == Some(Diacritic::Fathatan);
                let dagger_only = u.dagger && !u.shadda && u.vowel.is_none();
                let fine = i + 1 == n
                    && ((u.bare() && (prev_fatha || prev_tanwiyn))
                        || (dagger_only && prev_fatha));
                if !fine {
                    let code = if u.bare() { BareLetterNotAllowed } else { IncompatibleCluster };
                    out.push(Violation::at(code, i));
                }
            }
            ALIF_MADDA => {
                if !u.bare() {
                    out.push(Violation::at(IncompatibleCluster, i));
                }
            }
            ch if !is_arabic_letter(ch) => {}
            _ => {
                if u.bare() {
                    let long = (u.ch == WAW
                        && i > 0
                        && units[i - 1].short_vowel() == Some(Diacritic::Damma))
                        || (u.ch == YEH
                            && i > 0
                            && units[i - 1].short_vowel() == Some(Diacritic::Kasra));
                    let after_article_alif =
                        u.ch == LAM && i >= 1 && matches!(units[i - 1].ch, ALIF | ALIF_WASLA);
                    let sun_article = after_article_alif
                        && units.get(i + 1).is_some_and(|next| next.shadda);
                    if long || sun_article {
                        continue;
                    }
                    if after_article_alif {
                        // a moon article missing the Sukun on its Lam
                        out.push(Violation::at(InvalidStartPattern, i));
                    } else if is_weak_letter(u.ch) {
                        out.push(Violation::at(BareLetterNotAllowed, i));
                    } else {
                        out.push(Violation::at(MissingClusterOnLetter, i));
                    }
                } else {
                    match u.vowel {
                        Some(v) if v.is_tanwiyn() => {
                            if !(ending_consumes_all(units, i) && valid_tanwiyn_position(units, i)) {
                                out.push(Violation::at(InvalidEndingPattern, i));
                            }
                        }
                        Some(Diacritic::Sukun) => {
                            if u.shadda || u.dagger {
                                out.push(Violation::at(IncompatibleCluster, i));
                            }
                        }
                        Some(_) => {}
                        // Shadda or Dagger Alif without their vowel
                        None => out.push(Violation::at(MissingClusterOnLetter, i)),
                    }
                }
            }
        }
    }
    let _ = before;
}

fn valid_tanwiyn_position(units: &[Unit], i: usize) -> bool {
    // a Tanwiyn is final by nature; `ending_consumes_all` already checked
    // the shape, this guards against a Tanwiyn deep inside the word
    i + 2 >= units.len()
}

/// True when position `i` sits right after a conjunction/preposition prefix
/// run, which licenses a bare article Alif there.
fn after_prefix(units: &[Unit], i: usize) -> bool {
    if i == 0 || i > 2 {
        return false;
    }
    let conj = |u: &Unit| matches!(u.ch, WAW | '\u{0641}') && is_exactly(u, Diacritic::Fatha);
    let prep = |u: &Unit| {
        (u.ch == '\u{0628}' && is_exactly(u, Diacritic::Kasra))
            || (u.ch == '\u{0643}' && is_exactly(u, Diacritic::Fatha))
            || (u.ch == LAM && is_exactly(u, Diacritic::Kasra))
    };
    match i {
        1 => conj(&units[0]) || prep(&units[0]),
        2 => conj(&units[0]) && prep(&units[1]),
        _ => false,
    }
}
