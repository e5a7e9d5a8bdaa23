//! Contextual post-edits: the rule cascade that turns ranked internal forms
//! (Wasla-marked, flag-carrying) into final surface words.
//!
//! Two kinds of rewrite exist. Boundary epenthesis gives a word that ends in
//! Sukun (written or implicit on a bare final consonant) a short vowel when
//! the next word starts with Alif Wasla; the allomorph flag picks the vowel
//! (`%m` → Damma, `%n` → Fatha before the definite article and Kasra
//! otherwise, unflagged → Kasra). Wasla externalization rewrites U+0671 to a
//! plain Alif, keeping its short vowel only at context start.
//!
//! The cascade is data-driven: rules load from a TSV (`id`, `&`-joined
//! trigger conditions, rewrite), applied in file order, at most one
//! epenthesis and one Wasla rule per word. The defaults ship embedded; pass
//! a custom file to extend the inventory.

use std::collections::HashSet;

use crate::db::split_flag;
use crate::script::chars::{Diacritic, ALIF, ALIF_MADDA, ALIF_MAQSURA, ALIF_WASLA, LAM, WAW, YEH};
use crate::script::word::{externalize_wasla, DiacWord};
use crate::wellformed::starts_with_wasla;
use crate::{Error, Result};

const DEFAULT_RULES: &str = include_str!("../data/context_rules.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContextMode {
    /// No context modeling: flags stripped, every Wasla treated as
    /// mid-context, no boundary edits.
    None,
    /// Each word is its own utterance: Wasla keeps its vowel, no boundary
    /// edits.
    Solo,
    /// Real context: position decides the Wasla vowel and boundary
    /// epenthesis applies.
    #[default]
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum FlagCond {
    Unflagged,
    Is(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NextCond {
    Wasla,
    WaslaArticle,
}

#[derive(Debug, Clone, Default)]
struct Trigger {
    flag: Option<FlagCond>,
    ends_sukun: bool,
    next: Option<NextCond>,
    initial_wasla: bool,
    context_start: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rewrite {
    Epenthesis(Diacritic),
    WaslaKeepVowel,
    WaslaDropVowel,
}

#[derive(Debug, Clone)]
pub struct EditRule {
    pub id: String,
    trigger: Trigger,
    rewrite: Rewrite,
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<EditRule>,
}

impl Default for RuleSet {
    fn default() -> RuleSet {
        RuleSet::parse(DEFAULT_RULES).expect("embedded rule table parses")
    }
}

impl RuleSet {
    pub fn parse(text: &str) -> Result<RuleSet> {
        let mut rules = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [id, trigger, rewrite] = fields[..] else {
                return Err(Error::Load {
                    line: lineno,
                    msg: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            };
            rules.push(EditRule {
                id: id.to_string(),
                trigger: parse_trigger(trigger, lineno)?,
                rewrite: parse_rewrite(rewrite, lineno)?,
            });
        }
        Ok(RuleSet { rules })
    }

    pub fn rule_ids(&self) -> impl Iterator<Item = &str> {
        self.rules.iter().map(|r| r.id.as_str())
    }

    /// Flags any rule names; words carrying other flags are data errors.
    fn known_flags(&self) -> HashSet<&str> {
        self.rules
            .iter()
            .filter_map(|r| match &r.trigger.flag {
                Some(FlagCond::Is(f)) => Some(f.as_str()),
                _ => None,
            })
            .collect()
    }

    fn epenthesis_vowel(&self, flag: Option<&str>, body: &str, next_body: &str) -> Option<Diacritic> {
        self.rules.iter().find_map(|r| {
            let Rewrite::Epenthesis(vowel) = r.rewrite else { return None };
            let t = &r.trigger;
            let flag_ok = match &t.flag {
                None => true,
                Some(FlagCond::Unflagged) => flag.is_none(),
                Some(FlagCond::Is(f)) => flag == Some(f.as_str()),
            };
            let next_ok = match t.next {
                None => true,
                Some(NextCond::Wasla) => starts_with_wasla(next_body),
                Some(NextCond::WaslaArticle) => starts_definite_article(next_body),
            };
            let ends_ok = !t.ends_sukun || epenthesis_site(body).is_some();
            (flag_ok && next_ok && ends_ok && !t.initial_wasla && !t.context_start)
                .then_some(vowel)
        })
    }

    fn wasla_keeps_vowel(&self, body: &str, context_start: bool) -> bool {
        self.rules
            .iter()
            .find_map(|r| {
                let keep = match r.rewrite {
                    Rewrite::WaslaKeepVowel => true,
                    Rewrite::WaslaDropVowel => false,
                    Rewrite::Epenthesis(_) => return None,
                };
                let t = &r.trigger;
                let initial_ok = !t.initial_wasla || starts_with_wasla(body);
                let position_ok = !t.context_start || context_start;
                (initial_ok && position_ok && t.flag.is_none() && t.next.is_none() && !t.ends_sukun)
                    .then_some(keep)
            })
            .unwrap_or(false)
    }
}

fn parse_trigger(text: &str, lineno: usize) -> Result<Trigger> {
    let mut t = Trigger::default();
    for cond in text.split('&') {
        let err = |msg: String| Error::Load { line: lineno, msg };
        let (key, value) = cond
            .split_once('=')
            .ok_or_else(|| err(format!("condition `{cond}` is not key=value")))?;
        match (key, value) {
            ("flag", "none") => t.flag = Some(FlagCond::Unflagged),
            ("flag", f) => t.flag = Some(FlagCond::Is(f.to_string())),
            ("ends", "sukun") => t.ends_sukun = true,
            ("next", "wasla") => t.next = Some(NextCond::Wasla),
            ("next", "wasla_article") => t.next = Some(NextCond::WaslaArticle),
            ("initial", "wasla") => t.initial_wasla = true,
            ("pos", "context_start") => t.context_start = true,
            _ => return Err(err(format!("unknown condition `{cond}`"))),
        }
    }
    Ok(t)
}

fn parse_rewrite(text: &str, lineno: usize) -> Result<Rewrite> {
    match text {
        "final_sukun->fatha" => Ok(Rewrite::Epenthesis(Diacritic::Fatha)),
        "final_sukun->damma" => Ok(Rewrite::Epenthesis(Diacritic::Damma)),
        "final_sukun->kasra" => Ok(Rewrite::Epenthesis(Diacritic::Kasra)),
        "wasla->alif_keep_vowel" => Ok(Rewrite::WaslaKeepVowel),
        "wasla->alif_drop_vowel" => Ok(Rewrite::WaslaDropVowel),
        other => Err(Error::Load { line: lineno, msg: format!("unknown rewrite `{other}`") }),
    }
}

/// Where an epenthetic vowel would land: `Some(true)` replaces a written
/// final Sukun, `Some(false)` marks a bare final consonant (implicit
/// Sukun). `None` when the word already ends in a vowel representation or
/// in a letter that cannot take one (silent Alif, long-vowel Waw/Yeh).
fn epenthesis_site(body: &str) -> Option<bool> {
    let w = DiacWord::segment(body);
    let (ch, cluster) = w.segments.last()?;
    if matches!(*ch, ALIF | ALIF_WASLA | ALIF_MADDA | ALIF_MAQSURA) {
        return None;
    }
    let canon = cluster.canonical()?;
    if canon.dagger {
        return None;
    }
    match canon.vowel {
        Some(Diacritic::Sukun) => Some(true),
        Some(_) => None,
        None if cluster.is_empty() => {
            let prev = (w.segments.len() >= 2)
                .then(|| w.segments[w.segments.len() - 2].1.vowel())
                .flatten();
            let long_vowel = (*ch == WAW && prev == Some(Diacritic::Damma))
                || (*ch == YEH && prev == Some(Diacritic::Kasra));
            (!long_vowel).then_some(false)
        }
        None => None, // Shadda alone: ill-formed, leave it to the validator
    }
}

fn apply_epenthesis(body: &str, vowel: Diacritic) -> String {
    let mut w = DiacWord::segment(body);
    let Some(site) = epenthesis_site(body) else { return body.to_string() };
    let cluster = &mut w.segments.last_mut().expect("site implies a letter").1;
    if site {
        for mark in cluster.marks.iter_mut() {
            if *mark == Diacritic::Sukun {
                *mark = vowel;
            }
        }
    } else {
        cluster.marks.push(vowel);
    }
    w.serialize()
}

/// The word opens with the definite article: Alif (Wasla) whose vowel is
/// Fatha or unwritten, followed by Lam.
fn starts_definite_article(body: &str) -> bool {
    let w = DiacWord::segment(body);
    let mut segments = w.segments.iter();
    let Some((first, cluster)) = segments.next() else { return false };
    if !matches!(*first, ALIF | ALIF_WASLA) {
        return false;
    }
    let vowel_ok = matches!(cluster.vowel(), None | Some(Diacritic::Fatha));
    vowel_ok && segments.next().is_some_and(|(ch, _)| *ch == LAM)
}

/// Apply the cascade over one context window of internal forms. Outputs are
/// final surface words: no flags, no U+0671.
pub fn apply_context_edits(words: &[String], mode: ContextMode, rules: &RuleSet) -> Result<Vec<String>> {
    let known = rules.known_flags();
    for word in words {
        if let (_, Some(flag)) = split_flag(word) {
            if !known.contains(flag) {
                return Err(Error::UnknownFlag {
                    flag: flag.to_string(),
                    word: word.clone(),
                });
            }
        }
    }

    let mut bodies: Vec<String> =
        words.iter().map(|w| split_flag(w).0.to_string()).collect();

    // boundary epenthesis first, judged against the neighbor's
    // pre-externalization form (its Wasla still marked)
    if mode == ContextMode::Full && words.len() > 1 {
        for i in 0..words.len() - 1 {
            let (_, flag) = split_flag(&words[i]);
            let next_body = split_flag(&words[i + 1]).0;
            if let Some(vowel) = rules.epenthesis_vowel(flag, &bodies[i], next_body) {
                bodies[i] = apply_epenthesis(&bodies[i], vowel);
            }
        }
    }

    Ok(bodies
        .iter()
        .enumerate()
        .map(|(i, body)| {
            let context_start = match mode {
                ContextMode::None => false,
                ContextMode::Solo => true,
                ContextMode::Full => i == 0,
            };
            externalize_wasla(body, rules.wasla_keeps_vowel(body, context_start))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::hsb::{from_hsb, to_hsb};

    fn apply(words: &[&str], mode: ContextMode) -> Result<Vec<String>> {
        let words: Vec<String> = words
            .iter()
            .map(|w| {
                let (body, flag) = split_flag(w);
                let mut word = from_hsb(body).unwrap();
                if let Some(f) = flag {
                    word.push('%');
                    word.push_str(f);
                }
                word
            })
            .collect();
        apply_context_edits(&words, mode, &RuleSet::default())
    }

    fn apply_hsb(words: &[&str], mode: ContextMode) -> Vec<String> {
        apply(words, mode)
            .unwrap()
            .iter()
            .map(|w| to_hsb(w).unwrap())
            .collect()
    }

    #[test]
    fn epenthesis_follows_flags() {
        assert_eq!(
            apply_hsb(&["hum.%m", "Äal.Hub~u"], ContextMode::Full),
            vec!["humu", "Al.Hub~u"]
        );
        // a bare final consonant counts as implicit Sukun
        assert_eq!(
            apply_hsb(&["hum%m", "Äal.Hub~u"], ContextMode::Full),
            vec!["humu", "Al.Hub~u"]
        );
        assert_eq!(
            apply_hsb(&["min.%n", "Äal.γar.bi"], ContextMode::Full),
            vec!["mina", "Al.γar.bi"]
        );
        assert_eq!(
            apply_hsb(&["min.%n", "Äib.nihi"], ContextMode::Full),
            vec!["mini", "Ab.nihi"]
        );
        assert_eq!(
            apply_hsb(&["Âaš.raqat.", "Äalš~am.su"], ContextMode::Full),
            vec!["Âaš.raqati", "Alš~am.su"]
        );
    }

    #[test]
    fn no_epenthesis_without_trigger() {
        // Tanwiyn, long vowels, and short vowels are vowel representations
        assert_eq!(
            apply_hsb(&["kitaAbãA", "Äal.γar.bi"], ContextMode::Full),
            vec!["kitaAbãA", "Al.γar.bi"]
        );
        assert_eq!(
            apply_hsb(&["fiy", "Äal.γar.bi"], ContextMode::Full),
            vec!["fiy", "Al.γar.bi"]
        );
        // Sukun-final word before a non-Wasla word stays closed
        assert_eq!(
            apply_hsb(&["min.", "kitaAbi"], ContextMode::Full),
            vec!["min.", "kitaAbi"]
        );
    }

    #[test]
    fn wasla_vowel_by_position_and_mode() {
        assert_eq!(apply_hsb(&["Äal.yaw.ma"], ContextMode::Full), vec!["Aal.yaw.ma"]);
        assert_eq!(
            apply_hsb(&["Äal.yaw.ma", "Äalš~am.su"], ContextMode::Full),
            vec!["Aal.yaw.ma", "Alš~am.su"]
        );
        assert_eq!(apply_hsb(&["Äal.yaw.ma"], ContextMode::Solo), vec!["Aal.yaw.ma"]);
        assert_eq!(apply_hsb(&["Äal.yaw.ma"], ContextMode::None), vec!["Al.yaw.ma"]);
        // Solo of a one-word context equals Full of that word alone
        assert_eq!(
            apply_hsb(&["Äib.nihi"], ContextMode::Solo),
            apply_hsb(&["Äib.nihi"], ContextMode::Full)
        );
    }

    #[test]
    fn outputs_are_flag_free_and_wasla_free() {
        let out = apply(&["min.%n", "Äib.nihi", "hum.%m", "Äal.Hub~u"], ContextMode::Full).unwrap();
        for word in out {
            assert!(!word.contains('%'));
            assert!(!word.contains('\u{0671}'));
        }
    }

    #[test]
    fn unknown_flag_is_an_error() {
        let err = apply(&["hum.%q", "Äal.Hub~u"], ContextMode::Full).unwrap_err();
        match err {
            Error::UnknownFlag { flag, .. } => assert_eq!(flag, "q"),
            other => panic!("expected unknown flag, got {other:?}"),
        }
    }

    #[test]
    fn custom_rule_files_extend_the_cascade() {
        let rules = RuleSet::parse(
            "custom_epenthesis\tflag=z&ends=sukun&next=wasla\tfinal_sukun->damma\n\
             wasla_drop\tinitial=wasla\twasla->alif_drop_vowel\n",
        )
        .unwrap();
        let words = vec![
            {
                let mut w = from_hsb("min.").unwrap();
                w.push_str("%z");
                w
            },
            from_hsb("Äal.yaw.mi").unwrap(),
        ];
        let out = apply_context_edits(&words, ContextMode::Full, &rules).unwrap();
        assert_eq!(to_hsb(&out[0]).unwrap(), "minu");
        assert_eq!(to_hsb(&out[1]).unwrap(), "Al.yaw.mi");

        assert!(RuleSet::parse("bad\tflag=m\tnonsense->x\n").is_err());
        assert!(RuleSet::parse("bad\twhat=ever\tfinal_sukun->kasra\n").is_err());
    }
}
