//! The analysis database: dediacritized keys mapped to maximally
//! diacritized analyses with lemma, POS tag, morphosyntactic features, and
//! log-probabilities.
//!
//! On-disk format is UTF-8 TSV, one analysis per row:
//!
//! ```text
//! key<TAB>diac_internal<TAB>lemma<TAB>pos<TAB>f1=v1;f2=v2<TAB>lemma_logprob<TAB>pos_lemma_logprob
//! ```
//!
//! `#` starts a comment; `# version:` and `# source:` comments are kept as
//! metadata. The internal diacritization marks Alif Wasla with U+0671 and
//! may carry a trailing allomorph flag (`%` + letter, e.g. `min.%n`) that
//! the contextual post-edit pass consumes.

use std::collections::{BTreeMap, HashSet};

use crate::script::chars::{Diacritic, ALIF, ALIF_MADDA, ALIF_MAQSURA, ALIF_WASLA, LAM, WAW, YEH};
use crate::script::normalize::{dediacritize, normalize};
use crate::script::word::{externalize_wasla, DiacWord};
use crate::wellformed::{ContextFlags, Validator};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    /// Dediacritized lookup key.
    pub key: String,
    /// Internal maximal diacritization (Wasla-marked, flag attached).
    pub diac: String,
    pub lemma: String,
    pub pos: String,
    pub features: BTreeMap<String, String>,
    pub lemma_logprob: f64,
    pub pos_lemma_logprob: f64,
}

impl Analysis {
    fn row(&self) -> String {
        let features = self
            .features
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.key,
            self.diac,
            self.lemma,
            self.pos,
            features,
            self.lemma_logprob,
            self.pos_lemma_logprob
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnalysisDb {
    entries: BTreeMap<String, Vec<Analysis>>,
    pub version: Option<String>,
    pub source: Option<String>,
}

impl AnalysisDb {
    /// Parse, validate, and exactly de-duplicate a database file.
    pub fn load(text: &str) -> Result<AnalysisDb> {
        let mut db = AnalysisDb::default();
        let mut seen = HashSet::new();
        let validator = Validator::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim_start();
                if let Some(v) = comment.strip_prefix("version:") {
                    db.version = Some(v.trim().to_string());
                } else if let Some(s) = comment.strip_prefix("source:") {
                    db.source = Some(s.trim().to_string());
                }
                continue;
            }
            let analysis = parse_row(line, lineno)?;
            validate_entry(&analysis, &validator, lineno)?;
            if seen.insert(analysis.row()) {
                db.entries.entry(analysis.key.clone()).or_default().push(analysis);
            }
        }
        Ok(db)
    }

    /// Analyses for a word; the key is its dediacritized normal form, so
    /// partially diacritized input finds the same list as the bare skeleton.
    pub fn lookup(&self, word: &str) -> &[Analysis] {
        let key = dediacritize(&normalize(word));
        self.entries.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical text form: metadata comments, then rows sorted by key
    /// (insertion order within a key). `load(serialize(db))` is identity,
    /// and serialization of a canonically formatted file is byte-identical.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(v) = &self.version {
            out.push_str("# version: ");
            out.push_str(v);
            out.push('\n');
        }
        if let Some(s) = &self.source {
            out.push_str("# source: ");
            out.push_str(s);
            out.push('\n');
        }
        for analyses in self.entries.values() {
            for a in analyses {
                out.push_str(&a.row());
                out.push('\n');
            }
        }
        out
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<Analysis> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 7 {
        return Err(Error::Load {
            line: lineno,
            msg: format!("expected 7 tab-separated fields, found {}", fields.len()),
        });
    }
    let mut features = BTreeMap::new();
    if !fields[4].is_empty() {
        for pair in fields[4].split(';') {
            let Some((k, v)) = pair.split_once('=') else {
                return Err(Error::Load {
                    line: lineno,
                    msg: format!("feature `{pair}` is not of the form key=value"),
                });
            };
            features.insert(k.to_string(), v.to_string());
        }
    }
    let logprob = |s: &str, what: &str| {
        s.parse::<f64>().map_err(|_| Error::Load {
            line: lineno,
            msg: format!("{what} `{s}` is not a number"),
        })
    };
    Ok(Analysis {
        key: fields[0].to_string(),
        diac: fields[1].to_string(),
        lemma: fields[2].to_string(),
        pos: fields[3].to_string(),
        features,
        lemma_logprob: logprob(fields[5], "lemma log-probability")?,
        pos_lemma_logprob: logprob(fields[6], "pos+lemma log-probability")?,
    })
}

fn validate_entry(analysis: &Analysis, validator: &Validator, lineno: usize) -> Result<()> {
    let body = strip_flags(&analysis.diac);
    let externalized = externalize_wasla(body, true);
    if dediacritize(&externalized) != analysis.key {
        return Err(Error::Load {
            line: lineno,
            msg: format!(
                "diacritization `{}` does not dediacritize to its key `{}`",
                analysis.diac, analysis.key
            ),
        });
    }
    let verdict = validator.check_word(&externalized, ContextFlags::standalone());
    if !verdict.ok {
        return Err(Error::Validation { entry: analysis.diac.clone(), codes: verdict.codes() });
    }
    Ok(())
}

/// Split a diacritization into its body and trailing allomorph flag.
pub fn split_flag(diac: &str) -> (&str, Option<&str>) {
    match diac.rfind('%') {
        Some(pos) => (&diac[..pos], Some(&diac[pos + 1..])),
        None => (diac, None),
    }
}

/// The diacritization without its allomorph flag.
pub fn strip_flags(diac: &str) -> &str {
    split_flag(diac).0
}

#[derive(Debug, Clone, Copy)]
pub struct MaximalizeOptions {
    /// Insert Sukun on a bare final consonant. Disable for the style that
    /// deliberately leaves the utterance-final letter unmarked; such input
    /// then fails repair rather than receive a guessed mark.
    pub final_sukun: bool,
}

impl Default for MaximalizeOptions {
    fn default() -> MaximalizeOptions {
        MaximalizeOptions { final_sukun: true }
    }
}

/// Lift a convention-bound diacritization (long vowels written without
/// their Fatha, article Lam without Sukun, bare Alif for the article) to
/// the internal maximal form. Already-maximal input is returned normalized
/// and otherwise untouched. The allomorph flag, if any, rides along.
pub fn maximalize_analysis(diac: &str, options: MaximalizeOptions) -> Result<String> {
    let validator = Validator::new();
    let flags = ContextFlags::standalone();
    let (body, flag) = split_flag(diac);
    let reattach = |repaired: String| match flag {
        Some(f) => format!("{repaired}%{f}"),
        None => repaired,
    };
    if validator.check_word(&externalize_wasla(body, true), flags).ok {
        return Ok(reattach(normalize(body)));
    }

    let mut w = DiacWord::segment(&normalize(body));
    let n = w.segments.len();

    // (i) make the Fatha before a long-vowel Alif explicit
    for i in 1..n {
        if w.segments[i].0 != ALIF || !w.segments[i].1.is_empty() {
            continue;
        }
        if i + 1 == n && w.segments[i - 1].0 == WAW {
            continue; // the silent Alif of a plural Waw
        }
        if matches!(w.segments[i - 1].0, ALIF | ALIF_WASLA | ALIF_MADDA) {
            continue;
        }
        if let Some(c) = w.segments[i - 1].1.canonical() {
            if c.vowel.is_none() && !c.dagger {
                w.segments[i - 1].1.marks.push(Diacritic::Fatha);
            }
        }
    }

    // (ii) word-final Fathatan moves off the Alif — handled by `normalize`

    // (iii) bare consonants carry Sukun
    for i in 0..n {
        let (ch, cluster) = &w.segments[i];
        if !cluster.is_empty() || matches!(*ch, ALIF | ALIF_WASLA | ALIF_MADDA | ALIF_MAQSURA) {
            continue;
        }
        if i + 1 == n && !options.final_sukun {
            continue;
        }
        let prev_vowel = (i > 0).then(|| w.segments[i - 1].1.vowel()).flatten();
        if *ch == WAW && prev_vowel == Some(Diacritic::Damma) {
            continue; // long uw
        }
        if *ch == YEH && prev_vowel == Some(Diacritic::Kasra) {
            continue; // long iy
        }
        if *ch == LAM
            && i >= 1
            && matches!(w.segments[i - 1].0, ALIF | ALIF_WASLA)
            && w.segments.get(i + 1).is_some_and(|(_, c)| c.contains(Diacritic::Shadda))
        {
            continue; // article Lam assimilated into a sun letter stays bare
        }
        w.segments[i].1.marks.push(Diacritic::Sukun);
    }

    // (iv) an initial Alif that elides is an Alif Wasla: mark it, and give
    // the article its Fatha when the vowel is recoverable
    if n > 0 && w.segments[0].0 == ALIF {
        let has_short_vowel = w.segments[0]
            .1
            .canonical()
            .is_some_and(|c| !c.shadda && !c.dagger && c.vowel.is_some_and(|v| v.is_short_vowel()));
        let bare_article = w.segments[0].1.is_empty()
            && w.segments.get(1).is_some_and(|(ch, _)| *ch == LAM);
        if has_short_vowel {
            w.segments[0].0 = ALIF_WASLA;
        } else if bare_article {
            w.segments[0].0 = ALIF_WASLA;
            w.segments[0].1.marks.push(Diacritic::Fatha);
        }
    }

    let repaired = normalize(&w.serialize());
    let verdict = validator.check_word(&externalize_wasla(&repaired, true), flags);
    if !verdict.ok {
        return Err(Error::Repair { entry: diac.to_string(), codes: verdict.codes() });
    }
    Ok(reattach(repaired))
}
