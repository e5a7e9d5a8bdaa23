//! Tokenization, the end-to-end diacritization pipeline, and the
//! evaluation scorer.
//!
//! A line tokenizes into whitespace-separated chunks with leading/trailing
//! punctuation split off; punctuation delimits the context windows the
//! validator and the post-edit cascade operate on. Diacritization looks
//! every Arabic word up in the analysis database, ranks the candidates
//! (base or extended), applies the contextual post-edits per window, and
//! reassembles the line with its original separators. Words without
//! analyses pass through verbatim and are counted, not failed.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::context::{apply_context_edits, ContextMode, RuleSet};
use crate::db::AnalysisDb;
use crate::rank::{oracle_select, rank_base, rank_extended, FeaturePrediction};
use crate::script::chars::{classify_char, is_arabic_digit, is_arabic_letter, CharClass};
use crate::script::normalize::normalize;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    ArabicWord,
    Punctuation,
    Number,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    /// 1-based input line.
    pub line: usize,
    /// 0-based char offset within the line.
    pub col: usize,
}

fn classify_chunk(text: &str) -> TokenKind {
    let mut chars = text.chars();
    if text.chars().any(is_arabic_letter) {
        TokenKind::ArabicWord
    } else if !text.is_empty() && chars.all(|c| c.is_ascii_digit() || is_arabic_digit(c)) {
        TokenKind::Number
    } else {
        TokenKind::Other
    }
}

fn is_punct(c: char) -> bool {
    matches!(classify_char(c), CharClass::Punctuation)
}

/// Split one line into tokens. Whitespace separates chunks; leading and
/// trailing punctuation chars become individual Punctuation tokens; a chunk
/// with at least one Arabic letter is an ArabicWord.
pub fn tokenize_line(line: &str, line_no: usize) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chunk_start = 0usize;
    let mut chunk: Vec<char> = Vec::new();
    let flush = |tokens: &mut Vec<Token>, chunk: &mut Vec<char>, start: usize| {
        if chunk.is_empty() {
            return;
        }
        let mut lead = 0;
        while lead < chunk.len() && is_punct(chunk[lead]) {
            lead += 1;
        }
        let mut trail = chunk.len();
        while trail > lead && is_punct(chunk[trail - 1]) {
            trail -= 1;
        }
        let mut push = |text: String, kind: TokenKind, col: usize| {
            tokens.push(Token { text, kind, line: line_no, col });
        };
        for (i, &c) in chunk[..lead].iter().enumerate() {
            push(c.to_string(), TokenKind::Punctuation, start + i);
        }
        if lead < trail {
            let core: String = chunk[lead..trail].iter().collect();
            let kind = classify_chunk(&core);
            push(core, kind, start + lead);
        }
        for (i, &c) in chunk[trail..].iter().enumerate() {
            push(c.to_string(), TokenKind::Punctuation, start + trail + i);
        }
        chunk.clear();
    };
    for (col, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            flush(&mut tokens, &mut chunk, chunk_start);
        } else {
            if chunk.is_empty() {
                chunk_start = col;
            }
            chunk.push(c);
        }
    }
    flush(&mut tokens, &mut chunk, chunk_start);
    tokens
}

fn window_ranges(tokens: &[Token]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, token) in tokens.iter().enumerate() {
        if token.kind == TokenKind::Punctuation {
            if let Some(s) = start.take() {
                out.push(s..i);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(s..tokens.len());
    }
    out
}

/// Maximal runs of non-punctuation tokens: the context windows.
pub fn windows(tokens: &[Token]) -> Vec<&[Token]> {
    window_ranges(tokens).into_iter().map(|r| &tokens[r]).collect()
}

/// Token-aligned gold feature predictions: one line per input line, one
/// tab-separated cell per Arabic word, each cell a comma-joined `f=v` list
/// (`-` for an empty prediction).
#[derive(Debug, Clone, Default)]
pub struct GoldPredictions {
    lines: Vec<Vec<BTreeMap<String, String>>>,
}

impl GoldPredictions {
    pub fn load(text: &str) -> Result<GoldPredictions> {
        let mut lines = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let mut cells = Vec::new();
            if !line.is_empty() {
                for cell in line.split('\t') {
                    let mut features = BTreeMap::new();
                    if !matches!(cell, "-" | "") {
                        for pair in cell.split(',') {
                            let Some((k, v)) = pair.split_once('=') else {
                                return Err(Error::Load {
                                    line: idx + 1,
                                    msg: format!("prediction `{pair}` is not of the form key=value"),
                                });
                            };
                            features.insert(k.to_string(), v.to_string());
                        }
                    }
                    cells.push(features);
                }
            }
            lines.push(cells);
        }
        Ok(GoldPredictions { lines })
    }

    fn prediction(&self, line_idx: usize, word_idx: usize) -> Result<FeaturePrediction> {
        self.lines
            .get(line_idx)
            .and_then(|cells| cells.get(word_idx))
            .map(|features| FeaturePrediction::gold(features.clone()))
            .ok_or_else(|| Error::Load {
                line: line_idx + 1,
                msg: format!("gold predictions missing for word {}", word_idx + 1),
            })
    }
}

#[derive(Debug, Clone, Default)]
pub enum Predictor {
    #[default]
    Null,
    Gold(GoldPredictions),
}

impl Predictor {
    fn for_word(&self, line_idx: usize, word_idx: usize) -> Result<FeaturePrediction> {
        match self {
            Predictor::Null => Ok(FeaturePrediction::null()),
            Predictor::Gold(gold) => gold.prediction(line_idx, word_idx),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ranking {
    Base,
    #[default]
    Extended,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineOptions {
    pub mode: ContextMode,
    pub ranking: Ranking,
    pub rules: RuleSet,
    /// Feature names counted in the tagger-match score; `None` counts all.
    pub counted: Option<BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiacritizedText {
    pub text: String,
    /// Arabic words without any database analysis, emitted verbatim.
    pub no_analysis: usize,
}

/// How one window member gets its output form.
enum Winner {
    Analyzed(String),
    PassThrough,
}

pub fn diacritize(
    text: &str,
    db: &AnalysisDb,
    predictor: &Predictor,
    options: &PipelineOptions,
) -> Result<DiacritizedText> {
    run_pipeline(text, options, |line_idx, word_idx, token| {
        let candidates: Vec<_> = db.lookup(&token.text).iter().collect();
        if candidates.is_empty() {
            return Ok(Winner::PassThrough);
        }
        let mut prediction = predictor.for_word(line_idx, word_idx)?;
        prediction.counted = options.counted.clone();
        let ranked = match options.ranking {
            Ranking::Base => rank_base(&candidates, &prediction)?,
            Ranking::Extended => rank_extended(&candidates, &prediction, &token.text)?,
        };
        Ok(Winner::Analyzed(ranked[0].diac.clone()))
    })
}

/// Diacritize selecting, for each word, the analysis nearest the aligned
/// reference word (the oracle upper bound). The reference is one line per
/// input line with matching Arabic word tokens.
pub fn oracle_diacritize(
    text: &str,
    reference: &str,
    db: &AnalysisDb,
    options: &PipelineOptions,
) -> Result<DiacritizedText> {
    let ref_words: Vec<Vec<String>> = reference
        .lines()
        .map(|line| {
            tokenize_line(line, 0)
                .into_iter()
                .filter(|t| t.kind == TokenKind::ArabicWord)
                .map(|t| t.text)
                .collect()
        })
        .collect();
    run_pipeline(text, options, |line_idx, word_idx, token| {
        let ref_line = ref_words.get(line_idx).map(Vec::as_slice).unwrap_or(&[]);
        let gold = ref_line.get(word_idx).ok_or(Error::Alignment {
            line: line_idx + 1,
            hyp: word_idx + 1,
            reference: ref_line.len(),
            index: word_idx,
        })?;
        let candidates: Vec<_> = db.lookup(&token.text).iter().collect();
        if candidates.is_empty() {
            return Ok(Winner::PassThrough);
        }
        Ok(Winner::Analyzed(oracle_select(&candidates, gold)?.diac.clone()))
    })
}

fn run_pipeline(
    text: &str,
    options: &PipelineOptions,
    mut select: impl FnMut(usize, usize, &Token) -> Result<Winner>,
) -> Result<DiacritizedText> {
    let mut out_lines = Vec::new();
    let mut no_analysis = 0usize;
    for (line_idx, line) in text.lines().enumerate() {
        let tokens = tokenize_line(line, line_idx + 1);
        // output text per token index, None = original text
        let mut outputs: Vec<Option<String>> = vec![None; tokens.len()];
        let mut word_idx = 0usize;
        for range in window_ranges(&tokens) {
            let window = &tokens[range.clone()];
            let mut members = Vec::with_capacity(window.len());
            let mut verbatim = vec![false; window.len()];
            for (i, token) in window.iter().enumerate() {
                if token.kind == TokenKind::ArabicWord {
                    match select(line_idx, word_idx, token)? {
                        Winner::Analyzed(diac) => members.push(diac),
                        Winner::PassThrough => {
                            no_analysis += 1;
                            verbatim[i] = true;
                            members.push(token.text.clone());
                        }
                    }
                    word_idx += 1;
                } else {
                    verbatim[i] = true;
                    members.push(token.text.clone());
                }
            }
            let edited = apply_context_edits(&members, options.mode, &options.rules)?;
            for (i, word) in edited.into_iter().enumerate() {
                if !verbatim[i] {
                    outputs[range.start + i] = Some(word);
                }
            }
        }
        out_lines.push(reassemble(line, &tokens, &outputs));
    }
    let mut text_out = out_lines.join("\n");
    if text.ends_with('\n') {
        text_out.push('\n');
    }
    Ok(DiacritizedText { text: text_out, no_analysis })
}

/// Normalize every token of running text, keeping separators intact.
pub fn normalize_text(text: &str) -> String {
    let mut out_lines = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let tokens = tokenize_line(line, idx + 1);
        let outputs: Vec<Option<String>> =
            tokens.iter().map(|t| Some(normalize(&t.text))).collect();
        out_lines.push(reassemble(line, &tokens, &outputs));
    }
    let mut out = out_lines.join("\n");
    if text.ends_with('\n') {
        out.push('\n');
    }
    out
}

/// Rebuild a line, substituting token texts while keeping every separator
/// char exactly as it was.
fn reassemble(line: &str, tokens: &[Token], outputs: &[Option<String>]) -> String {
    let chars: Vec<char> = line.chars().collect();
    let mut out = String::new();
    let mut cursor = 0usize;
    for (token, output) in tokens.iter().zip(outputs) {
        out.extend(&chars[cursor..token.col]);
        match output {
            Some(text) => out.push_str(text),
            None => out.push_str(&token.text),
        }
        cursor = token.col + token.text.chars().count();
    }
    out.extend(&chars[cursor..]);
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EvaluateOptions {
    /// Compare raw byte equality instead of normalized equality.
    pub raw: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenreScore {
    pub total: u64,
    pub correct: u64,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub total: u64,
    pub correct: u64,
    /// Percent of scored (Arabic-reference) tokens matched.
    pub accuracy: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub per_genre: BTreeMap<String, GenreScore>,
}

fn percent(correct: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * correct as f64 / total as f64
    }
}

/// Score a hypothesis file against a reference file. Reference lines are
/// `sentence[<TAB>id[<TAB>genre]]`; a reference token may join alternative
/// diacritizations with `|`. Only tokens whose reference side contains an
/// Arabic letter are scored.
pub fn evaluate(hyp: &str, reference: &str, options: &EvaluateOptions) -> Result<EvalReport> {
    let hyp_lines: Vec<&str> = hyp.lines().collect();
    let ref_lines: Vec<&str> = reference.lines().collect();
    if hyp_lines.len() != ref_lines.len() {
        return Err(Error::Load {
            line: hyp_lines.len().min(ref_lines.len()) + 1,
            msg: format!(
                "line counts differ: {} hypothesis vs {} reference",
                hyp_lines.len(),
                ref_lines.len()
            ),
        });
    }
    let mut total = 0u64;
    let mut correct = 0u64;
    let mut per_genre: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for (idx, (hyp_line, ref_line)) in hyp_lines.iter().zip(&ref_lines).enumerate() {
        let mut ref_fields = ref_line.split('\t');
        let sentence = ref_fields.next().unwrap_or("");
        let _id = ref_fields.next();
        let genre = ref_fields.next();

        let hyp_tokens: Vec<&str> = hyp_line.split_whitespace().collect();
        let ref_tokens: Vec<&str> = sentence.split_whitespace().collect();
        if hyp_tokens.len() != ref_tokens.len() {
            return Err(Error::Alignment {
                line: idx + 1,
                hyp: hyp_tokens.len(),
                reference: ref_tokens.len(),
                index: hyp_tokens.len().min(ref_tokens.len()),
            });
        }
        for (hyp_token, ref_token) in hyp_tokens.iter().zip(&ref_tokens) {
            if !ref_token.chars().any(is_arabic_letter) {
                continue;
            }
            total += 1;
            let hit = ref_token.split('|').any(|alt| {
                if options.raw {
                    hyp_token == &alt
                } else {
                    normalize(hyp_token) == normalize(alt)
                }
            });
            if hit {
                correct += 1;
            }
            if let Some(genre) = genre {
                let slot = per_genre.entry(genre.to_string()).or_default();
                slot.0 += 1;
                slot.1 += u64::from(hit);
            }
        }
    }
    Ok(EvalReport {
        total,
        correct,
        accuracy: percent(correct, total),
        per_genre: per_genre
            .into_iter()
            .map(|(genre, (total, correct))| {
                (genre, GenreScore { total, correct, accuracy: percent(correct, total) })
            })
            .collect(),
    })
}
