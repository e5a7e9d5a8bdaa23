//! Edit profiles and candidate-analysis ranking.
//!
//! The baseline ranking orders analyses by predicted-feature matches and
//! log-probabilities. The extended ranking folds in an edit profile against
//! the observed (possibly partially diacritized) word, so that marks already
//! present in the text pin down the analysis: an exact match costs nothing,
//! a candidate that merely adds marks costs only insertions, and candidates
//! that would change or drop observed marks sink by their substitution and
//! deletion counts.

use std::collections::{BTreeMap, BTreeSet};

use crate::db::{strip_flags, Analysis};
use crate::script::normalize::normalize;
use crate::script::word::externalize_wasla;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EditProfile {
    pub insertions: u32,
    pub substitutions: u32,
    pub deletions: u32,
}

impl EditProfile {
    pub fn distance(&self) -> u32 {
        self.insertions + self.substitutions + self.deletions
    }
}

/// Minimal codepoint-level edit profile transforming `input` into
/// `candidate`: insertions add codepoints absent from the input, deletions
/// remove input codepoints. Among minimal alignments the decomposition is
/// fixed by a backtrace from the end preferring match, then substitution,
/// then deletion, then insertion.
pub fn edit_profile(input: &str, candidate: &str) -> EditProfile {
    let a: Vec<char> = input.chars().collect();
    let b: Vec<char> = candidate.chars().collect();
    let (m, n) = (a.len(), b.len());
    let mut dp = vec![vec![0u32; n + 1]; m + 1];
    for (i, row) in dp.iter_mut().enumerate() {
        row[0] = i as u32;
    }
    for j in 0..=n {
        dp[0][j] = j as u32;
    }
    for i in 1..=m {
        for j in 1..=n {
            let substitute = dp[i - 1][j - 1] + u32::from(a[i - 1] != b[j - 1]);
            dp[i][j] = substitute.min(dp[i - 1][j] + 1).min(dp[i][j - 1] + 1);
        }
    }
    let mut profile = EditProfile::default();
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        if i > 0 && j > 0 && a[i - 1] == b[j - 1] && dp[i][j] == dp[i - 1][j - 1] {
            i -= 1;
            j -= 1;
        } else if i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1 {
            profile.substitutions += 1;
            i -= 1;
            j -= 1;
        } else if i > 0 && dp[i][j] == dp[i - 1][j] + 1 {
            profile.deletions += 1;
            i -= 1;
        } else {
            profile.insertions += 1;
            j -= 1;
        }
    }
    profile
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictionSource {
    /// No prediction: every analysis scores zero matches.
    #[default]
    Null,
    /// Token-aligned gold feature maps from a reference file.
    Gold,
    /// Any other upstream tagger.
    External,
}

/// Predicted morphosyntactic features for one word.
#[derive(Debug, Clone, Default)]
pub struct FeaturePrediction {
    pub source: PredictionSource,
    pub features: BTreeMap<String, String>,
    /// Feature names counted in the match score M; `None` counts every
    /// predicted key.
    pub counted: Option<BTreeSet<String>>,
}

impl FeaturePrediction {
    pub fn null() -> FeaturePrediction {
        FeaturePrediction::default()
    }

    pub fn gold(features: BTreeMap<String, String>) -> FeaturePrediction {
        FeaturePrediction { source: PredictionSource::Gold, features, counted: None }
    }

    /// Number of counted features on which the analysis agrees with the
    /// prediction.
    pub fn matches(&self, analysis: &Analysis) -> u32 {
        self.features
            .iter()
            .filter(|(k, _)| self.counted.as_ref().is_none_or(|c| c.contains(*k)))
            .filter(|(k, v)| analysis.features.get(*k) == Some(v))
            .count() as u32
    }
}

/// The candidate surface an observed word is compared against: flags off,
/// Wasla externalized as mid-context (bare Alif), normalized.
fn candidate_surface(analysis: &Analysis) -> String {
    normalize(&externalize_wasla(strip_flags(&analysis.diac), false))
}

/// Order analyses by (M desc, P desc, L desc, W asc).
pub fn rank_base<'a>(
    analyses: &[&'a Analysis],
    prediction: &FeaturePrediction,
) -> Result<Vec<&'a Analysis>> {
    if analyses.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut scored: Vec<(u32, &Analysis)> =
        analyses.iter().map(|a| (prediction.matches(a), *a)).collect();
    scored.sort_by(|(mx, x), (my, y)| {
        my.cmp(mx)
            .then_with(|| y.pos_lemma_logprob.total_cmp(&x.pos_lemma_logprob))
            .then_with(|| y.lemma_logprob.total_cmp(&x.lemma_logprob))
            .then_with(|| x.diac.cmp(&y.diac))
    });
    Ok(scored.into_iter().map(|(_, a)| a).collect())
}

/// Order analyses by (S+D asc, M desc, S asc, D asc, P desc, L desc, I asc,
/// W asc) against the observed word. Deletions are cheaper than
/// substitutions: with equal S+D, lower S wins.
pub fn rank_extended<'a>(
    analyses: &[&'a Analysis],
    prediction: &FeaturePrediction,
    input_word: &str,
) -> Result<Vec<&'a Analysis>> {
    if analyses.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let observed = normalize(input_word);
    let mut scored: Vec<(EditProfile, u32, &Analysis)> = analyses
        .iter()
        .map(|a| (edit_profile(&observed, &candidate_surface(a)), prediction.matches(a), *a))
        .collect();
    scored.sort_by(|(px, mx, x), (py, my, y)| {
        (px.substitutions + px.deletions)
            .cmp(&(py.substitutions + py.deletions))
            .then_with(|| my.cmp(mx))
            .then_with(|| px.substitutions.cmp(&py.substitutions))
            .then_with(|| px.deletions.cmp(&py.deletions))
            .then_with(|| y.pos_lemma_logprob.total_cmp(&x.pos_lemma_logprob))
            .then_with(|| y.lemma_logprob.total_cmp(&x.lemma_logprob))
            .then_with(|| px.insertions.cmp(&py.insertions))
            .then_with(|| x.diac.cmp(&y.diac))
    });
    Ok(scored.into_iter().map(|(_, _, a)| a).collect())
}

/// The analysis nearest the gold diacritization by total edit distance,
/// ties broken by W ascending.
pub fn oracle_select<'a>(analyses: &[&'a Analysis], gold: &str) -> Result<&'a Analysis> {
    if analyses.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let gold = normalize(gold);
    Ok(analyses
        .iter()
        .map(|a| (edit_profile(&gold, &candidate_surface(a)).distance(), *a))
        .min_by(|(dx, x), (dy, y)| dx.cmp(dy).then_with(|| x.diac.cmp(&y.diac)))
        .map(|(_, a)| a)
        .expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::hsb::from_hsb;

    fn profile_hsb(input: &str, candidate: &str) -> EditProfile {
        edit_profile(&from_hsb(input).unwrap(), &from_hsb(candidate).unwrap())
    }

    fn analysis(diac_hsb: &str, pos: &str, feats: &[(&str, &str)], l: f64, pl: f64) -> Analysis {
        let (body, flag) = crate::db::split_flag(diac_hsb);
        let mut diac = from_hsb(body).unwrap();
        if let Some(f) = flag {
            diac.push('%');
            diac.push_str(f);
        }
        Analysis {
            key: crate::script::normalize::dediacritize(&externalize_wasla(
                &from_hsb(body).unwrap(),
                false,
            )),
            diac,
            lemma: String::new(),
            pos: pos.to_string(),
            features: feats.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            lemma_logprob: l,
            pos_lemma_logprob: pl,
        }
    }

    #[test]
    fn edit_profile_frozen_examples() {
        assert_eq!(profile_hsb("kat~ab", "kat~ab"), EditProfile::default());
        assert_eq!(
            profile_hsb("Alšmsu", "Alš~am.su"),
            EditProfile { insertions: 3, substitutions: 0, deletions: 0 }
        );
        assert_eq!(
            profile_hsb("Âah.lahu", "Âah.lihi"),
            EditProfile { insertions: 0, substitutions: 2, deletions: 0 }
        );
        assert_eq!(
            profile_hsb("Âah.lahaA", "Âah.lihi"),
            EditProfile { insertions: 0, substitutions: 2, deletions: 1 }
        );
    }

    #[test]
    fn edit_profile_total_is_symmetric_with_i_d_swapped() {
        for (a, b) in [("Alšmsu", "Alš~am.su"), ("Âah.lahaA", "Âah.lihi"), ("ktb", "kitaAbu")] {
            let fwd = profile_hsb(a, b);
            let rev = profile_hsb(b, a);
            assert_eq!(fwd.distance(), rev.distance());
            assert_eq!(fwd.insertions, rev.deletions);
            assert_eq!(fwd.deletions, rev.insertions);
        }
    }

    #[test]
    fn base_ranking_follows_m_p_l_w() {
        let a = analysis("min.%n", "prep", &[("pos", "prep")], -1.2, -1.5);
        let b = analysis("man.", "pron", &[("pos", "pron")], -2.1, -2.4);
        let c = analysis("man~a", "verb", &[("pos", "verb")], -0.5, -0.9);
        let candidates = vec![&a, &b, &c];

        let gold = FeaturePrediction::gold([("pos".into(), "prep".into())].into());
        let ranked = rank_base(&candidates, &gold).unwrap();
        assert_eq!(ranked[0].diac, a.diac);

        // null prediction: probabilities decide
        let ranked = rank_base(&candidates, &FeaturePrediction::null()).unwrap();
        assert_eq!(ranked[0].diac, c.diac);

        assert!(matches!(rank_base(&[], &FeaturePrediction::null()), Err(Error::EmptyCandidates)));
    }

    #[test]
    fn counted_feature_list_limits_m() {
        let a = analysis("man.", "pron", &[("pos", "pron"), ("case", "u")], -3.0, -3.0);
        let mut pred = FeaturePrediction::gold(
            [("pos".into(), "pron".into()), ("case".into(), "u".into())].into(),
        );
        assert_eq!(pred.matches(&a), 2);
        pred.counted = Some(["pos".to_string()].into());
        assert_eq!(pred.matches(&a), 1);
    }

    #[test]
    fn extended_ranking_pins_observed_marks() {
        // Fig. 2(c) scenario: partially diacritized Alšmsu keeps its Damma
        let nom = analysis("Äalš~am.su", "noun", &[], -1.0, -1.0);
        let acc = analysis("Äalš~am.sa", "noun", &[], -5.0, -5.0);
        let candidates = vec![&nom, &acc];
        let input = from_hsb("Alšmsu").unwrap();
        let ranked = rank_extended(&candidates, &FeaturePrediction::null(), &input).unwrap();
        assert_eq!(ranked[0].diac, nom.diac);

        // fully diacritized exact match outranks higher-probability rivals
        let input = from_hsb("Alš~am.sa").unwrap();
        let ranked = rank_extended(&candidates, &FeaturePrediction::null(), &input).unwrap();
        assert_eq!(ranked[0].diac, acc.diac);
    }

    #[test]
    fn deletions_beat_substitutions_at_equal_total() {
        // input xuD.rãA: candidate by one deletion vs candidate by one
        // substitution, equal S+D
        let by_deletion = analysis("xuD.rã", "noun", &[], -5.0, -5.0);
        let by_substitution = analysis("xuD.rũA", "noun", &[], -1.0, -1.0);
        let candidates = vec![&by_substitution, &by_deletion];
        let input = from_hsb("xuD.rãA").unwrap();
        let ranked = rank_extended(&candidates, &FeaturePrediction::null(), &input).unwrap();
        assert_eq!(ranked[0].diac, by_deletion.diac);
    }

    #[test]
    fn oracle_picks_nearest() {
        let far = analysis("Âah.lahaA", "noun", &[], -1.0, -1.0);
        let near = analysis("Âah.lahu", "noun", &[], -2.0, -2.0);
        let gold = from_hsb("Âah.lihi").unwrap();
        let picked = oracle_select(&[&far, &near], &gold).unwrap();
        assert_eq!(picked.diac, near.diac);
        let exact = analysis("Âah.lihi", "noun", &[], -9.0, -9.0);
        let picked = oracle_select(&[&far, &near, &exact], &gold).unwrap();
        assert_eq!(picked.diac, exact.diac);
        assert!(matches!(oracle_select(&[], &gold), Err(Error::EmptyCandidates)));
    }
}
