//! Cluster normalization, dediacritization, and diacritic counting.

use super::chars::{Diacritic, ALIF, ALIF_MAQSURA};
use super::word::{DiacCluster, DiacWord};

/// Canonical-order rank of a mark within a cluster: Shadda, vowel slot,
/// Dagger Alif.
fn slot(d: Diacritic) -> u8 {
    match d {
        Diacritic::Shadda => 0,
        Diacritic::DaggerAlif => 2,
        _ => 1,
    }
}

fn canonicalize_cluster(cluster: &mut DiacCluster) {
    // collapse exact duplicates, keeping first occurrences
    let mut seen = Vec::new();
    cluster.marks.retain(|m| {
        if seen.contains(m) {
            false
        } else {
            seen.push(*m);
            true
        }
    });
    // stable, so incompatible clusters keep their relative vowel order and
    // stay visible to the validator
    cluster.marks.sort_by_key(|&m| slot(m));
}

/// Rewrite a word's clusters into canonical order and reposition a misplaced
/// word-final Fathatan (`..Aã` → `..ãA`). Letters are never touched;
/// idempotent by construction.
pub fn normalize(word: &str) -> String {
    let mut w = DiacWord::segment(word);
    canonicalize_cluster(&mut w.initial);
    for (_, cluster) in &mut w.segments {
        canonicalize_cluster(cluster);
    }
    // a Fathatan written on a final Alif or Alif Maqsura belongs on the
    // preceding letter
    let n = w.segments.len();
    if n >= 2 {
        let (last_letter, last_cluster) = &w.segments[n - 1];
        if matches!(*last_letter, ALIF | ALIF_MAQSURA)
            && last_cluster.marks == [Diacritic::Fathatan]
        {
            w.segments[n - 1].1.marks.clear();
            w.segments[n - 2].1.marks.push(Diacritic::Fathatan);
            canonicalize_cluster(&mut w.segments[n - 2].1);
        }
    }
    w.serialize()
}

/// Strip the nine diacritics, leaving letters (including Alif Wasla) intact.
pub fn dediacritize(word: &str) -> String {
    word.chars()
        .filter(|&c| Diacritic::from_char(c).is_none())
        .collect()
}

/// Counts of the nine diacritics, indexed in Unicode order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiacProfile {
    pub counts: [u32; 9],
}

impl DiacProfile {
    pub fn count(&self, d: Diacritic) -> u32 {
        self.counts[d.index()]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

pub fn diacritic_profile(text: &str) -> DiacProfile {
    let mut p = DiacProfile::default();
    for c in text.chars() {
        if let Some(d) = Diacritic::from_char(c) {
            p.counts[d.index()] += 1;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::hsb::{from_hsb, to_hsb};

    fn norm(hsb: &str) -> String {
        to_hsb(&normalize(&from_hsb(hsb).unwrap())).unwrap()
    }

    #[test]
    fn shadda_moves_before_its_vowel() {
        assert_eq!(norm("kata~b"), "kat~ab");
        assert_eq!(norm("kat~ab"), "kat~ab");
    }

    #[test]
    fn final_fathatan_moves_before_alif() {
        assert_eq!(norm("kitaAbAã"), "kitaAbãA");
        assert_eq!(norm("kitaAbãA"), "kitaAbãA");
        // same rule on Alif Maqsura
        assert_eq!(norm("fatýã"), "fatãý");
        // medial occurrences are left alone
        assert_eq!(norm("kAãb"), "kAãb");
    }

    #[test]
    fn duplicates_collapse_but_conflicts_survive() {
        assert_eq!(norm("ktAbuu"), "ktAbu");
        // two distinct vowels stay, in their original order, for the validator
        assert_eq!(norm("bau"), "bau");
        assert_eq!(norm("bá~a"), "b~aá");
    }

    #[test]
    fn dediacritize_keeps_letters() {
        assert_eq!(
            to_hsb(&dediacritize(&from_hsb("Aal.yaw.ma").unwrap())).unwrap(),
            "Alywm"
        );
        assert_eq!(
            to_hsb(&dediacritize(&from_hsb("Äalš~am.su").unwrap())).unwrap(),
            "Älšms"
        );
    }

    #[test]
    fn profile_counts_in_unicode_order() {
        let p = diacritic_profile(&from_hsb("kat~ab").unwrap());
        assert_eq!(p.count(Diacritic::Fatha), 2);
        assert_eq!(p.count(Diacritic::Shadda), 1);
        assert_eq!(p.total(), 3);

        // hand count for Als~aATiςaħu: ~ a i a u
        let p = diacritic_profile(&from_hsb("Als~aATiςaħu").unwrap());
        assert_eq!(p.count(Diacritic::Fatha), 2);
        assert_eq!(p.count(Diacritic::Kasra), 1);
        assert_eq!(p.count(Diacritic::Damma), 1);
        assert_eq!(p.count(Diacritic::Shadda), 1);
        assert_eq!(p.total(), 5);
    }

    #[test]
    fn normalize_is_idempotent_and_preserves_skeleton() {
        for hsb in ["kata~b", "kitaAbAã", "ktAbuu", "bau", "ĩktAb", "kuta~AbAã"] {
            let raw = from_hsb(hsb).unwrap();
            let once = normalize(&raw);
            assert_eq!(normalize(&once), once);
            assert_eq!(dediacritize(&once), dediacritize(&raw));
        }
    }
}
