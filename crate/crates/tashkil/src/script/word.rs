//! Lossless segmentation of a word into letters and their diacritic
//! clusters, plus the canonical cluster view.

use super::chars::{Diacritic, ALIF, ALIF_WASLA};

/// A diacritic cluster in raw (written) order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiacCluster {
    pub marks: Vec<Diacritic>,
}

/// Canonical view of a compatible cluster: Shadda, then at most one mark in
/// the vowel slot (short vowel, Tanwiyn, or Sukun), then Dagger Alif.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalCluster {
    pub shadda: bool,
    pub vowel: Option<Diacritic>,
    pub dagger: bool,
}

impl DiacCluster {
    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    pub fn contains(&self, d: Diacritic) -> bool {
        self.marks.contains(&d)
    }

    /// Canonical view, if one exists: at most one Shadda, at most one
    /// vowel-slot mark (after collapsing exact duplicates), and Dagger Alif
    /// compatible only with Fatha or no vowel at all.
    pub fn canonical(&self) -> Option<CanonicalCluster> {
        let mut shadda = false;
        let mut vowel = None;
        let mut dagger = false;
        for &m in &self.marks {
            match m {
                Diacritic::Shadda => shadda = true,
                Diacritic::DaggerAlif => dagger = true,
                v => match vowel {
                    None => vowel = Some(v),
                    Some(prev) if prev == v => {}
                    Some(_) => return None,
                },
            }
        }
        if dagger && !matches!(vowel, None | Some(Diacritic::Fatha)) {
            return None;
        }
        Some(CanonicalCluster { shadda, vowel, dagger })
    }

    /// The vowel-slot mark of the canonical view, if any.
    pub fn vowel(&self) -> Option<Diacritic> {
        self.canonical().and_then(|c| c.vowel)
    }
}

/// A word split into its letters and per-letter clusters. Diacritics that
/// precede the first letter land in `initial` (always a wild error, kept so
/// serialization stays lossless).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiacWord {
    pub initial: DiacCluster,
    pub segments: Vec<(char, DiacCluster)>,
}

impl DiacWord {
    pub fn segment(word: &str) -> DiacWord {
        let mut w = DiacWord {
            initial: DiacCluster::default(),
            segments: Vec::new(),
        };
        for c in word.chars() {
            match Diacritic::from_char(c) {
                Some(d) => match w.segments.last_mut() {
                    Some((_, cluster)) => cluster.marks.push(d),
                    None => w.initial.marks.push(d),
                },
                None => w.segments.push((c, DiacCluster::default())),
            }
        }
        w
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for &m in &self.initial.marks {
            out.push(m.to_char());
        }
        for (letter, cluster) in &self.segments {
            out.push(*letter);
            for &m in &cluster.marks {
                out.push(m.to_char());
            }
        }
        out
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.segments.iter().map(|(c, _)| *c)
    }
}

/// Rewrite Alif Wasla (U+0671) to plain Alif. The short vowel riding a
/// word-initial Wasla is kept only when `keep_initial_vowel` is set (context
/// start); a Wasla after a prefix always goes bare, its vowel being elided
/// by the prefix vowel.
pub fn externalize_wasla(word: &str, keep_initial_vowel: bool) -> String {
    let mut w = DiacWord::segment(word);
    for (i, (letter, cluster)) in w.segments.iter_mut().enumerate() {
        if *letter != ALIF_WASLA {
            continue;
        }
        *letter = ALIF;
        if i > 0 || !keep_initial_vowel {
            cluster.marks.retain(|m| !m.is_short_vowel());
        }
    }
    w.serialize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::hsb::from_hsb;

    fn seg(hsb: &str) -> DiacWord {
        DiacWord::segment(&from_hsb(hsb).unwrap())
    }

    #[test]
    fn segments_katab_with_shadda() {
        // kat~ab: k(a) t(~a) b()
        let w = seg("kat~ab");
        assert!(w.initial.is_empty());
        let clusters: Vec<Vec<Diacritic>> =
            w.segments.iter().map(|(_, c)| c.marks.clone()).collect();
        assert_eq!(
            clusters,
            vec![
                vec![Diacritic::Fatha],
                vec![Diacritic::Shadda, Diacritic::Fatha],
                vec![],
            ]
        );
    }

    #[test]
    fn initial_orphan_is_kept() {
        let w = seg("ĩktAb");
        assert_eq!(w.initial.marks, vec![Diacritic::Kasratan]);
        assert_eq!(w.segments.len(), 4);
    }

    #[test]
    fn serialize_inverts_segment() {
        for hsb in ["kat~ab", "kata~b", "ĩktAb", "Aal.yaw.ma", "kuk~aAkãA", ""] {
            let raw = from_hsb(hsb).unwrap();
            assert_eq!(DiacWord::segment(&raw).serialize(), raw);
        }
    }

    #[test]
    fn canonical_cluster_rules() {
        // ~a is compatible either way round
        let c = DiacCluster { marks: vec![Diacritic::Fatha, Diacritic::Shadda] };
        assert_eq!(
            c.canonical(),
            Some(CanonicalCluster { shadda: true, vowel: Some(Diacritic::Fatha), dagger: false })
        );
        // two distinct vowel-slot marks are incompatible
        let c = DiacCluster { marks: vec![Diacritic::Fatha, Diacritic::Damma] };
        assert_eq!(c.canonical(), None);
        // exact duplicates collapse to one
        let c = DiacCluster { marks: vec![Diacritic::Damma, Diacritic::Damma] };
        assert_eq!(c.canonical().unwrap().vowel, Some(Diacritic::Damma));
        // dagger rides Fatha or Shadda, not other vowels
        let c = DiacCluster { marks: vec![Diacritic::Kasra, Diacritic::DaggerAlif] };
        assert_eq!(c.canonical(), None);
        let c = DiacCluster { marks: vec![Diacritic::Shadda, Diacritic::DaggerAlif] };
        assert!(c.canonical().is_some());
    }

    #[test]
    fn externalize_wasla_modes() {
        let internal = from_hsb("Äal.yaw.ma").unwrap();
        assert_eq!(externalize_wasla(&internal, true), from_hsb("Aal.yaw.ma").unwrap());
        assert_eq!(externalize_wasla(&internal, false), from_hsb("Al.yaw.ma").unwrap());
        // a Wasla after a prefix goes bare even at context start
        let prefixed = from_hsb("waÄal.yaw.mi").unwrap();
        assert_eq!(externalize_wasla(&prefixed, true), from_hsb("waAl.yaw.mi").unwrap());
    }
}
