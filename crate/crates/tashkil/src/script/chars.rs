//! Character inventory: the nine diacritics, letter classes, and the
//! classification function every higher layer builds on.

/// The nine diacritics, in Unicode order (U+064B..U+0652, then U+0670).
///
/// The discriminant order is load-bearing: distribution vectors index by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diacritic {
    Fathatan,   // U+064B ً
    Dammatan,   // U+064C ٌ
    Kasratan,   // U+064D ٍ
    Fatha,      // U+064E َ
    Damma,      // U+064F ُ
    Kasra,      // U+0650 ِ
    Shadda,     // U+0651 ّ
    Sukun,      // U+0652 ْ
    DaggerAlif, // U+0670 ٰ
}

impl Diacritic {
    pub const ALL: [Diacritic; 9] = [
        Diacritic::Fathatan,
        Diacritic::Dammatan,
        Diacritic::Kasratan,
        Diacritic::Fatha,
        Diacritic::Damma,
        Diacritic::Kasra,
        Diacritic::Shadda,
        Diacritic::Sukun,
        Diacritic::DaggerAlif,
    ];

    pub fn from_char(c: char) -> Option<Diacritic> {
        Some(match c {
            '\u{064B}' => Diacritic::Fathatan,
            '\u{064C}' => Diacritic::Dammatan,
            '\u{064D}' => Diacritic::Kasratan,
            '\u{064E}' => Diacritic::Fatha,
            '\u{064F}' => Diacritic::Damma,
            '\u{0650}' => Diacritic::Kasra,
            '\u{0651}' => Diacritic::Shadda,
            '\u{0652}' => Diacritic::Sukun,
            '\u{0670}' => Diacritic::DaggerAlif,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            Diacritic::Fathatan => '\u{064B}',
            Diacritic::Dammatan => '\u{064C}',
            Diacritic::Kasratan => '\u{064D}',
            Diacritic::Fatha => '\u{064E}',
            Diacritic::Damma => '\u{064F}',
            Diacritic::Kasra => '\u{0650}',
            Diacritic::Shadda => '\u{0651}',
            Diacritic::Sukun => '\u{0652}',
            Diacritic::DaggerAlif => '\u{0670}',
        }
    }

    /// Index into [`Diacritic::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    /// One of the six vowel marks (short vowels and Tanwiyns).
    pub fn is_vowel(self) -> bool {
        matches!(
            self,
            Diacritic::Fathatan
                | Diacritic::Dammatan
                | Diacritic::Kasratan
                | Diacritic::Fatha
                | Diacritic::Damma
                | Diacritic::Kasra
        )
    }

    pub fn is_short_vowel(self) -> bool {
        matches!(self, Diacritic::Fatha | Diacritic::Damma | Diacritic::Kasra)
    }

    pub fn is_tanwiyn(self) -> bool {
        matches!(
            self,
            Diacritic::Fathatan | Diacritic::Dammatan | Diacritic::Kasratan
        )
    }

    /// Marks competing for the vowel slot of a cluster (vowels and Sukun).
    pub fn is_vowel_slot(self) -> bool {
        self.is_vowel() || self == Diacritic::Sukun
    }
}

/// Primary class of an Arabic letter.
///
/// `Sun`/`Moon` partition the consonants eligible to follow the definite
/// article. Waw and Yeh are consonantal there and carry `Moon`, even though
/// they also belong to the weak (elongation) set; see [`is_weak_letter`].
/// `Weak` is reserved for the letters that are never consonantal: plain
/// Alif, Alif Maqsura, and Alif Wasla.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterKind {
    Sun,
    Moon,
    Weak,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    ArabicLetter(LetterKind),
    ArabicDiacritic(Diacritic),
    Digit,
    Punctuation,
    Whitespace,
    Other,
}

pub const HAMZA: char = '\u{0621}'; // ء
pub const ALIF_MADDA: char = '\u{0622}'; // آ
pub const ALIF_HAMZA: char = '\u{0623}'; // أ
pub const WAW_HAMZA: char = '\u{0624}'; // ؤ
pub const ALIF_HAMZA_BELOW: char = '\u{0625}'; // إ
pub const YEH_HAMZA: char = '\u{0626}'; // ئ
pub const ALIF: char = '\u{0627}'; // ا
pub const TEH_MARBUTA: char = '\u{0629}'; // ة
pub const LAM: char = '\u{0644}'; // ل
pub const WAW: char = '\u{0648}'; // و
pub const ALIF_MAQSURA: char = '\u{0649}'; // ى
pub const YEH: char = '\u{064A}'; // ي
pub const ALIF_WASLA: char = '\u{0671}'; // ٱ

/// The coronal consonants that assimilate the article's Lam.
pub fn is_sun_letter(c: char) -> bool {
    matches!(
        c,
        '\u{062A}' | // ت
        '\u{062B}' | // ث
        '\u{062F}' | // د
        '\u{0630}' | // ذ
        '\u{0631}' | // ر
        '\u{0632}' | // ز
        '\u{0633}' | // س
        '\u{0634}' | // ش
        '\u{0635}' | // ص
        '\u{0636}' | // ض
        '\u{0637}' | // ط
        '\u{0638}' | // ظ
        '\u{0644}' | // ل
        '\u{0646}' // ن
    )
}

pub fn is_moon_letter(c: char) -> bool {
    matches!(
        c,
        HAMZA
            | ALIF_MADDA
            | ALIF_HAMZA
            | WAW_HAMZA
            | ALIF_HAMZA_BELOW
            | YEH_HAMZA
            | TEH_MARBUTA
            | WAW
            | YEH
            | '\u{0628}' | // ب
        '\u{062C}' | // ج
        '\u{062D}' | // ح
        '\u{062E}' | // خ
        '\u{0639}' | // ع
        '\u{063A}' | // غ
        '\u{0641}' | // ف
        '\u{0642}' | // ق
        '\u{0643}' | // ك
        '\u{0645}' | // م
        '\u{0647}' // ه
    )
}

/// The elongation letters that may appear bare inside a well-formed word:
/// Alif, Waw, Yeh, Alif Maqsura, and Alif Wasla.
pub fn is_weak_letter(c: char) -> bool {
    matches!(c, ALIF | WAW | YEH | ALIF_MAQSURA | ALIF_WASLA)
}

/// Any letter of the Arabic block (not restricted to the MSA inventory).
pub fn is_arabic_letter(c: char) -> bool {
    matches!(c as u32,
        0x0620..=0x063F | 0x0641..=0x064A // base letters (Tatweel excluded)
        | 0x066E..=0x066F                 // dotless beh/qaf
        | 0x0671..=0x06D3 | 0x06D5        // extended letters incl. Wasla
        | 0x06EE..=0x06EF
        | 0x06FA..=0x06FF
    )
}

pub fn is_arabic_digit(c: char) -> bool {
    matches!(c as u32, 0x0660..=0x0669 | 0x06F0..=0x06F9)
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{060C}' | // ، Arabic comma
            '\u{061B}' | // ؛ Arabic semicolon
            '\u{061F}' | // ؟ Arabic question mark
            '\u{066A}' | // ٪ Arabic percent sign
            '\u{06D4}' | // ۔ Arabic full stop
            '«' | '»' | '…' | '—' | '–' | '“' | '”' | '‘' | '’'
        )
}

/// Total classification over codepoints.
pub fn classify_char(c: char) -> CharClass {
    if let Some(d) = Diacritic::from_char(c) {
        return CharClass::ArabicDiacritic(d);
    }
    if is_arabic_letter(c) {
        let kind = if matches!(c, ALIF | ALIF_MAQSURA | ALIF_WASLA) {
            LetterKind::Weak
        } else if is_sun_letter(c) {
            LetterKind::Sun
        } else if is_moon_letter(c) {
            LetterKind::Moon
        } else {
            LetterKind::Other
        };
        return CharClass::ArabicLetter(kind);
    }
    if c.is_ascii_digit() || is_arabic_digit(c) {
        return CharClass::Digit;
    }
    if c.is_whitespace() {
        return CharClass::Whitespace;
    }
    if is_punctuation(c) {
        return CharClass::Punctuation;
    }
    CharClass::Other
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shin_is_sun() {
        assert_eq!(
            classify_char('\u{0634}'),
            CharClass::ArabicLetter(LetterKind::Sun)
        );
    }

    #[test]
    fn diacritics_round_trip_in_unicode_order() {
        let mut prev = None;
        for d in Diacritic::ALL {
            assert_eq!(Diacritic::from_char(d.to_char()), Some(d));
            if let Some(p) = prev {
                assert!(p < d.to_char());
            }
            prev = Some(d.to_char());
        }
    }

    #[test]
    fn sun_moon_partition_is_disjoint_and_covers_consonants() {
        for c in ('\u{0621}'..='\u{064A}').chain(std::iter::once(ALIF_WASLA)) {
            // restrict to the classical inventory; the extension letters
            // U+063B..U+063F are valid letters but outside both classes
            if !is_arabic_letter(c) || matches!(c, '\u{063B}'..='\u{063F}') {
                continue;
            }
            assert!(
                !(is_sun_letter(c) && is_moon_letter(c)),
                "{c:?} in both classes"
            );
            if !matches!(c, ALIF | ALIF_MAQSURA | ALIF_WASLA) {
                assert!(
                    is_sun_letter(c) || is_moon_letter(c),
                    "{c:?} in neither class"
                );
            }
        }
    }

    #[test]
    fn weak_set_is_exactly_five() {
        let weak: Vec<char> = ('\u{0600}'..='\u{06FF}').filter(|&c| is_weak_letter(c)).collect();
        assert_eq!(weak, vec![ALIF, WAW, ALIF_MAQSURA, YEH, ALIF_WASLA]);
    }

    #[test]
    fn classify_is_total() {
        for c in ['a', '٣', '5', '،', '?', ' ', '\u{0653}', '🙂', ALIF] {
            let _ = classify_char(c); // must not panic, any class is fine
        }
        assert_eq!(classify_char('٣'), CharClass::Digit);
        assert_eq!(classify_char('،'), CharClass::Punctuation);
        assert_eq!(classify_char(' '), CharClass::Whitespace);
    }
}
