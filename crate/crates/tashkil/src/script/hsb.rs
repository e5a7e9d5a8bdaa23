//! HSB transliteration, loaded from the table shipped in `data/hsb_map.tsv`.
//!
//! The mapping is a bijection over the MSA inventory (letters, the nine
//! diacritics, Alif Wasla). Whitespace and digits pass through; anything
//! else raises [`Error::Mapping`] rather than silently corrupting text.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::{Error, Result};

const TABLE: &str = include_str!("../../data/hsb_map.tsv");

struct Maps {
    ar2hsb: HashMap<char, char>,
    hsb2ar: HashMap<char, char>,
}

fn maps() -> &'static Maps {
    static MAPS: OnceLock<Maps> = OnceLock::new();
    MAPS.get_or_init(|| {
        let mut ar2hsb = HashMap::new();
        let mut hsb2ar = HashMap::new();
        for line in TABLE.lines() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(ar), Some(hsb)) = (fields.next(), fields.next()) else {
                panic!("malformed hsb_map.tsv line: {line:?}");
            };
            let (ar, hsb) = (single(ar), single(hsb));
            assert!(ar2hsb.insert(ar, hsb).is_none(), "duplicate Arabic {ar:?}");
            assert!(hsb2ar.insert(hsb, ar).is_none(), "duplicate HSB {hsb:?}");
        }
        Maps { ar2hsb, hsb2ar }
    })
}

fn single(s: &str) -> char {
    let mut it = s.chars();
    let c = it.next().expect("empty field in hsb_map.tsv");
    assert!(it.next().is_none(), "multi-char field {s:?} in hsb_map.tsv");
    c
}

fn convert(text: &str, table: &HashMap<char, char>) -> Result<String> {
    text.chars()
        .map(|c| {
            if let Some(&m) = table.get(&c) {
                Ok(m)
            } else if c.is_whitespace()
                || c.is_ascii_digit()
                || super::chars::is_arabic_digit(c)
                || matches!(super::chars::classify_char(c), super::chars::CharClass::Punctuation)
            {
                // punctuation that is not itself a symbol of the table
                // (table symbols like `.` and `~` are consumed above)
                Ok(c)
            } else {
                Err(Error::Mapping(c))
            }
        })
        .collect()
}

pub fn to_hsb(text: &str) -> Result<String> {
    convert(text, &maps().ar2hsb)
}

pub fn from_hsb(text: &str) -> Result<String> {
    convert(text, &maps().hsb2ar)
}

/// True if the char is one of the 36 HSB letter symbols (used by the CLI to
/// decide whether a whitespace chunk is transliterable text).
pub fn is_hsb_letter(c: char) -> bool {
    maps()
        .hsb2ar
        .get(&c)
        .is_some_and(|ar| super::chars::is_arabic_letter(*ar))
}
