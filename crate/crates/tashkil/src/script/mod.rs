//! Script-level primitives: character classification, diacritic-cluster
//! segmentation, normalization, and the HSB transliteration.

pub mod chars;
pub mod hsb;
pub mod normalize;
pub mod word;

pub use chars::{classify_char, is_arabic_letter, is_weak_letter, CharClass, Diacritic, LetterKind};
pub use hsb::{from_hsb, to_hsb};
pub use normalize::{dediacritize, diacritic_profile, normalize, DiacProfile};
pub use word::{externalize_wasla, DiacCluster, DiacWord};
