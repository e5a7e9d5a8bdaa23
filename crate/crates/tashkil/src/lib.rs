//! Arabic diacritics toolkit.
//!
//! Provides the building blocks for working with diacritics "in the wild":
//!
//! - [`script`]: character classes, diacritic-cluster segmentation,
//!   normalization, and the HSB transliteration.
//! - [`wellformed`]: a maximal-diacritization well-formedness checker with
//!   word-level and context-level rules.
//! - [`stats`]: mergeable corpus-level diacritic statistics.
//! - [`db`]: the morphological analysis database (TSV) and the repair pass
//!   that lifts convention-bound diacritizations to maximal form.
//! - [`rank`]: edit-profile computation and analysis ranking.
//! - [`context`]: the contextual post-edit cascade (Wasla externalization,
//!   boundary epenthesis).
//! - [`pipeline`]: tokenization, end-to-end diacritization, and evaluation.

pub mod context;
pub mod db;
pub mod pipeline;
pub mod rank;
pub mod script;
pub mod stats;
pub mod wellformed;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
