use crate::wellformed::ViolationCode;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A character outside the transliteration inventory.
    #[error("unmappable character {0:?} in transliteration")]
    Mapping(char),

    /// A malformed record in a data file.
    #[error("line {line}: {msg}")]
    Load { line: usize, msg: String },

    /// A database entry that fails well-formedness validation.
    #[error("analysis {entry:?} fails well-formedness: {codes:?}")]
    Validation {
        entry: String,
        codes: Vec<ViolationCode>,
    },

    /// An analysis that still fails validation after the repair pass.
    #[error("cannot repair analysis {entry:?}: {codes:?}")]
    Repair {
        entry: String,
        codes: Vec<ViolationCode>,
    },

    /// Ranking or oracle selection over an empty candidate list.
    #[error("empty candidate list")]
    EmptyCandidates,

    /// A database flag with no rule in the contextual post-edit cascade.
    #[error("unknown context flag %{flag} on {word:?}")]
    UnknownFlag { flag: String, word: String },

    /// Token-count mismatch between hypothesis and reference.
    #[error("line {line}: token count mismatch (hypothesis {hyp}, reference {reference}), first divergence at token {index}")]
    Alignment {
        line: usize,
        hyp: usize,
        reference: usize,
        index: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
