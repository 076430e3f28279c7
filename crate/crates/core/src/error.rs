use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation at byte {pos}: {reason}")]
    CycleSyntax { pos: usize, reason: &'static str },
    #[error("point {point} outside 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be at least {min}, got {n}")]
    DegreeTooSmall { n: usize, min: usize },
    #[error("malformed word: {0}")]
    WordSyntax(String),
    #[error("letter {letter} outside 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("malformed ideal spec: {0}")]
    IdealSyntax(String),
    #[error("span ({start},{extent}) does not fit in a word of length {len}")]
    SpanOutOfBounds { start: usize, extent: usize, len: usize },
    #[error("spans do not overlap")]
    NoOverlap,
    #[error("undecided at cap: congruence class grew past {cap} members")]
    Undecided { cap: usize },
    #[error("hypotheses unmet: {0}")]
    Hypotheses(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("constructed witness failed verification: {0}")]
    WitnessRejected(String),
}
