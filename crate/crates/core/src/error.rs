use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("illegal character {ch:?} at line {line}, column {column}")]
    IllegalCharacter { ch: char, line: usize, column: usize },
    #[error("index {index} out of range for size {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("sign vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("matrix contains a zero entry; a strict sign pattern is required")]
    NotStrict,
    #[error("sign vector {0} is not of full support")]
    NotFullSupport(usize),
    #[error("rank threshold {0} is not supported here")]
    UnsupportedRank(usize),
    #[error("invalid bound parameters m = {m}, d = {d}")]
    InvalidBound { m: usize, d: usize },
    #[error("integer overflow")]
    Overflow,
    #[error("line {0} is degenerate: a = b = 0")]
    DegenerateLine(usize),
    #[error("lines {0} and {1} are identical")]
    IdenticalLines(usize, usize),
    #[error("lines {0} and {1} are parallel")]
    ParallelLines(usize, usize),
    #[error("arrangement is not uniform")]
    NotUniform,
    #[error("arrangement has no lines")]
    EmptyArrangement,
    #[error("oracle supports at most {limit} rows, got {rows}")]
    OracleLimit { rows: usize, limit: usize },
    #[error("invalid realization: {0}")]
    InvalidRealization(&'static str),
}
