use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count {0} out of range (1..={1})")]
    VarCountOutOfRange(u32, u32),
    #[error("truth table length {got} does not match 2^{n}")]
    TableLengthMismatch { n: u32, got: usize },
    #[error("index {index} out of range for 2^{n} entries")]
    IndexOutOfRange { n: u32, index: u64 },
    #[error("segment size {s} out of range for n={n}")]
    SegmentOutOfRange { n: u32, s: u64 },
    #[error("functions must have the same variable count ({0} vs {1})")]
    ArityMismatch(u32, u32),
    #[error("conditioning on a never-true function")]
    ConditionNeverTrue,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("parameter {0} out of range for builtin `{1}`")]
    BuiltinParam(u64, &'static str),
    #[error("value {0} outside the unit interval")]
    OutsideUnitInterval(f64),
    #[error("bias component must satisfy -1 < eta < 1, got {0}")]
    BiasOutOfRange(f64),
    #[error("bits parameter {0} outside 8..=60")]
    BitsOutOfRange(u32),
    #[error("degenerate profile: {0}")]
    DegenerateProfile(&'static str),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("no irreducible modulus found for degree {0}")]
    NoIrreducible(u32),
    #[error("unsupported Niho degree {0} (need n in {{4, 8, 12}})")]
    UnsupportedNihoDegree(u32),
    #[error("entry at index {0} must be false before the flip")]
    FlipTargetNotFalse(u64),
    #[error("malformed truth-table text: {0}")]
    TableFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
