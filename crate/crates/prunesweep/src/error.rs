use thiserror::Error;

/// Errors shared across the crate.
///
/// Domain errors (bad widths, out-of-range values) are kept separate from
/// budget errors so callers can tell "you asked for something meaningless"
/// apart from "you asked for something too large for an exhaustive sweep".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("case 0 is outside the pruning domain")]
    ZeroCase,

    #[error("prune level must be at least 1")]
    LevelTooSmall,

    #[error("width {width} is outside the supported range 1..={max}")]
    WidthOutOfRange { width: u8, max: u8 },

    #[error("width must be at least {min} here, got {width}")]
    WidthTooSmall { width: u8, min: u8 },

    #[error("value {value} does not fit in {width} binary digits")]
    ValueTooWide { value: u64, width: u8 },

    #[error("prefix is longer than the digit count {k}")]
    PrefixTooLong { k: u32 },

    #[error("prefix may contain only the characters '0' and '1'")]
    MalformedPrefix,

    #[error("digit count {k} exceeds the exhaustive sweep budget of {max}")]
    DigitBudget { k: u32, max: u32 },

    #[error("member {value} is outside {{1, ..., 2^{n} - 1}}")]
    MemberOutOfRange { value: u64, n: u8 },

    #[error("a solution set must be nonempty")]
    EmptySolutionSet,

    #[error("solution set has width {set}, expected {requested}")]
    WidthMismatch { set: u8, requested: u8 },

    #[error("exhaustive subset enumeration is capped at n = {max}, got n = {n}")]
    EnumerationBudget { n: u8, max: u8 },

    #[error("par ratio must be at least 1")]
    ParRatioTooSmall,

    #[error("arithmetic overflow while computing {what}")]
    Overflow { what: &'static str },

    #[error("graph construction is capped at width {max}, got {width}")]
    GraphBudget { width: u8, max: u8 },

    #[error("node {node} is not in the graph")]
    NodeNotInGraph { node: u64 },

    #[error("box decomposition at level {level} requires k >= {min}, got k = {k}")]
    BoxRange { level: u32, k: u8, min: u8 },

    #[error("box {which} is not defined at level {level}")]
    NoSuchBox { which: &'static str, level: u32 },

    #[error("no box decomposition is defined for prune level {level}")]
    BoxesUndefined { level: u32 },

    #[error("structure rule {rule} does not apply at level {level}")]
    RuleLevelMismatch { rule: &'static str, level: u32 },

    #[error("structure rule {rule} at level {level} requires k >= {min}, got k = {k}")]
    RuleRange {
        rule: &'static str,
        level: u32,
        k: u8,
        min: u8,
    },

    #[error("path count overflowed 128 bits")]
    PathCountOverflow,

    #[error("trace is not consistent with a run at level {level}: step {index} goes from {from} to {to}")]
    InconsistentTrace {
        level: u32,
        index: usize,
        from: u64,
        to: u64,
    },

    #[error("not a source-to-sink path in the joined graph: {reason}")]
    InvalidPath { reason: &'static str },

    #[error("search ceiling must be at least 2, got {f_max}")]
    SearchCeilingTooSmall { f_max: u64 },
}
