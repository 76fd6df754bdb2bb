use std::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Bit width outside the supported 1..=64 range.
    InvalidBitWidth { width: u32 },
    /// Value does not fit in the requested bit width.
    ValueTooWide { value: u64, width: u32 },
    /// Attempted to read past the declared end of a bitstream.
    BitstreamOverrun { requested: u32, remaining: u64 },
    /// Edge endpoint outside the declared node count.
    NodeOutOfRange { index: usize, nodes: usize },
    /// A graph must have at least one node.
    InvalidNodeCount,
    /// Malformed edge-list text; `line` is 1-based.
    EdgeListParse { line: usize, reason: String },
    /// Edge-list text carries no `n <count>` header and no count was supplied.
    MissingNodeCount,
    /// Edge probability outside [0, 1].
    InvalidProbability { prob: f64 },
    /// Requested edge count cannot be produced for the given node count.
    InfeasibleEdgeTarget { edges: u64, nodes: usize },
    /// Pattern dictionary violates its structural rules.
    InvalidDictionary { reason: String },
    /// A group or pattern count that must be a power of two is not.
    NotPowerOfTwo { what: &'static str, value: u64 },
    /// Declared match count exceeds the number of chunks.
    MatchCountExceedsChunks { matches: u64, chunks: u64 },
    /// Total match count disagrees with the per-group counts.
    MatchSumMismatch { matches: u64, high: u64, low: u64 },
    /// Per-group match counts disagree with the chunk count.
    ChunkCountMismatch { stated: u64, expected: u64 },
    /// Serialized container is malformed or inconsistent.
    CorruptContainer { reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBitWidth { width } => {
                write!(f, "bit width {width} outside 1..=64")
            }
            Error::ValueTooWide { value, width } => {
                write!(f, "value {value:#x} does not fit in {width} bits")
            }
            Error::BitstreamOverrun {
                requested,
                remaining,
            } => {
                write!(
                    f,
                    "bitstream overrun: requested {requested} bits, {remaining} remain"
                )
            }
            Error::NodeOutOfRange { index, nodes } => {
                write!(f, "node index {index} out of range for {nodes} nodes")
            }
            Error::InvalidNodeCount => write!(f, "node count must be at least 1"),
            Error::EdgeListParse { line, reason } => {
                write!(f, "edge list line {line}: {reason}")
            }
            Error::MissingNodeCount => {
                write!(f, "node count unknown: no `n <count>` header and no flag")
            }
            Error::InvalidProbability { prob } => {
                write!(f, "edge probability {prob} outside [0, 1]")
            }
            Error::InfeasibleEdgeTarget { edges, nodes } => {
                write!(f, "cannot place {edges} edges among {nodes} nodes")
            }
            Error::InvalidDictionary { reason } => write!(f, "invalid dictionary: {reason}"),
            Error::NotPowerOfTwo { what, value } => {
                write!(f, "{what} must be a power of two, got {value}")
            }
            Error::MatchCountExceedsChunks { matches, chunks } => {
                write!(f, "match count {matches} exceeds chunk count {chunks}")
            }
            Error::MatchSumMismatch {
                matches,
                high,
                low,
            } => {
                write!(
                    f,
                    "match count {matches} != high {high} + low {low} group counts"
                )
            }
            Error::ChunkCountMismatch { stated, expected } => {
                write!(f, "chunk count {stated} does not match expected {expected}")
            }
            Error::CorruptContainer { reason } => write!(f, "corrupt container: {reason}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
