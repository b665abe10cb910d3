use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
///
/// Invariant violations that can only arise from a bug inside the crate are
/// reported as [`Error::Internal`]; everything else names the offending
/// input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {graph} vertices but the set has {set} elements")]
    DimensionMismatch { set: usize, graph: usize },

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("loops are not allowed in this graph")]
    LoopsForbidden,

    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("epsilon must satisfy 0 < epsilon < 1, got {0}")]
    EpsilonOutOfRange(String),

    #[error("arrangement families {got:?} do not match the required {expected:?}")]
    WrongFamilies {
        expected: Vec<&'static str>,
        got: Vec<String>,
    },

    #[error("point ({x}, {y}) is not covered by a supplied {family} line")]
    UncoveredPoint {
        x: String,
        y: String,
        family: &'static str,
    },

    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { got: usize, min: usize },

    #[error("pattern has no coordinate with two distinct values")]
    PatternWithoutExtent,

    #[error("pattern point has {got} coordinates, expected {expected}")]
    PatternDimensionMismatch { expected: usize, got: usize },

    #[error("duplicate point in pattern")]
    DuplicatePatternPoint,

    #[error("normal vector must be nonzero")]
    ZeroNormal,

    #[error("materializing {cells} cells exceeds the cap of {cap}")]
    SizeCapExceeded { cells: u128, cap: u64 },

    #[error("need at least {min} point sets of increasing size, got {got}")]
    NotEnoughSizes { got: usize, min: usize },

    #[error("infeasible instance spec: {0}")]
    InfeasibleSpec(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
