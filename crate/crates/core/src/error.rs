use thiserror::Error;

/// Which part of the quasi-1-plane definition a frame fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiFailure {
    /// Vertex with no successor.
    NotSerial(usize),
    /// Edge (a,b) whose converse is missing.
    NotSymmetric(usize, usize),
    /// Pair related by I^4 but not by I^2.
    O1Fails(usize, usize),
}

impl std::fmt::Display for QuasiFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuasiFailure::NotSerial(v) => write!(f, "not serial (vertex {v} has no successor)"),
            QuasiFailure::NotSymmetric(a, b) => {
                write!(f, "not symmetric (({a},{b}) present, ({b},{a}) missing)")
            }
            QuasiFailure::O1Fails(a, b) => {
                write!(f, "O1 fails (({a},{b}) in I^4 but not in I^2)")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("proper modalities are nonempty words over {{[], <>}}")]
    EmptyModality,
    #[error("frame has {n} vertices, exceeding the limit {max}")]
    FrameTooLarge { n: usize, max: usize },
    #[error("vertex {v} out of range for a frame with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("duplicate label {0:?} in two-sorted frame")]
    DuplicateLabel(String),
    #[error("unknown label {0:?} in incidence list")]
    UnknownLabel(String),
    #[error("not a quasi-1-plane: {0}")]
    NotQuasi(QuasiFailure),
    #[error("frame is not connected")]
    NotConnected,
    #[error("target is not an elliptic quasi-1-plane: {0}")]
    NotElliptic(String),
    #[error("morphisms from a 1-frame to a 2-frame are not defined")]
    SortMismatch,
    #[error("inner target and outer source differ; cannot compose")]
    ComposeMismatch,
    #[error("map is not total on the source carrier (size {expected}, got {got})")]
    MapNotTotal { expected: usize, got: usize },
    #[error("map sends {src} to {img}, outside the target carrier")]
    MapOutOfRange { src: usize, img: usize },
    #[error("map sends a point to a line or vice versa ({src} -> {img})")]
    MapSortViolation { src: usize, img: usize },
    #[error("morphism is not bounded: {0}")]
    NotBounded(String),
    #[error("valuation space of {space} exceeds the cap {cap}")]
    ValuationCap { space: u128, cap: u128 },
    #[error("subformula set has {0} elements, above the supported 64")]
    PhiTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the generator cap 13")]
    PrimeTooLarge(u64),
    #[error("windmill graphs need k >= 1")]
    ZeroWindmill,
    #[error("random frame size {0} exceeds the sampler cap 12")]
    SizeTooLarge(usize),
    #[error("sampling budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
    #[error("saturation needs rounds >= 1")]
    ZeroRounds,
    #[error("not currently a defect of this network")]
    NotADefect,
    #[error("network is not coherent: {0}")]
    NotCoherent(String),
    #[error("split filtration needs a projective source, got {0} I^2-class(es)")]
    SplitClassCount(usize),
    #[error("model valuation names vertex {v}, but the frame has {n} vertices")]
    ValuationOutOfRange { v: usize, n: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
