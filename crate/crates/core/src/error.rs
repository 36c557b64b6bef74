use core::fmt;

/// Errors produced by the core routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BottError {
    /// Vertex count outside `1..=64`.
    InvalidSize(usize),
    /// Declared size does not match the supplied row data.
    DimensionMismatch { expected: usize, found: usize },
    /// Two operands have different vertex counts.
    SizeMismatch { left: usize, right: usize },
    /// The matrix has a nonzero diagonal entry or a directed cycle.
    NotBott,
    /// A vertex index is out of range.
    VertexOutOfRange { vertex: usize, n: usize },
    /// A map is not a bijection of `0..n`.
    InvalidPermutation,
    /// The operation's precondition does not hold.
    PreconditionViolated(&'static str),
    /// The Bott-class closure grew past its cap.
    OrbitBudgetExceeded { cap: usize },
    /// The null space is too large to enumerate.
    KernelTooLarge { dim: usize, max: usize },
    /// Too many level sets for the cut-rank profile.
    TooManyLevels { levels: usize, max: usize },
    /// The routine only supports matrices up to a smaller size.
    TooLarge { n: usize, max: usize },
    /// A cohomology ring needs a strictly upper triangular matrix.
    NotStrictlyUpper,
    /// No input was supplied.
    EmptyInput,
}

impl BottError {
    /// Whether the error comes from a resource budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            BottError::OrbitBudgetExceeded { .. }
                | BottError::KernelTooLarge { .. }
                | BottError::TooManyLevels { .. }
                | BottError::TooLarge { .. }
        )
    }
}

impl fmt::Display for BottError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BottError::InvalidSize(n) => write!(f, "vertex count {n} is outside 1..=64"),
            BottError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} rows of {expected} bits, found {found}")
            }
            BottError::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            BottError::NotBott => f.write_str("not a Bott matrix (the digraph has a directed cycle)"),
            BottError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            BottError::InvalidPermutation => f.write_str("not a permutation"),
            BottError::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            BottError::OrbitBudgetExceeded { cap } => {
                write!(f, "Bott class closure exceeded {cap} forms")
            }
            BottError::KernelTooLarge { dim, max } => {
                write!(f, "null space of dimension {dim} exceeds enumeration limit {max}")
            }
            BottError::TooManyLevels { levels, max } => {
                write!(f, "{levels} level sets exceed the cut-rank limit {max}")
            }
            BottError::TooLarge { n, max } => write!(f, "{n} vertices exceed the limit {max}"),
            BottError::NotStrictlyUpper => f.write_str("matrix is not strictly upper triangular"),
            BottError::EmptyInput => f.write_str("empty input"),
        }
    }
}

impl core::error::Error for BottError {}
