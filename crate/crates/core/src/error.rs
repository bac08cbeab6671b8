use thiserror::Error;

/// Errors raised by the group, field and design routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image list is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group is not transitive")]
    Intransitive,

    #[error("point set is not invariant under the group")]
    NotInvariant,

    #[error("{what} exceeds the configured bound of {bound}")]
    BoundExceeded { what: &'static str, bound: u128 },

    #[error("subgroup is not contained in the group")]
    NotASubgroup,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p^d overflows 63 bits (p = {p}, d = {d})")]
    FieldTooLarge { p: u64, d: u32 },

    #[error("field elements come from different contexts")]
    ContextMismatch,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("pair {{{0}, {1}}} is not covered by any line")]
    UncoveredPair(usize, usize),

    #[error("pair {{{0}, {1}}} is covered by more than one line")]
    DoublyCoveredPair(usize, usize),

    #[error("line {0:?} has fewer than two points")]
    ShortLine(Vec<usize>),

    #[error("group does not preserve the line set")]
    NotAutomorphisms,

    #[error("Property (*) fails at (u, v, w) = ({u}, {v}, {w})")]
    PropertyStarFails { u: usize, v: usize, w: usize },

    #[error("group is not extremely primitive")]
    NotExtremelyPrimitive,

    #[error("group is not transitive on lines")]
    NotLineTransitive,

    #[error("{0:?} is not a line of the space")]
    NotALine(Vec<usize>),

    #[error("inner space is not invariant under the induced line stabiliser")]
    InnerNotInvariant,

    #[error("space is not a refinement of the parent space")]
    NotARefinement,

    #[error("subgroup search failed: {0}")]
    SearchFailed(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
