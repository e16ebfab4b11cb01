use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong while building or querying the structures
/// of this crate.
///
/// Element, dart and vertex indices are reported as they are stored
/// (0-based). Levels of a tower are also 0-based here; `Display` prints
/// them 1-based, the way they are numbered in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The multiplication table is not `n × n` or has an entry outside `0..n`.
    BadTable {
        row: usize,
        col: usize,
    },
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
    NoIdentity,
    NoInverse {
        element: usize,
    },
    /// A permutation given as an image list is not a bijection of `0..n`.
    BadPermutation {
        index: usize,
    },
    ElementOutOfRange {
        element: usize,
        order: usize,
    },
    /// A list of elements is not closed; `a ∘ b` (or `a⁻¹` when `a == b`
    /// and `inverse` is set) falls outside it.
    NotASubgroup {
        a: usize,
        b: usize,
        inverse: bool,
    },
    NotNormal {
        conjugator: usize,
        element: usize,
    },
    NotAHomomorphism {
        a: usize,
        b: usize,
    },
    UnknownGenerator {
        generator: usize,
    },
    EmptyGraph,
    VertexOutOfRange {
        vertex: usize,
    },
    BadInvolution {
        dart: usize,
    },
    Disconnected {
        vertex: usize,
    },
    NotALoop {
        start: usize,
        end: usize,
    },
    NotIncident {
        position: usize,
    },
    ImageCountMismatch {
        expected: usize,
        found: usize,
    },
    NotSurjective,
    NotRegular,
    /// The star of this cover vertex does not map bijectively onto the
    /// star of its image.
    NotACovering {
        vertex: usize,
    },
    EmptyTower,
    BondNotSurjective {
        level: usize,
    },
    Incompatible {
        level: usize,
        generator: usize,
    },
    /// Component `level + 1` of a tuple does not project to component `level`.
    IncompatibleTuple {
        level: usize,
    },
    DepthExceeded {
        depth: usize,
        available: usize,
    },
    DepthMismatch {
        left: usize,
        right: usize,
    },
    NotDense {
        level: usize,
    },
    LevelOrder {
        lower: usize,
        upper: usize,
    },
    /// Two routes to the same quantity disagreed. Always a bug.
    Inconsistent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadTable { row, col } => {
                write!(f, "multiplication table entry ({row}, {col}) is missing or out of range")
            }
            Error::NotAssociative { a, b, c } => {
                write!(f, "not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")
            }
            Error::NoIdentity => f.write_str("table has no two-sided identity"),
            Error::NoInverse { element } => write!(f, "element {element} has no inverse"),
            Error::BadPermutation { index } => {
                write!(f, "permutation {index} is not a bijection of 0..n")
            }
            Error::ElementOutOfRange { element, order } => {
                write!(f, "element {element} out of range for a group of order {order}")
            }
            Error::NotASubgroup { a, b, inverse: false } => {
                write!(f, "not a subgroup: {a}·{b} is missing")
            }
            Error::NotASubgroup { a, inverse: true, .. } => {
                write!(f, "not a subgroup: inverse of {a} is missing")
            }
            Error::NotNormal { conjugator, element } => {
                write!(f, "subgroup is not normal: conjugating {element} by {conjugator} leaves it")
            }
            Error::NotAHomomorphism { a, b } => {
                write!(f, "map is not a homomorphism at ({a}, {b})")
            }
            Error::UnknownGenerator { generator } => write!(f, "unknown generator {generator}"),
            Error::EmptyGraph => f.write_str("graph has no vertices"),
            Error::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Error::BadInvolution { dart } => {
                write!(f, "dart {dart}: reversal is not a fixed-point-free involution swapping ends")
            }
            Error::Disconnected { vertex } => {
                write!(f, "graph is disconnected: vertex {vertex} is unreachable from the base")
            }
            Error::NotALoop { start, end } => {
                write!(f, "path runs from {start} to {end}, not a loop at the base vertex")
            }
            Error::NotIncident { position } => {
                write!(f, "dart at position {position} does not start where the previous one ends")
            }
            Error::ImageCountMismatch { expected, found } => {
                write!(f, "expected {expected} generator images, found {found}")
            }
            Error::NotSurjective => f.write_str("generator images do not generate the group, so the cover is disconnected"),
            Error::NotRegular => f.write_str("cover is not regular"),
            Error::NotACovering { vertex } => {
                write!(f, "not a covering map: star bijection fails at vertex {vertex}")
            }
            Error::EmptyTower => f.write_str("tower has no levels"),
            Error::BondNotSurjective { level } => {
                write!(f, "bond from level {} onto level {} is not surjective", level + 2, level + 1)
            }
            Error::Incompatible { level, generator } => write!(
                f,
                "generator {generator}: image at level {} does not project to its image at level {}",
                level + 2,
                level + 1
            ),
            Error::IncompatibleTuple { level } => {
                write!(f, "component at level {} does not project to the component at level {}", level + 2, level + 1)
            }
            Error::DepthExceeded { depth, available } => {
                write!(f, "depth {depth} exceeds tower depth {available}")
            }
            Error::DepthMismatch { left, right } => {
                write!(f, "fibre elements of depths {left} and {right} cannot be combined")
            }
            Error::NotDense { level } => {
                write!(f, "no dense leaf: generator images do not generate level {}", level + 1)
            }
            Error::LevelOrder { lower, upper } => {
                write!(f, "level pair ({}, {}) is out of order", lower + 1, upper + 1)
            }
            Error::Inconsistent(what) => write!(f, "internal inconsistency: {what}"),
        }
    }
}

impl core::error::Error for Error {}
