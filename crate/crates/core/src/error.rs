use crate::point::Point;
use core::fmt;

/// Errors shared by the construction, analysis and transform operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The ambient dimension is zero, or a coordinate vector has the wrong
    /// length for the structure it is used with.
    DimensionMismatch { expected: usize, found: usize },
    /// A period vector has the wrong length or contains a zero entry.
    InvalidPeriod,
    /// A window corner pair violates `lo < hi` on some axis.
    InvalidWindow,
    /// Canonicalization found the same translate twice.
    DuplicateTranslate(Point),
    /// A sliding map sent two distinct translates to the same point.
    TranslateCollision(Point),
    /// A pair operation was given the same point twice.
    IdenticalPoints(Point),
    /// The operation is only defined for periodic sets.
    NotPeriodic,
    /// The operation is only defined for finite sets.
    NotFinite,
    /// An axis index is out of range for the ambient dimension.
    InvalidAxis { axis: usize, dim: usize },
    /// A grid or summation would exceed the configured cell budget.
    GridTooLarge { cells: u128, budget: u128 },
    /// The cutoff is too small for the requested tail estimate.
    CutoffTooSmall { cutoff: u32, min: u32 },
    /// Two translates in scope fail the integer-gap orthogonality test.
    OrthogonalityViolation { first: Point, second: Point },
    /// A designated translate is not a member of the set.
    NotInSet(Point),
    /// The designated pair already differs by an integer in the first
    /// coordinate, so there is no residue class to move.
    IntegerGap { first: Point, second: Point },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidPeriod => write!(
                f,
                "period entries (one per axis) and grid denominators must be positive"
            ),
            Error::InvalidWindow => write!(f, "window corners must satisfy lo < hi on every axis"),
            Error::DuplicateTranslate(p) => write!(f, "duplicate translate {p}"),
            Error::TranslateCollision(p) => write!(f, "slide maps two translates onto {p}"),
            Error::IdenticalPoints(p) => write!(f, "pair operation needs distinct points, got {p} twice"),
            Error::NotPeriodic => write!(f, "operation requires a periodic set"),
            Error::NotFinite => write!(f, "operation requires a finite set"),
            Error::InvalidAxis { axis, dim } => {
                write!(f, "axis {axis} is out of range for dimension {dim}")
            }
            Error::GridTooLarge { cells, budget } => {
                write!(f, "work size of {cells} cells exceeds the budget of {budget}")
            }
            Error::CutoffTooSmall { cutoff, min } => {
                write!(f, "cutoff {cutoff} is below the minimum {min} for this estimate")
            }
            Error::OrthogonalityViolation { first, second } => {
                write!(f, "translates {first} and {second} are not orthogonal")
            }
            Error::NotInSet(p) => write!(f, "{p} is not a translate of the set"),
            Error::IntegerGap { first, second } => {
                write!(f, "{first} and {second} already differ by an integer in coordinate 1")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
