use crate::subset::Mask;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("player count {0} outside 1..={max}", max = crate::MAX_PLAYERS)]
    PlayerCount(usize),
    #[error("value table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    CoordinateRange { index: usize, value: f64 },
    #[error("degree {degree} outside 0..={n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("player index {player} outside 0..{n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("coalition {mask:#b} is not a subset of the {n}-player grand coalition")]
    SubsetOutOfRange { mask: Mask, n: usize },
    #[error("coalitions {s:#b} and {t:#b} must be disjoint")]
    OverlappingSubsets { s: Mask, t: Mask },
    #[error("projection source must have exactly degree+1 players (|S| = {card}, degree = {degree})")]
    ProjectionCardinality { card: usize, degree: usize },
    #[error("coefficient for coalition {mask:#b} lies above the stated degree {degree}")]
    DegreeExceeded { mask: Mask, degree: usize },
    #[error("mapping is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("exact dense solve is limited to n <= {max}, got n = {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("normal equations produced a singular system")]
    SingularSystem,
    #[error("moment order s = {s} must not exceed t = {t}")]
    MomentOrder { s: usize, t: usize },
    #[error("coefficient arguments out of range: s = {s}, t = {t}, n = {n}")]
    CoefficientRange { s: usize, t: usize, n: usize },
    #[error("moment sequence has {got} terms, needs at least {needed}")]
    InsufficientMoments { needed: usize, got: usize },
    #[error("interaction table has kind {got}, expected {expected}")]
    TableKind {
        expected: &'static str,
        got: &'static str,
    },
}
