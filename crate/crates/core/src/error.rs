use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertices {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("vertices {0} and {1} share the same point")]
    DuplicatePoint(usize, usize),
    #[error("bad edge: {0}")]
    BadEdge(String),
    #[error("shear by {0} leaves colliding second coordinates")]
    BadShear(Rat),
    #[error("product placement has colliding second coordinates; choose different scale factors")]
    CoordinateCollision,
    #[error("graph has no coordinates (raw-slope fixture)")]
    NoCoordinates,
    #[error("random generation failed: {0}")]
    GenerationFailed(String),
    #[error("direction is not generic: vertices {0} and {1} tie")]
    NonGenericDirection(usize, usize),
    #[error("invalid vertex ordering: {0}")]
    BadOrdering(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("generator count mismatch in degree {degree}: expected {expected}, found {found}")]
    CountMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("element is not a member: divisibility fails on edge {0}-{1}")]
    NonMember(usize, usize),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether the error is caused by the input rather than by a bug or a
    /// violated property.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::InternalInconsistency(_)
                | Error::CountMismatch { .. }
                | Error::NonMember(..)
                | Error::PropertyViolated(_)
        )
    }
}
