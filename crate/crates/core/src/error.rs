use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("expected a hexagon, got a polygon with {0} corners")]
    Arity(usize),

    #[error("polygon is not simple")]
    NotSimple,

    #[error("singular basis: determinant is zero")]
    SingularBasis,

    /// The construction left its moduli space. Carries the first pair of
    /// crossing sides when the failure is a self-intersection.
    #[error("parameters outside the moduli space: {reason}")]
    ModuliViolation {
        reason: String,
        crossing: Option<(usize, usize)>,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("ambiguous clustering: points {distance:e} apart, inside the guard band ({tol:e}, {guard:e})")]
    ToleranceAmbiguity { distance: f64, tol: f64, guard: f64 },

    #[error("accuracy failure: {0}")]
    Accuracy(String),

    #[error("surface passes within {distance:e} of the projection pole; {suggestion}")]
    Pole { distance: f64, suggestion: String },

    #[error("incompatible moduli: tiling reduces to {tiling}, embedding reduces to {embedding}")]
    Incompatible { tiling: String, embedding: String },

    #[error("document error at {field}: {message}")]
    Document { field: String, message: String },
}

impl Error {
    pub(crate) fn moduli(reason: impl Into<String>) -> Self {
        Error::ModuliViolation {
            reason: reason.into(),
            crossing: None,
        }
    }
}
