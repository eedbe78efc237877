use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty polyomino: at least one cell is required")]
    EmptyPolyomino,

    #[error("invalid shape spec: {0}")]
    InvalidShapeSpec(String),

    #[error("zeta parameter must satisfy lambda > 1, got {0}")]
    DivergentParameter(f64),

    #[error("window {window} too small: needs to cover the bounding box extent {needed}")]
    WindowTooSmall { window: u32, needed: u32 },

    #[error("target cells are occupied")]
    CollisionWithOccupiedCells,

    #[error("strip not found in polyomino")]
    StripNotFound,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("iteration cap {cap} exceeded (area {area}); dump: {dump}")]
    NonTermination { cap: u64, area: u64, dump: String },

    #[error("area {0} exceeds the exhaustive enumeration cap {1}")]
    AreaTooLarge(u32, u32),

    #[error("catalog for n={0} has fewer than two shapes")]
    NoTwoShapes(u32),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("minimizer outside the catalog orbits at n={n}, lambda={lambda}: {witness}")]
    TheoremViolation { n: u32, lambda: f64, witness: String },

    #[error("two critical lengths tie within margin: l={0} and l={1}")]
    AmbiguousMax(u32, u32),

    #[error("polyomino does not fit in an L/2 box for torus side {0}")]
    PolyominoTooLargeForTorus(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
