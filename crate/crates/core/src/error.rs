use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
///
/// Variants are grouped by subsystem; the CLI maps them onto exit codes
/// (degenerate geometry, solver failures, resolution problems).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("non-finite coordinate {0}")]
    NonFiniteCoordinate(f64),
    #[error("degenerate triangle (area {area:.3e} below tolerance {tolerance:.3e})")]
    DegenerateTriangle { area: f64, tolerance: f64 },
    #[error("input sites are collinear")]
    CollinearInput,
    #[error("duplicate sites at indices {0} and {1}")]
    DuplicateSites(usize, usize),
    #[error("triangulation produced inconsistent topology: {0}")]
    BrokenTopology(String),
    #[error("lattice domain has no cells")]
    EmptyLattice,
    #[error("cells {0:?} and {1:?} touch only at a corner")]
    CornerTouchingCells((i64, i64), (i64, i64)),
    #[error("triangle classification conflict: {0}")]
    ClassificationConflict(String),
    #[error("circumcenter lies outside the triangle; use quadrature")]
    ObtuseTriangle,
    #[error("triangle is not obtuse")]
    NotObtuse,
    #[error("quadrature tolerance {tol:.3e} not reached at depth {depth}")]
    ToleranceNotReached { tol: f64, depth: usize },
    #[error("argument {0} outside the profile domain")]
    DomainError(f64),
    #[error("side lengths ({0}, {1}, {2}) are not inscribable in the unit circle with interior circumcenter")]
    NotInscribable(f64, f64, f64),
    #[error("domain is empty")]
    EmptyDomain,
    #[error("discrete boundary is degenerate (fewer than 3 non-collinear points)")]
    DegenerateBoundary,
    #[error("nearest-boundary-point check failed at {0:?}")]
    NearestNotVertex(crate::geometry::Point),
    #[error("grid spacing {h} too coarse for feature scale {feature}")]
    ResolutionTooCoarse { h: f64, feature: f64 },
    #[error("solver did not converge within {0} iterations")]
    NotConverged(usize),
    #[error("p = {0} is outside the admissible range")]
    InvalidP(f64),
    #[error("point at distance {dist} lies outside the ball of radius {radius}")]
    OutsideBall { dist: f64, radius: f64 },
    #[error("field is identically zero")]
    ZeroField,
    #[error("empty list")]
    EmptyList,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no cell is compactly contained at eps = {0}")]
    EmptyResult(f64),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
