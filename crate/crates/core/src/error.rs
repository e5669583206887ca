//! Error type shared by all solver and laboratory modules.

use thiserror::Error;

/// Errors raised by geometry construction, solvers, and the
/// reconstruction/verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// The radius map of a star-shaped surface is not strictly positive.
    #[error("radius map is not strictly positive (min r = {min_r:.6e})")]
    NonPositiveRadius { min_r: f64 },

    /// The surface diameter exceeds the declared a priori bound.
    #[error("surface diameter {diameter:.6e} exceeds declared bound {bound:.6e}")]
    DiameterExceeded { diameter: f64, bound: f64 },

    /// Requested mesh resolution is below the supported minimum, or the
    /// solved system fails its off-node boundary-condition re-check.
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    /// A local boundary patch violates the distance-to-Dirichlet precondition.
    #[error(
        "patch at distance {distance:.6e} from the Dirichlet part violates radius {radius:.6e}"
    )]
    PatchTouchesDirichlet { distance: f64, radius: f64 },

    /// A local patch contains no quadrature samples.
    #[error("patch is empty: {0}")]
    EmptyPatch(String),

    /// Generic argument-range violation for special functions and moduli.
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),

    /// Fundamental-solution kernel evaluated at coincident points.
    #[error("coincident kernel points (|x - y| = {distance:.3e})")]
    CoincidentPoints { distance: f64 },

    /// The collocation system is numerically singular (interior resonance).
    #[error("near-singular collocation system, condition estimate {cond_estimate:.3e}")]
    SingularSystem { cond_estimate: f64 },

    /// The series tail does not meet the truncation tolerance at n_max.
    #[error("series truncation insufficient: tail {tail:.3e} at n = {n_max}")]
    TruncationInsufficient { tail: f64, n_max: usize },

    /// Field evaluation requested at a point inside the obstacle.
    #[error("evaluation point ({0:.4}, {1:.4}, {2:.4}) lies inside the obstacle")]
    PointInsideObstacle(f64, f64, f64),

    /// Two far-field patterns live on different quadrature grids.
    #[error("sphere-grid mismatch: {0}")]
    GridMismatch(String),

    /// An evaluation sphere or annulus radius does not enclose the obstacle.
    #[error("radius {radius:.6e} does not enclose the obstacle (needs > {required:.6e})")]
    RadiusInsideObstacle { radius: f64, required: f64 },

    /// The regularized continuation cannot reach the discrepancy target.
    #[error("ill-conditioned continuation fit: {0}")]
    IllConditionedFit(String),

    /// Every reconstruction node fell below the trust threshold.
    #[error("all nodes masked (threshold {threshold:.3e})")]
    AllMasked { threshold: f64 },

    /// Not enough records for a stability fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A probe ball intersects the obstacle closure.
    #[error("ball of radius {radius:.6e} at distance {clearance:.6e} touches the obstacle")]
    BallTouchesObstacle { radius: f64, clearance: f64 },

    /// A three-spheres mass vanished, so the log-convexity ratio is undefined.
    #[error("degenerate ball masses: {0}")]
    DegenerateMasses(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
