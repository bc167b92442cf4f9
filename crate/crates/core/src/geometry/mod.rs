//! Exact planar geometry over `Z[ζ_n]` plus the float-only pieces
//! (Darboux iteration, cross ratios of slopes).

mod cross_ratio;
mod darboux;
mod direction;
mod polygon;
mod upoly;
mod xray;

use thiserror::Error;

use crate::cyclo::CycloError;

pub use cross_ratio::{
    consecutive_edge_cross_ratio_regular, cross_ratio, cross_ratio_exact,
    cross_ratio_of_directions, cross_ratio_of_vectors, slope_of_vector, ExtReal,
};
pub use darboux::{
    affine_regularity_residual, darboux_iterate, edges_within_directions, is_u_polygon_float,
    midpoint_polygon, DarbouxRun, FloatPolygon,
};
pub use direction::{parallel, Direction, DirectionSet};
pub use polygon::{convex_hull, Polygon};
pub use upoly::{edge_directions, is_u_polygon, u_class};
pub use xray::{alternate_vertex_split, check_alternate_split, xray, xray_equal, XRayTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("zero vector has no direction")]
    ZeroDirection,
    #[error("directions {0} and {1} are parallel")]
    ParallelDirections(usize, usize),
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotStrictlyConvex(usize),
    #[error("polygon winds {0} times around its interior")]
    NotSimple(i64),
    #[error("points do not span the plane")]
    Degenerate,
    #[error("cross ratio arguments must be pairwise distinct")]
    RepeatedArgument,
    #[error("expected an even vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("polygon is not a U-polygon for the given directions")]
    NotAUPolygon,
    #[error("least-squares fit is singular")]
    SingularFit,
    #[error("edge number m = {0} must be even and at least 8")]
    BadEdgeNumber(u64),
    #[error("denominator vanishes")]
    DenominatorVanishes,
    #[error("expectation falsified: {0}")]
    FalsifiedExpectation(String),
}
