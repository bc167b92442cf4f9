//! U-polygons of class at least 4 in planar cyclotomic model sets.
//!
//! * [`cyclo`]: exact arithmetic in `Z[ζ_n]`, Galois action, embeddings.
//! * [`fields`]: the decision procedures for which edge numbers occur.
//! * [`modelset`]: star map, windows, and finite patches of model sets.
//! * [`geometry`]: directions, convex polygons, U-polygon checks, cross
//!   ratios, Darboux iteration and discrete X-rays.
//! * [`construct`]: explicit U-polygons in the ring and their embedding into
//!   a model set by a homothety.
//! * [`render`]: static SVG figures.

pub mod construct;
pub mod cyclo;
pub mod fields;
pub mod geometry;
pub mod modelset;
pub mod render;

/// Tag written into every file this crate produces.
pub const FORMAT_TAG: &str = "quasipoly/1";

pub use construct::{ConstructError, Homothety, UPolygon};
pub use cyclo::{CycInt, CycloError};
pub use fields::{FieldRef, FieldsError};
pub use geometry::{Direction, DirectionSet, FloatPolygon, GeometryError, Polygon, XRayTable};
pub use modelset::{ModelSetError, ModelSetSpec, PointSet, Preset, Window};
