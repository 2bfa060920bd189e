//! Classification analyses: edge and loop lengths, point-layer access,
//! polygon-layer coverage and slope profiles.
//!
//! Every scheme uses half-open intervals `[a, b)`, so a value sitting exactly
//! on a bound belongs to the upper class (a 20.0 km loop is too long, a 6.0 %
//! average slope is very steep).

mod access;
mod coverage;
mod lengths;
mod scheme;
mod slope;

pub use access::{evaluate_point_layer, DensityGrid, PointAccess, PointAccessResult};
pub use coverage::{evaluate_polygon_layer, EdgeCoverage, PolygonCoverageResult};
pub use lengths::{classify_edges, classify_loops, EdgeClass, EdgeClassification, LoopClass};
pub use scheme::{
    edge_scheme, loop_scheme, slope_scheme, ClassificationScheme, SchemeError, ABOVE_IDEAL, IDEAL,
    MANAGEABLE, NOTICEABLE, STEEP, TOO_LONG, TOO_SHORT, UNCLASSIFIED, VERY_STEEP,
};
pub use slope::{evaluate_slopes, sample_elevation, slope_stats, SlopeProfile, MIN_VALID_FRACTION};
