//! Evaluation engine for bicycle node network design proposals.
//!
//! Inputs are loaded by [`ingest`], turned into a planar half-edge graph by
//! [`netgraph`], classified by [`evaluate`] and written out by [`report`].
//! [`pipeline`] ties the steps together for a configured run.

pub mod evaluate;
pub mod geometry;
pub mod ingest;
pub mod netgraph;
pub mod pipeline;
pub mod report;

pub use geometry::{Bounds, Point2, Polygon, Polyline};
pub use ingest::{EvaluationConfig, FeatureLayer, IngestError, Network};
pub use pipeline::{load_inputs, Evaluation, Inputs};
