//! Loading and validation of every input: the network proposal, point and
//! polygon layers, the elevation grid and the configuration file.

mod config;
pub(crate) mod geojson;
mod grid;
mod layers;
mod network;
mod validate;

use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use config::{
    default_point_buffer, default_polygon_buffer, load_config, parse_config, ConfigError,
    ConfigWarning, EdgeThresholds, EvaluationConfig, LayerSpec, LoopThresholds, SlopeSettings,
    DEFAULT_POINT_BUFFERS, DEFAULT_POLYGON_BUFFERS,
};
pub use grid::{load_elevation_grid, parse_elevation_grid, ElevationGrid};
pub use layers::{load_feature_layer, Feature, FeatureGeometry, FeatureLayer, LayerKind};
pub use network::{load_network, EdgeEnd, Network, NetworkEdge, NetworkError, NetworkNode};
pub use validate::{validate_inputs, InputStatus, ValidationEntry, ValidationReport};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: invalid JSON: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("{}: geographic CRS `{crs}` is not supported; reproject to a metric CRS", path.display())]
    GeographicCrs { path: PathBuf, crs: String },
    #[error("{}: feature {feature}: expected {expected} geometry, found {found}", path.display())]
    KindMismatch {
        path: PathBuf,
        feature: usize,
        expected: &'static str,
        found: String,
    },
    #[error("{}: feature {feature}: {source}", path.display())]
    Geometry {
        path: PathBuf,
        feature: usize,
        source: GeometryError,
    },
    #[error("{}: {source}", path.display())]
    Network { path: PathBuf, source: NetworkError },
    #[error("{}:{line}: {message}", path.display())]
    Grid {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl IngestError {
    /// True for unreadable or syntactically malformed files, as opposed to
    /// well-formed files whose content fails validation.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            IngestError::Io { .. }
                | IngestError::Json { .. }
                | IngestError::Format { .. }
                | IngestError::Grid { .. }
        )
    }
}
