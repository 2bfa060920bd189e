//! Summary statistics, GeoJSON layer export and SVG maps.
//!
//! Output layout under an output directory:
//! `stats/summary.json`, `stats/summary.txt`, `layers/*.geojson`,
//! `maps/*.svg`. Every file is written atomically and depends only on its
//! inputs, so reruns are byte-identical.

mod export;
mod maps;
mod style;
mod summary;
mod svg;

pub use export::{
    components_layer, coverage_layer, edges_layer, export_layers, input_layer, loops_layer, network_layers,
    point_layers, slope_layer, write_atomic, write_layers, GeoLayer,
};
pub use maps::{
    access_map, components_map, coverage_map, edges_map, evaluation_maps, loops_map, overview_map, slope_map,
};
pub use style::{
    ClassStyle, StyleSpec, COMPONENT_PALETTE, DEADEND_TOO_LONG, DENSITY, NETWORK, NODE, OUTSIDE_LAYER,
    OUTSIDE_REACH, POINT_FEATURE, POLYGON_FEATURE, THROUGH_LAYER, WITHIN_REACH,
};
pub use summary::{
    round3, summarize, ClassBlock, ClassRow, ComponentBlock, ComponentRow, EdgeBlock, NetworkTotals,
    PointLayerBlock, PolygonLayerBlock, SlopeBlock, SummaryDocument,
};
pub use svg::{render_svg, write_svg, LegendEntry, MapDocument, MapFeature, MapGeometry};

pub const STATS_DIR: &str = "stats";
pub const LAYERS_DIR: &str = "layers";
pub const MAPS_DIR: &str = "maps";
