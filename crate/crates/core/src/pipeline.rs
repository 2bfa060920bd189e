//! Loads configured inputs and runs analyses into one [`Evaluation`].

use crate::evaluate::{
    classify_edges, classify_loops, edge_scheme, evaluate_point_layer, evaluate_polygon_layer, evaluate_slopes,
    loop_scheme, slope_scheme, ClassificationScheme, EdgeClassification, LoopClass, PointAccessResult,
    PolygonCoverageResult, SlopeProfile,
};
use crate::geometry::GridIndex;
use crate::ingest::{
    load_elevation_grid, load_feature_layer, load_network, ElevationGrid, EvaluationConfig, FeatureLayer,
    IngestError, LayerKind, Network,
};
use crate::netgraph::{build_graph, connected_components, enumerate_loops, Components, Graph, Loop};

/// Everything an analysis may need, loaded strictly: any configured input
/// that fails to load is an error.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub network: Network,
    pub point_layers: Vec<FeatureLayer>,
    pub polygon_layers: Vec<FeatureLayer>,
    pub grid: Option<ElevationGrid>,
}

pub fn load_inputs(config: &EvaluationConfig) -> Result<Inputs, IngestError> {
    let network = load_network(&config.nodes_path, &config.edges_path, config.snap_tolerance_m)?;
    let load = |specs: &[crate::ingest::LayerSpec], kind| {
        specs
            .iter()
            .map(|s| load_feature_layer(&s.path, kind, &s.name, s.buffer_m))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(Inputs {
        network,
        point_layers: load(&config.point_layers, LayerKind::Point)?,
        polygon_layers: load(&config.polygon_layers, LayerKind::Polygon)?,
        grid: config.elevation_path.as_deref().map(load_elevation_grid).transpose()?,
    })
}

#[derive(Debug, Clone)]
pub struct LoopAnalysis {
    pub loops: Vec<Loop>,
    pub classes: Vec<LoopClass>,
}

/// Analysis results over one network. Each block is filled by its `run_*`
/// method; absent blocks were not requested or lacked input.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub network: Network,
    pub graph: Graph,
    pub edge_scheme: ClassificationScheme,
    pub loop_scheme: ClassificationScheme,
    pub slope_scheme: ClassificationScheme,
    pub deadend_max_km: f64,
    pub edges: Option<EdgeClassification>,
    pub loops: Option<LoopAnalysis>,
    pub components: Option<Components>,
    pub points: Vec<PointAccessResult>,
    pub polygons: Vec<PolygonCoverageResult>,
    pub slopes: Option<Vec<SlopeProfile>>,
}

impl Evaluation {
    pub fn new(network: Network, config: &EvaluationConfig) -> Self {
        let graph = build_graph(&network);
        Evaluation {
            network,
            graph,
            edge_scheme: edge_scheme(&config.edges),
            loop_scheme: loop_scheme(&config.loops),
            slope_scheme: slope_scheme(&config.slope.class_bounds_pct),
            deadend_max_km: config.edges.deadend_max_km,
            edges: None,
            loops: None,
            components: None,
            points: Vec::new(),
            polygons: Vec::new(),
            slopes: None,
        }
    }

    pub fn run_edges(&mut self) {
        self.edges = Some(classify_edges(&self.network, &self.graph, &self.edge_scheme, self.deadend_max_km));
    }

    pub fn run_loops(&mut self) {
        let loops = enumerate_loops(&self.network, &self.graph);
        let classes = classify_loops(&loops, &self.loop_scheme);
        self.loops = Some(LoopAnalysis { loops, classes });
    }

    pub fn run_components(&mut self) {
        self.components = Some(connected_components(&self.network, &self.graph));
    }

    pub fn run_access(&mut self, point_layers: &[FeatureLayer], polygon_layers: &[FeatureLayer], config: &EvaluationConfig) {
        if !point_layers.is_empty() {
            let cell = config.index_cell_m();
            let index = GridIndex::build(self.network.edges().iter().map(|e| (e.id, &e.geometry)), cell);
            self.points = point_layers
                .iter()
                .map(|l| evaluate_point_layer(&self.network, &index, l, config.density_cell_m))
                .collect();
        }
        self.polygons = polygon_layers
            .iter()
            .map(|l| evaluate_polygon_layer(&self.network, l, config.coverage_interval_m))
            .collect();
    }

    pub fn run_slope(&mut self, grid: &ElevationGrid, config: &EvaluationConfig) {
        self.slopes = Some(evaluate_slopes(&self.network, grid, &config.slope));
    }

    /// Runs every analysis whose input is present.
    pub fn run_all(inputs: &Inputs, config: &EvaluationConfig) -> Self {
        let mut ev = Evaluation::new(inputs.network.clone(), config);
        ev.run_access(&inputs.point_layers, &inputs.polygon_layers, config);
        if let Some(grid) = &inputs.grid {
            ev.run_slope(grid, config);
        }
        ev.run_components();
        ev.run_edges();
        ev.run_loops();
        ev
    }
}
