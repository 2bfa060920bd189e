use rayon::prelude::*;

use crate::geometry::{point_polygon_distance, stepped_chainages, Bounds, Point2, Polygon};
use crate::ingest::{FeatureLayer, Network};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeCoverage {
    pub edge_id: i64,
    pub length_m: f64,
    pub samples: usize,
    pub covered_samples: usize,
    pub covered_fraction: f64,
    pub through_layer: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonCoverageResult {
    pub layer: String,
    pub buffer_m: f64,
    pub edges: Vec<EdgeCoverage>,
    pub length_inside_m: f64,
    pub length_outside_m: f64,
}

impl PolygonCoverageResult {
    pub fn total_length_m(&self) -> f64 {
        self.length_inside_m + self.length_outside_m
    }

    pub fn edges_through(&self) -> usize {
        self.edges.iter().filter(|e| e.through_layer).count()
    }
}

/// Proximity-sampled coverage: each edge is sampled at `0, s, 2s, ..., L`
/// and a sample counts as covered when it lies within `buffer_m` of any
/// polygon in the layer.
pub fn evaluate_polygon_layer(
    network: &Network,
    layer: &FeatureLayer,
    sample_interval_m: f64,
) -> PolygonCoverageResult {
    let polygons: Vec<(Bounds, &Polygon)> = layer
        .polygons()
        .map(|(_, p)| {
            let mut b = p.bounds();
            b.min.x -= layer.buffer_m;
            b.min.y -= layer.buffer_m;
            b.max.x += layer.buffer_m;
            b.max.y += layer.buffer_m;
            (b, p)
        })
        .collect();
    let covered = |p: Point2| {
        polygons.iter().any(|(b, poly)| {
            p.x >= b.min.x
                && p.x <= b.max.x
                && p.y >= b.min.y
                && p.y <= b.max.y
                && point_polygon_distance(p, poly) <= layer.buffer_m
        })
    };

    let edges: Vec<EdgeCoverage> = network
        .edges()
        .par_iter()
        .map(|e| {
            let chainages = stepped_chainages(e.length, sample_interval_m);
            let samples = e.geometry.points_at(&chainages);
            let covered_samples = samples.iter().filter(|&&p| covered(p)).count();
            let covered_fraction = covered_samples as f64 / samples.len() as f64;
            EdgeCoverage {
                edge_id: e.id,
                length_m: e.length,
                samples: samples.len(),
                covered_samples,
                covered_fraction,
                through_layer: covered_samples > 0,
            }
        })
        .collect();
    let length_inside_m: f64 = edges.iter().map(|e| e.covered_fraction * e.length_m).sum();
    let length_outside_m: f64 = edges.iter().map(|e| (1.0 - e.covered_fraction) * e.length_m).sum();
    PolygonCoverageResult {
        layer: layer.name.clone(),
        buffer_m: layer.buffer_m,
        edges,
        length_inside_m,
        length_outside_m,
    }
}
