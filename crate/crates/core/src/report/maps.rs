use super::style::{
    DEADEND_TOO_LONG, DENSITY, NETWORK, NODE, OUTSIDE_LAYER, OUTSIDE_REACH, POINT_FEATURE, POLYGON_FEATURE,
    THROUGH_LAYER, WITHIN_REACH,
};
use super::svg::{LegendEntry, MapDocument, MapFeature, MapGeometry};
use crate::evaluate::{ClassificationScheme, PointAccessResult, PolygonCoverageResult, SlopeProfile, UNCLASSIFIED};
use crate::geometry::{Point2, Polygon};
use crate::ingest::{FeatureLayer, Network};
use crate::pipeline::Evaluation;

fn edge_line(network: &Network, slot: usize, class: &str) -> MapFeature {
    MapFeature::new(MapGeometry::Line(network.edges()[slot].geometry.vertices().to_vec()), class)
}

fn polygon_feature(p: &Polygon, class: &str) -> MapFeature {
    MapFeature::new(MapGeometry::Polygon(p.rings().map(<[Point2]>::to_vec).collect()), class)
}

fn network_backdrop(network: &Network) -> Vec<MapFeature> {
    (0..network.edges().len()).map(|i| edge_line(network, i, NETWORK)).collect()
}

/// Legend rows for every scheme label, plus `extra` labels, with counts.
fn class_legend<'a>(labels: impl Iterator<Item = &'a str>, classes: &[&str]) -> Vec<LegendEntry> {
    labels
        .map(|l| LegendEntry::new(l, l, classes.iter().filter(|c| **c == l).count()))
        .collect()
}

/// Input network with its registered layers: polygons below, points on top.
pub fn overview_map(network: &Network, point_layers: &[FeatureLayer], polygon_layers: &[FeatureLayer]) -> MapDocument {
    let mut features = Vec::new();
    let mut legend = Vec::new();
    for l in polygon_layers {
        let before = features.len();
        features.extend(l.polygons().map(|(_, p)| polygon_feature(p, POLYGON_FEATURE)));
        legend.push(LegendEntry::new(format!("{} (polygons)", l.name), POLYGON_FEATURE, features.len() - before));
    }
    features.extend(network_backdrop(network));
    legend.push(LegendEntry::new("edges", NETWORK, network.edges().len()));
    features.extend(network.nodes().iter().map(|n| MapFeature::new(MapGeometry::Point(n.location), NODE)));
    legend.push(LegendEntry::new("nodes", NODE, network.nodes().len()));
    for l in point_layers {
        let before = features.len();
        features.extend(l.points().map(|(_, p)| MapFeature::new(MapGeometry::Point(p), POINT_FEATURE)));
        legend.push(LegendEntry::new(format!("{} (points)", l.name), POINT_FEATURE, features.len() - before));
    }
    MapDocument {
        title: "Input network and study area".into(),
        features,
        legend,
    }
}

/// Edges colored by length class; edges on over-long dead ends get a wide
/// underlay.
pub fn edges_map(ev: &Evaluation) -> Option<MapDocument> {
    let ec = ev.edges.as_ref()?;
    let mut features: Vec<MapFeature> = ec
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.deadend_too_long)
        .map(|(i, _)| edge_line(&ev.network, i, DEADEND_TOO_LONG))
        .collect();
    let flagged = features.len();
    features.extend(ec.edges.iter().enumerate().map(|(i, e)| edge_line(&ev.network, i, &e.class)));
    let classes: Vec<&str> = ec.edges.iter().map(|e| e.class.as_str()).collect();
    let mut legend = class_legend(ev.edge_scheme.labels(), &classes);
    legend.push(LegendEntry::new(DEADEND_TOO_LONG, DEADEND_TOO_LONG, flagged));
    Some(MapDocument {
        title: "Edge lengths".into(),
        features,
        legend,
    })
}

/// Loop faces filled by perimeter class under the network.
pub fn loops_map(ev: &Evaluation) -> Option<MapDocument> {
    let la = ev.loops.as_ref()?;
    let mut features: Vec<MapFeature> = la
        .loops
        .iter()
        .zip(&la.classes)
        .map(|(l, c)| MapFeature::new(MapGeometry::Polygon(vec![l.boundary(&ev.network, &ev.graph)]), c.class.clone()))
        .collect();
    features.extend(network_backdrop(&ev.network));
    let classes: Vec<&str> = la.classes.iter().map(|c| c.class.as_str()).collect();
    Some(MapDocument {
        title: "Loop perimeters".into(),
        features,
        legend: class_legend(ev.loop_scheme.labels(), &classes),
    })
}

/// Edges colored by connected component.
pub fn components_map(ev: &Evaluation) -> Option<MapDocument> {
    let comps = ev.components.as_ref()?;
    let features = comps
        .edge_labels
        .iter()
        .enumerate()
        .map(|(i, c)| edge_line(&ev.network, i, &format!("component_{c}")))
        .collect();
    let legend = comps
        .summaries
        .iter()
        .map(|s| LegendEntry::new(format!("component {}", s.id), format!("component_{}", s.id), s.edges))
        .collect();
    Some(MapDocument {
        title: "Connected components".into(),
        features,
        legend,
    })
}

/// Density cells shaded by count, the network, then points by reach.
pub fn access_map(network: &Network, result: &PointAccessResult) -> MapDocument {
    let mut features = Vec::new();
    if let Some(d) = &result.density {
        let max = d.counts.iter().copied().max().unwrap_or(0).max(1) as f64;
        for row in 0..d.nrows {
            for col in 0..d.ncols {
                let count = d.count(col, row);
                if count == 0 {
                    continue;
                }
                let x0 = d.origin.x + col as f64 * d.cell_size;
                let y0 = d.origin.y + row as f64 * d.cell_size;
                let (x1, y1) = (x0 + d.cell_size, y0 + d.cell_size);
                let ring = vec![
                    Point2::new(x0, y0),
                    Point2::new(x1, y0),
                    Point2::new(x1, y1),
                    Point2::new(x0, y1),
                    Point2::new(x0, y0),
                ];
                let mut f = MapFeature::new(MapGeometry::Polygon(vec![ring]), DENSITY);
                f.opacity = Some(0.1 + 0.5 * count as f64 / max);
                features.push(f);
            }
        }
    }
    let cells = features.len();
    features.extend(network_backdrop(network));
    for p in result.points.iter().filter(|p| !p.within_reach) {
        features.push(MapFeature::new(MapGeometry::Point(p.location), OUTSIDE_REACH));
    }
    for p in result.points.iter().filter(|p| p.within_reach) {
        features.push(MapFeature::new(MapGeometry::Point(p.location), WITHIN_REACH));
    }
    MapDocument {
        title: format!("Access: {} (reach {} m)", result.layer, result.buffer_m),
        features,
        legend: vec![
            LegendEntry::new(WITHIN_REACH, WITHIN_REACH, result.within),
            LegendEntry::new(OUTSIDE_REACH, OUTSIDE_REACH, result.outside),
            LegendEntry::new("density cells", DENSITY, cells),
        ],
    }
}

/// Layer polygons with edges marked by whether they pass within the buffer.
pub fn coverage_map(network: &Network, layer: &FeatureLayer, result: &PolygonCoverageResult) -> MapDocument {
    let mut features: Vec<MapFeature> = layer.polygons().map(|(_, p)| polygon_feature(p, POLYGON_FEATURE)).collect();
    let polygons = features.len();
    for (i, c) in result.edges.iter().enumerate() {
        features.push(edge_line(network, i, if c.through_layer { THROUGH_LAYER } else { OUTSIDE_LAYER }));
    }
    let through = result.edges_through();
    MapDocument {
        title: format!("Coverage: {} (buffer {} m)", result.layer, result.buffer_m),
        features,
        legend: vec![
            LegendEntry::new(THROUGH_LAYER, THROUGH_LAYER, through),
            LegendEntry::new(OUTSIDE_LAYER, OUTSIDE_LAYER, result.edges.len() - through),
            LegendEntry::new(format!("{} polygons", layer.name), POLYGON_FEATURE, polygons),
        ],
    }
}

/// Edges colored by average-slope class.
pub fn slope_map(network: &Network, scheme: &ClassificationScheme, profiles: &[SlopeProfile]) -> MapDocument {
    let features = profiles
        .iter()
        .enumerate()
        .map(|(i, p)| edge_line(network, i, &p.class))
        .collect();
    let classes: Vec<&str> = profiles.iter().map(|p| p.class.as_str()).collect();
    MapDocument {
        title: "Average slope".into(),
        features,
        legend: class_legend(scheme.labels().chain(std::iter::once(UNCLASSIFIED)), &classes),
    }
}

/// Every map for the analyses present, keyed by file name under `maps/`.
pub fn evaluation_maps(ev: &Evaluation, polygon_layers: &[FeatureLayer]) -> Vec<(String, MapDocument)> {
    let mut maps = Vec::new();
    for p in &ev.points {
        maps.push((format!("access_{}.svg", p.layer), access_map(&ev.network, p)));
    }
    for c in &ev.polygons {
        if let Some(layer) = polygon_layers.iter().find(|l| l.name == c.layer) {
            maps.push((format!("coverage_{}.svg", c.layer), coverage_map(&ev.network, layer, c)));
        }
    }
    if let Some(s) = &ev.slopes {
        maps.push(("slope.svg".to_string(), slope_map(&ev.network, &ev.slope_scheme, s)));
    }
    if let Some(m) = components_map(ev) {
        maps.push(("components.svg".to_string(), m));
    }
    if let Some(m) = edges_map(ev) {
        maps.push(("edges.svg".to_string(), m));
    }
    if let Some(m) = loops_map(ev) {
        maps.push(("loops.svg".to_string(), m));
    }
    maps
}
