use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::summary::round3;
use crate::evaluate::{PointAccessResult, PolygonCoverageResult, SlopeProfile};
use crate::geometry::{Point2, Polygon};
use crate::ingest::{FeatureGeometry, FeatureLayer, Network};
use crate::pipeline::Evaluation;

/// A named feature collection ready to be written under `layers/`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoLayer {
    pub file_name: String,
    pub features: Vec<Value>,
}

impl GeoLayer {
    /// One feature per line so goldens diff cleanly. Keys are sorted.
    pub fn to_geojson(&self) -> String {
        let mut s = String::from("{\"type\":\"FeatureCollection\",\"features\":[\n");
        for (i, f) in self.features.iter().enumerate() {
            if i > 0 {
                s.push_str(",\n");
            }
            s.push_str(&serde_json::to_string(f).expect("feature serializes"));
        }
        s.push_str("\n]}\n");
        s
    }
}

/// Writes to a sibling temp file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Writes each layer to `<dir>/<file_name>` and returns the paths in order.
pub fn write_layers(dir: &Path, layers: &[GeoLayer]) -> io::Result<Vec<PathBuf>> {
    layers
        .iter()
        .map(|l| {
            let path = dir.join(&l.file_name);
            write_atomic(&path, l.to_geojson().as_bytes())?;
            Ok(path)
        })
        .collect()
}

fn num(v: f64) -> Value {
    json!(round3(v))
}

fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

fn coord(p: Point2) -> Value {
    json!([p.x, p.y])
}

fn line(points: &[Point2]) -> Value {
    json!({"type": "LineString", "coordinates": points.iter().map(|&p| coord(p)).collect::<Vec<_>>()})
}

fn point(p: Point2) -> Value {
    json!({"type": "Point", "coordinates": coord(p)})
}

fn ring(points: &[Point2]) -> Value {
    Value::Array(points.iter().map(|&p| coord(p)).collect())
}

fn polygon(poly: &Polygon) -> Value {
    json!({"type": "Polygon", "coordinates": poly.rings().map(ring).collect::<Vec<_>>()})
}

fn feature(geometry: Value, properties: Map<String, Value>) -> Value {
    json!({"type": "Feature", "geometry": geometry, "properties": properties})
}

fn props(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// The raw network: `network_nodes` and `network_edges`.
pub fn network_layers(network: &Network) -> Vec<GeoLayer> {
    let nodes = network
        .nodes()
        .iter()
        .map(|n| feature(point(n.location), props([("node_id", json!(n.id)), ("degree", json!(n.degree))])))
        .collect();
    let edges = network
        .edges()
        .iter()
        .map(|e| {
            feature(
                line(e.geometry.vertices()),
                props([
                    ("edge_id", json!(e.id)),
                    ("node_a", json!(e.endpoint_a)),
                    ("node_b", json!(e.endpoint_b)),
                    ("length_km", num(e.length / 1000.0)),
                ]),
            )
        })
        .collect();
    vec![
        GeoLayer {
            file_name: "network_nodes.geojson".into(),
            features: nodes,
        },
        GeoLayer {
            file_name: "network_edges.geojson".into(),
            features: edges,
        },
    ]
}

/// A registered study-area layer as loaded: `input_<name>`.
pub fn input_layer(layer: &FeatureLayer) -> GeoLayer {
    let features = layer
        .features
        .iter()
        .map(|f| {
            let geometry = match &f.geometry {
                FeatureGeometry::Point(p) => point(*p),
                FeatureGeometry::Polygon(p) => polygon(p),
            };
            feature(
                geometry,
                props([
                    ("feature_id", json!(f.id)),
                    ("name", f.name.clone().map_or(Value::Null, Value::String)),
                    ("buffer_m", num(layer.buffer_m)),
                ]),
            )
        })
        .collect();
    GeoLayer {
        file_name: format!("input_{}.geojson", layer.name),
        features,
    }
}

/// `edges_classified`: one feature per edge with its length class.
pub fn edges_layer(ev: &Evaluation) -> Option<GeoLayer> {
    let ec = ev.edges.as_ref()?;
    let features = ev
        .network
        .edges()
        .iter()
        .zip(&ec.edges)
        .map(|(e, c)| {
            feature(
                line(e.geometry.vertices()),
                props([
                    ("edge_id", json!(e.id)),
                    ("class", json!(c.class)),
                    ("length_km", num(c.length_m / 1000.0)),
                    ("deadend_too_long", json!(c.deadend_too_long)),
                ]),
            )
        })
        .collect();
    Some(GeoLayer {
        file_name: "edges_classified.geojson".into(),
        features,
    })
}

/// `loops_classified`: one polygon per loop, built from its boundary walk.
pub fn loops_layer(ev: &Evaluation) -> Option<GeoLayer> {
    let la = ev.loops.as_ref()?;
    let features = la
        .loops
        .iter()
        .zip(&la.classes)
        .map(|(l, c)| {
            let boundary = l.boundary(&ev.network, &ev.graph);
            feature(
                json!({"type": "Polygon", "coordinates": [ring(&boundary)]}),
                props([
                    ("loop_id", json!(l.id)),
                    ("component_id", json!(l.component)),
                    ("class", json!(c.class)),
                    ("perimeter_km", num(l.perimeter / 1000.0)),
                    ("area_km2", num(l.signed_area / 1e6)),
                ]),
            )
        })
        .collect();
    Some(GeoLayer {
        file_name: "loops_classified.geojson".into(),
        features,
    })
}

/// `components`: every edge with its component label.
pub fn components_layer(ev: &Evaluation) -> Option<GeoLayer> {
    let comps = ev.components.as_ref()?;
    let features = ev
        .network
        .edges()
        .iter()
        .zip(&comps.edge_labels)
        .map(|(e, &c)| feature(line(e.geometry.vertices()), props([("edge_id", json!(e.id)), ("component_id", json!(c))])))
        .collect();
    Some(GeoLayer {
        file_name: "components.geojson".into(),
        features,
    })
}

/// `access_<name>` (points with reach) and `density_<name>` (non-empty
/// grid cells with their point count).
pub fn point_layers(result: &PointAccessResult) -> Vec<GeoLayer> {
    let points = result
        .points
        .iter()
        .map(|p| {
            feature(
                point(p.location),
                props([
                    ("feature_id", json!(p.feature_id)),
                    ("name", p.name.clone().map_or(Value::Null, Value::String)),
                    ("within_reach", json!(p.within_reach)),
                    ("distance_m", num(p.distance_m)),
                    ("nearest_edge_id", json!(p.nearest_edge)),
                ]),
            )
        })
        .collect();
    let mut layers = vec![GeoLayer {
        file_name: format!("access_{}.geojson", result.layer),
        features: points,
    }];
    let mut cells = Vec::new();
    if let Some(d) = &result.density {
        for row in 0..d.nrows {
            for col in 0..d.ncols {
                let count = d.count(col, row);
                if count == 0 {
                    continue;
                }
                let x0 = d.origin.x + col as f64 * d.cell_size;
                let y0 = d.origin.y + row as f64 * d.cell_size;
                let (x1, y1) = (x0 + d.cell_size, y0 + d.cell_size);
                let sq = [
                    Point2::new(x0, y0),
                    Point2::new(x1, y0),
                    Point2::new(x1, y1),
                    Point2::new(x0, y1),
                    Point2::new(x0, y0),
                ];
                cells.push(feature(
                    json!({"type": "Polygon", "coordinates": [ring(&sq)]}),
                    props([("col", json!(col)), ("row", json!(row)), ("count", json!(count))]),
                ));
            }
        }
    }
    layers.push(GeoLayer {
        file_name: format!("density_{}.geojson", result.layer),
        features: cells,
    });
    layers
}

/// `coverage_<name>`: every edge with its covered fraction.
pub fn coverage_layer(network: &Network, result: &PolygonCoverageResult) -> GeoLayer {
    let features = network
        .edges()
        .iter()
        .zip(&result.edges)
        .map(|(e, c)| {
            feature(
                line(e.geometry.vertices()),
                props([
                    ("edge_id", json!(e.id)),
                    ("covered_fraction", num(c.covered_fraction)),
                    ("through_layer", json!(c.through_layer)),
                ]),
            )
        })
        .collect();
    GeoLayer {
        file_name: format!("coverage_{}.geojson", result.layer),
        features,
    }
}

/// `edges_slope`: every edge with its slope statistics and class.
pub fn slope_layer(network: &Network, profiles: &[SlopeProfile]) -> GeoLayer {
    let features = network
        .edges()
        .iter()
        .zip(profiles)
        .map(|(e, p)| {
            feature(
                line(e.geometry.vertices()),
                props([
                    ("edge_id", json!(e.id)),
                    ("avg_slope_pct", opt_num(p.avg_slope_pct)),
                    ("max_slope_pct", opt_num(p.max_slope_pct)),
                    ("class", json!(p.class)),
                    ("valid_fraction", num(p.valid_fraction)),
                ]),
            )
        })
        .collect();
    GeoLayer {
        file_name: "edges_slope.geojson".into(),
        features,
    }
}

/// Every classified layer present in the evaluation, in workflow order.
pub fn export_layers(ev: &Evaluation) -> Vec<GeoLayer> {
    let mut out = Vec::new();
    for p in &ev.points {
        out.extend(point_layers(p));
    }
    for c in &ev.polygons {
        out.push(coverage_layer(&ev.network, c));
    }
    if let Some(s) = &ev.slopes {
        out.push(slope_layer(&ev.network, s));
    }
    out.extend(components_layer(ev));
    out.extend(edges_layer(ev));
    out.extend(loops_layer(ev));
    out
}
