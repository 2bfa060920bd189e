use std::fmt;
use std::path::Path;

use serde_json::Value;

use super::geojson::{read_feature_collection, RawGeometry};
use super::IngestError;
use crate::geometry::{Bounds, Point2, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Point,
    Polygon,
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LayerKind::Point => "point",
            LayerKind::Polygon => "polygon",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeatureGeometry {
    Point(Point2),
    Polygon(Polygon),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub id: usize,
    pub geometry: FeatureGeometry,
    pub name: Option<String>,
}

/// A named point or polygon layer with its reach/buffer distance.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureLayer {
    pub name: String,
    pub kind: LayerKind,
    pub buffer_m: f64,
    pub features: Vec<Feature>,
}

impl FeatureLayer {
    pub fn points(&self) -> impl Iterator<Item = (usize, Point2)> + '_ {
        self.features.iter().filter_map(|f| match f.geometry {
            FeatureGeometry::Point(p) => Some((f.id, p)),
            _ => None,
        })
    }

    pub fn polygons(&self) -> impl Iterator<Item = (usize, &Polygon)> + '_ {
        self.features.iter().filter_map(|f| match &f.geometry {
            FeatureGeometry::Polygon(p) => Some((f.id, p)),
            _ => None,
        })
    }

    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::empty();
        for f in &self.features {
            match &f.geometry {
                FeatureGeometry::Point(p) => b.extend(*p),
                FeatureGeometry::Polygon(poly) => b.union(&poly.bounds()),
            }
        }
        b
    }
}

/// Loads a point or polygon layer. MultiPolygons are split into their
/// member polygons; feature ids follow the flattened input order.
pub fn load_feature_layer(
    path: &Path,
    kind: LayerKind,
    name: &str,
    buffer_m: f64,
) -> Result<FeatureLayer, IngestError> {
    let raw = read_feature_collection(path)?;
    let mut features = Vec::with_capacity(raw.len());
    for (i, f) in raw.into_iter().enumerate() {
        let tag = match f.properties.get("name") {
            Some(Value::String(s)) => Some(s.clone()),
            Some(Value::Number(n)) => Some(n.to_string()),
            _ => None,
        };
        let geometry_error = |source| IngestError::Geometry {
            path: path.to_path_buf(),
            feature: i,
            source,
        };
        let mismatch = |found: &str| IngestError::KindMismatch {
            path: path.to_path_buf(),
            feature: i,
            expected: match kind {
                LayerKind::Point => "Point",
                LayerKind::Polygon => "Polygon or MultiPolygon",
            },
            found: found.to_string(),
        };
        match (kind, f.geometry) {
            (LayerKind::Point, RawGeometry::Point(p)) => {
                features.push(Feature {
                    id: features.len(),
                    geometry: FeatureGeometry::Point(p.checked().map_err(geometry_error)?),
                    name: tag,
                });
            }
            (LayerKind::Polygon, RawGeometry::Polygon(rings)) => {
                features.push(Feature {
                    id: features.len(),
                    geometry: FeatureGeometry::Polygon(polygon(rings).map_err(geometry_error)?),
                    name: tag,
                });
            }
            (LayerKind::Polygon, RawGeometry::MultiPolygon(members)) => {
                for rings in members {
                    features.push(Feature {
                        id: features.len(),
                        geometry: FeatureGeometry::Polygon(polygon(rings).map_err(geometry_error)?),
                        name: tag.clone(),
                    });
                }
            }
            (_, other) => return Err(mismatch(other.type_name())),
        }
    }
    Ok(FeatureLayer {
        name: name.to_string(),
        kind,
        buffer_m,
        features,
    })
}

fn polygon(mut rings: Vec<Vec<Point2>>) -> Result<Polygon, crate::geometry::GeometryError> {
    if rings.is_empty() {
        return Err(crate::geometry::GeometryError::ShortRing(0));
    }
    let exterior = rings.remove(0);
    Polygon::new(exterior, rings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn three_points() {
        let f = write(
            r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{"name":"WC"},"geometry":{"type":"Point","coordinates":[0,0]}},
            {"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[1,0]}},
            {"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[2,0]}}]}"#,
        );
        let layer = load_feature_layer(f.path(), LayerKind::Point, "facilities", 100.0).unwrap();
        assert_eq!(layer.features.len(), 3);
        assert_eq!(layer.features.iter().map(|f| f.id).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(layer.features[0].name.as_deref(), Some("WC"));
        assert_eq!(layer.buffer_m, 100.0);
    }

    #[test]
    fn multipolygon_is_flattened() {
        let f = write(
            r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{},"geometry":{"type":"MultiPolygon","coordinates":[
              [[[0,0],[1,0],[1,1],[0,1],[0,0]]],
              [[[5,5],[6,5],[6,6],[5,6],[5,5]]]]}}]}"#,
        );
        let layer = load_feature_layer(f.path(), LayerKind::Polygon, "nature", 100.0).unwrap();
        assert_eq!(layer.features.len(), 2);
        assert_eq!(layer.polygons().count(), 2);
    }

    #[test]
    fn kind_mismatch_names_feature() {
        let f = write(
            r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[0,0]}},
            {"type":"Feature","properties":{},"geometry":{"type":"LineString","coordinates":[[0,0],[1,1]]}}]}"#,
        );
        let err = load_feature_layer(f.path(), LayerKind::Point, "x", 1.0).unwrap_err();
        match err {
            IngestError::KindMismatch { feature, found, .. } => {
                assert_eq!(feature, 1);
                assert_eq!(found, "LineString");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unclosed_ring_rejected() {
        let f = write(
            r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]}}]}"#,
        );
        let err = load_feature_layer(f.path(), LayerKind::Polygon, "x", 1.0).unwrap_err();
        assert!(matches!(err, IngestError::Geometry { feature: 0, .. }));
    }

    #[test]
    fn empty_collection_loads() {
        let f = write(r#"{"type":"FeatureCollection","features":[]}"#);
        let layer = load_feature_layer(f.path(), LayerKind::Point, "x", 1.0).unwrap();
        assert!(layer.features.is_empty());
    }
}
