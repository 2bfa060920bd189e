//! Minimal GeoJSON FeatureCollection reader. Coordinates are taken as
//! projected meters; only the geometry types the loaders need are decoded.

use std::path::Path;

use serde_json::{Map, Value};

use super::IngestError;
use crate::geometry::Point2;

#[derive(Debug, Clone)]
pub(crate) enum RawGeometry {
    Point(Point2),
    LineString(Vec<Point2>),
    Polygon(Vec<Vec<Point2>>),
    MultiPolygon(Vec<Vec<Vec<Point2>>>),
    Other(String),
}

impl RawGeometry {
    pub(crate) fn type_name(&self) -> &str {
        match self {
            RawGeometry::Point(_) => "Point",
            RawGeometry::LineString(_) => "LineString",
            RawGeometry::Polygon(_) => "Polygon",
            RawGeometry::MultiPolygon(_) => "MultiPolygon",
            RawGeometry::Other(t) => t,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RawFeature {
    pub geometry: RawGeometry,
    pub properties: Map<String, Value>,
}

const GEOGRAPHIC_CRS_MARKERS: &[&str] = &["CRS84", "EPSG::4326", "EPSG:4326", "EPSG::4258", "EPSG:4258"];

pub(crate) fn read_feature_collection(path: &Path) -> Result<Vec<RawFeature>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_feature_collection(&text, path)
}

pub(crate) fn parse_feature_collection(text: &str, path: &Path) -> Result<Vec<RawFeature>, IngestError> {
    let format = |message: String| IngestError::Format {
        path: path.to_path_buf(),
        message,
    };
    let root: Value = serde_json::from_str(text).map_err(|source| IngestError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(format("top-level object is not a FeatureCollection".into()));
    }
    if let Some(name) = root
        .get("crs")
        .and_then(|c| c.get("properties"))
        .and_then(|p| p.get("name"))
        .and_then(Value::as_str)
    {
        if GEOGRAPHIC_CRS_MARKERS.iter().any(|m| name.contains(m)) {
            return Err(IngestError::GeographicCrs {
                path: path.to_path_buf(),
                crs: name.to_string(),
            });
        }
    }
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| format("missing `features` array".into()))?;
    features
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let geometry = f
                .get("geometry")
                .filter(|g| !g.is_null())
                .ok_or_else(|| format(format!("feature {i}: missing geometry")))?;
            let geometry = parse_geometry(geometry).map_err(|m| format(format!("feature {i}: {m}")))?;
            let properties = match f.get("properties") {
                Some(Value::Object(m)) => m.clone(),
                _ => Map::new(),
            };
            Ok(RawFeature {
                geometry,
                properties,
            })
        })
        .collect()
}

fn parse_geometry(g: &Value) -> Result<RawGeometry, String> {
    let kind = g
        .get("type")
        .and_then(Value::as_str)
        .ok_or("geometry without `type`")?;
    let coords = || g.get("coordinates").ok_or_else(|| format!("{kind} without coordinates"));
    Ok(match kind {
        "Point" => RawGeometry::Point(position(coords()?)?),
        "LineString" => RawGeometry::LineString(positions(coords()?)?),
        "Polygon" => RawGeometry::Polygon(rings(coords()?)?),
        "MultiPolygon" => RawGeometry::MultiPolygon(
            array(coords()?)?.iter().map(rings).collect::<Result<_, _>>()?,
        ),
        other => RawGeometry::Other(other.to_string()),
    })
}

fn array(v: &Value) -> Result<&Vec<Value>, String> {
    v.as_array().ok_or_else(|| "expected a coordinate array".to_string())
}

fn position(v: &Value) -> Result<Point2, String> {
    let a = array(v)?;
    if a.len() < 2 {
        return Err("position needs at least 2 numbers".into());
    }
    let num = |x: &Value| x.as_f64().ok_or_else(|| "non-numeric coordinate".to_string());
    Ok(Point2::new(num(&a[0])?, num(&a[1])?))
}

fn positions(v: &Value) -> Result<Vec<Point2>, String> {
    array(v)?.iter().map(position).collect()
}

fn rings(v: &Value) -> Result<Vec<Vec<Point2>>, String> {
    array(v)?.iter().map(positions).collect()
}

pub(crate) fn integer_property(props: &Map<String, Value>, key: &str) -> Option<i64> {
    match props.get(key)? {
        Value::Number(n) => n.as_i64().or_else(|| {
            n.as_f64()
                .filter(|f| f.fract() == 0.0 && f.abs() < 9.0e15)
                .map(|f| f as i64)
        }),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}
