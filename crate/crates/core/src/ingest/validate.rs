use std::fmt;

use super::{ElevationGrid, EvaluationConfig, FeatureLayer, IngestError, LayerSpec, Network};
use crate::geometry::Bounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InputStatus {
    Ok,
    Warning,
    Error,
}

impl fmt::Display for InputStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputStatus::Ok => "ok",
            InputStatus::Warning => "warning",
            InputStatus::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationEntry {
    pub input: String,
    pub status: InputStatus,
    pub messages: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn warnings(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(|e| e.status == InputStatus::Warning)
            .flat_map(|e| e.messages.iter().map(String::as_str))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "[{}] {}", e.status, e.input)?;
            for m in &e.messages {
                writeln!(f, "    {m}")?;
            }
        }
        writeln!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Builds the input report. Only the network is mandatory: the report fails
/// iff the network could not be loaded. Everything else downgrades to a
/// warning.
pub fn validate_inputs(
    config: &EvaluationConfig,
    network: &Result<Network, IngestError>,
    point_layers: &[(LayerSpec, Result<FeatureLayer, IngestError>)],
    polygon_layers: &[(LayerSpec, Result<FeatureLayer, IngestError>)],
    grid: Option<&Result<ElevationGrid, IngestError>>,
) -> ValidationReport {
    let mut entries = Vec::new();

    let mut cfg_entry = entry("config");
    for w in &config.warnings {
        cfg_entry.warn(w.to_string());
    }
    entries.push(cfg_entry);

    let mut net_entry = entry("network");
    let mut net_bounds = None;
    match network {
        Ok(net) => {
            net_entry.messages.push(format!(
                "{} nodes, {} edges, {:.3} km",
                net.nodes().len(),
                net.edges().len(),
                net.total_length() / 1000.0
            ));
            let b = net.bounds();
            if looks_geographic(&b) {
                net_entry.warn(
                    "coordinates fall within lon/lat range; inputs must use a projected metric CRS".into(),
                );
            }
            let crossings = crate::netgraph::find_crossings(net);
            if !crossings.is_empty() {
                let shown: Vec<String> = crossings.iter().take(10).map(|(a, b)| format!("{a}/{b}")).collect();
                net_entry.warn(format!(
                    "{} edge pair(s) cross without a shared node; loop results are unreliable there: {}",
                    crossings.len(),
                    shown.join(", ")
                ));
            }
            net_bounds = Some(b);
        }
        Err(e) => {
            net_entry.status = InputStatus::Error;
            net_entry.messages.push(e.to_string());
        }
    }
    entries.push(net_entry);

    for (kind, layers) in [("point", point_layers), ("polygon", polygon_layers)] {
        if layers.is_empty() {
            let mut e = entry(&format!("{kind} layers"));
            e.warn(format!("no {kind} layers"));
            entries.push(e);
        }
        for (spec, result) in layers {
            let mut e = entry(&format!("{kind} layer `{}`", spec.name));
            match result {
                Ok(layer) if layer.features.is_empty() => e.warn("layer has no features".into()),
                Ok(layer) => {
                    e.messages.push(format!(
                        "{} features, buffer {} m",
                        layer.features.len(),
                        spec.buffer_m
                    ));
                    if let Some(nb) = &net_bounds {
                        if disjoint(nb, &layer.bounds(), spec.buffer_m) {
                            e.warn("layer lies entirely outside the network extent".into());
                        }
                    }
                }
                Err(err) => {
                    e.status = InputStatus::Error;
                    e.messages.push(err.to_string());
                }
            }
            entries.push(e);
        }
    }

    let mut g = entry("elevation grid");
    match grid {
        None => g.warn("no elevation grid".into()),
        Some(Ok(grid)) => {
            let nodata = grid.values.iter().filter(|&&v| v == grid.nodata || v.is_nan()).count();
            g.messages.push(format!(
                "{} x {} cells of {} m, {} nodata",
                grid.ncols, grid.nrows, grid.cellsize, nodata
            ));
            if nodata == grid.values.len() {
                g.warn("grid contains only nodata".into());
            }
        }
        Some(Err(err)) => {
            g.status = InputStatus::Error;
            g.messages.push(err.to_string());
        }
    }
    entries.push(g);

    ValidationReport {
        passed: network.is_ok(),
        entries,
    }
}

fn entry(input: &str) -> ValidationEntry {
    ValidationEntry {
        input: input.to_string(),
        status: InputStatus::Ok,
        messages: Vec::new(),
    }
}

impl ValidationEntry {
    fn warn(&mut self, message: String) {
        self.status = self.status.max(InputStatus::Warning);
        self.messages.push(message);
    }
}

fn looks_geographic(b: &Bounds) -> bool {
    !b.is_empty()
        && b.min.x >= -180.0
        && b.max.x <= 180.0
        && b.min.y >= -90.0
        && b.max.y <= 90.0
        && b.width() < 10.0
        && b.height() < 10.0
}

fn disjoint(a: &Bounds, b: &Bounds, margin: f64) -> bool {
    !b.is_empty()
        && (b.min.x > a.max.x + margin
            || b.max.x < a.min.x - margin
            || b.min.y > a.max.y + margin
            || b.max.y < a.min.y - margin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point2, Polyline};
    use crate::ingest::LayerKind;
    use std::path::PathBuf;

    fn network() -> Network {
        Network::build(
            vec![(None, Point2::new(0.0, 0.0)), (None, Point2::new(1000.0, 0.0))],
            vec![(
                None,
                Polyline::new(vec![Point2::new(0.0, 0.0), Point2::new(1000.0, 0.0)]).unwrap(),
            )],
            0.5,
        )
        .unwrap()
    }

    fn spec(name: &str) -> LayerSpec {
        LayerSpec {
            name: name.into(),
            path: PathBuf::from(format!("{name}.geojson")),
            buffer_m: 100.0,
        }
    }

    #[test]
    fn network_only_passes_with_warnings() {
        let r = validate_inputs(&EvaluationConfig::default(), &Ok(network()), &[], &[], None);
        assert!(r.passed);
        let warnings: Vec<&str> = r.warnings().collect();
        assert!(warnings.contains(&"no point layers"));
        assert!(warnings.contains(&"no elevation grid"));
    }

    #[test]
    fn point_layer_passes() {
        let layer = FeatureLayer {
            name: "facilities".into(),
            kind: LayerKind::Point,
            buffer_m: 100.0,
            features: vec![crate::ingest::Feature {
                id: 0,
                geometry: crate::ingest::FeatureGeometry::Point(Point2::new(10.0, 10.0)),
                name: None,
            }],
        };
        let r = validate_inputs(
            &EvaluationConfig::default(),
            &Ok(network()),
            &[(spec("facilities"), Ok(layer))],
            &[],
            None,
        );
        assert!(r.passed);
        assert_eq!(r.entries[2].status, InputStatus::Ok);
    }

    #[test]
    fn missing_network_fails() {
        let err = IngestError::Io {
            path: "nodes.geojson".into(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "not found"),
        };
        let r = validate_inputs(&EvaluationConfig::default(), &Err(err), &[], &[], None);
        assert!(!r.passed);
        assert!(r.to_string().contains("result: FAIL"));
    }

    #[test]
    fn broken_optional_layer_does_not_fail() {
        let err = IngestError::Format {
            path: "x".into(),
            message: "bad".into(),
        };
        let r = validate_inputs(
            &EvaluationConfig::default(),
            &Ok(network()),
            &[],
            &[(spec("verify"), Err(err))],
            None,
        );
        assert!(r.passed);
        assert!(r.entries.iter().any(|e| e.status == InputStatus::Error));
    }
}
