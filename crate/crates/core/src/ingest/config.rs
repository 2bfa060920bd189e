//! INI-style evaluation config.
//!
//! ```text
//! [general]
//! nodes = nodes.geojson
//! edges = edges.geojson
//! elevation = dem.asc
//! [edges]
//! max_km = 12
//! [point_layers]
//! facilities = facilities.geojson, 100
//! ```
//!
//! Relative paths resolve against the config file's directory. Keys that are
//! not set keep the defaults below.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Reach distances for the standard point layers, in meters.
pub const DEFAULT_POINT_BUFFERS: &[(&str, f64)] =
    &[("facilities", 100.0), ("services", 750.0), ("pois", 1500.0)];

/// Buffer distances for the standard land-use layers, in meters.
pub const DEFAULT_POLYGON_BUFFERS: &[(&str, f64)] = &[
    ("nature", 100.0),
    ("agriculture", 50.0),
    ("culture", 100.0),
    ("summerhouse", 200.0),
    ("verify", 250.0),
];

pub fn default_point_buffer(name: &str) -> Option<f64> {
    DEFAULT_POINT_BUFFERS.iter().find(|(n, _)| *n == name).map(|(_, b)| *b)
}

pub fn default_polygon_buffer(name: &str) -> Option<f64> {
    DEFAULT_POLYGON_BUFFERS.iter().find(|(n, _)| *n == name).map(|(_, b)| *b)
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{key}`: {message}")]
    Value {
        line: usize,
        key: String,
        message: String,
    },
    #[error("line {line}: {message}")]
    Order { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeThresholds {
    pub too_short_km: f64,
    pub ideal_max_km: f64,
    pub max_km: f64,
    pub deadend_max_km: f64,
}

impl Default for EdgeThresholds {
    fn default() -> Self {
        EdgeThresholds {
            too_short_km: 1.0,
            ideal_max_km: 5.0,
            max_km: 10.0,
            deadend_max_km: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopThresholds {
    pub min_km: f64,
    pub max_km: f64,
}

impl Default for LoopThresholds {
    fn default() -> Self {
        LoopThresholds {
            min_km: 8.0,
            max_km: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeSettings {
    pub sample_interval_m: f64,
    pub class_bounds_pct: [f64; 3],
}

impl Default for SlopeSettings {
    fn default() -> Self {
        SlopeSettings {
            sample_interval_m: 50.0,
            class_bounds_pct: [2.0, 4.0, 6.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerSpec {
    pub name: String,
    pub path: PathBuf,
    pub buffer_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationConfig {
    pub edges: EdgeThresholds,
    pub loops: LoopThresholds,
    pub slope: SlopeSettings,
    pub snap_tolerance_m: f64,
    pub density_cell_m: f64,
    pub coverage_interval_m: f64,
    pub nodes_path: PathBuf,
    pub edges_path: PathBuf,
    pub elevation_path: Option<PathBuf>,
    pub point_layers: Vec<LayerSpec>,
    pub polygon_layers: Vec<LayerSpec>,
    pub output_dir: Option<PathBuf>,
    /// Class label to stroke color overrides.
    pub style: BTreeMap<String, String>,
    pub warnings: Vec<ConfigWarning>,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            edges: EdgeThresholds::default(),
            loops: LoopThresholds::default(),
            slope: SlopeSettings::default(),
            snap_tolerance_m: 0.5,
            density_cell_m: 1000.0,
            coverage_interval_m: 25.0,
            nodes_path: PathBuf::from("nodes.geojson"),
            edges_path: PathBuf::from("edges.geojson"),
            elevation_path: None,
            point_layers: Vec::new(),
            polygon_layers: Vec::new(),
            output_dir: None,
            style: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }
}

impl EvaluationConfig {
    /// Largest configured layer buffer, or 0 without layers.
    pub fn max_buffer_m(&self) -> f64 {
        self.point_layers
            .iter()
            .chain(&self.polygon_layers)
            .map(|l| l.buffer_m)
            .fold(0.0, f64::max)
    }

    /// Spatial index cell size: the largest buffer, at least 100 m.
    pub fn index_cell_m(&self) -> f64 {
        self.max_buffer_m().max(100.0)
    }
}

pub fn load_config(path: &Path) -> Result<EvaluationConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    parse_config(&text, base)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Root,
    General,
    Edges,
    Loops,
    Slope,
    PointLayers,
    PolygonLayers,
    Style,
    Unknown,
}

pub fn parse_config(text: &str, base_dir: &Path) -> Result<EvaluationConfig, ConfigError> {
    let mut cfg = EvaluationConfig {
        nodes_path: base_dir.join("nodes.geojson"),
        edges_path: base_dir.join("edges.geojson"),
        ..EvaluationConfig::default()
    };
    let mut lines_of: HashMap<&'static str, usize> = HashMap::new();
    let mut layer_names: HashMap<String, usize> = HashMap::new();
    let mut section = Section::Root;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| ConfigError::Syntax {
                line,
                message: format!("unterminated section header `{content}`"),
            })?;
            section = match name.trim() {
                "general" => Section::General,
                "edges" => Section::Edges,
                "loops" => Section::Loops,
                "slope" => Section::Slope,
                "point_layers" => Section::PointLayers,
                "polygon_layers" => Section::PolygonLayers,
                "style" => Section::Style,
                other => {
                    cfg.warnings.push(ConfigWarning {
                        line,
                        message: format!("unknown section [{other}] ignored"),
                    });
                    Section::Unknown
                }
            };
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            message: format!("expected `key = value`, found `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::Syntax {
                line,
                message: "empty key".into(),
            });
        }
        let number = || -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ConfigError::Value {
                    line,
                    key: key.to_string(),
                    message: format!("expected a number, found `{value}`"),
                })
        };
        let mut set = |slot: &mut f64, tag: &'static str| -> Result<(), ConfigError> {
            *slot = number()?;
            lines_of.insert(tag, line);
            Ok(())
        };
        let mut known = true;
        match section {
            Section::General => match key {
                "nodes" => cfg.nodes_path = base_dir.join(value),
                "edges" => cfg.edges_path = base_dir.join(value),
                "elevation" => cfg.elevation_path = Some(base_dir.join(value)),
                "output_dir" => cfg.output_dir = Some(base_dir.join(value)),
                "snap_tolerance_m" => set(&mut cfg.snap_tolerance_m, "snap_tolerance_m")?,
                "density_cell_m" => set(&mut cfg.density_cell_m, "density_cell_m")?,
                "coverage_interval_m" => set(&mut cfg.coverage_interval_m, "coverage_interval_m")?,
                _ => known = false,
            },
            Section::Edges => match key {
                "too_short_km" => set(&mut cfg.edges.too_short_km, "too_short_km")?,
                "ideal_max_km" => set(&mut cfg.edges.ideal_max_km, "ideal_max_km")?,
                "max_km" => set(&mut cfg.edges.max_km, "edge_max_km")?,
                "deadend_max_km" => set(&mut cfg.edges.deadend_max_km, "deadend_max_km")?,
                _ => known = false,
            },
            Section::Loops => match key {
                "min_km" => set(&mut cfg.loops.min_km, "loop_min_km")?,
                "max_km" => set(&mut cfg.loops.max_km, "loop_max_km")?,
                _ => known = false,
            },
            Section::Slope => match key {
                "sample_interval_m" => set(&mut cfg.slope.sample_interval_m, "slope_interval")?,
                "class_bounds_pct" => {
                    let parts: Vec<f64> = value
                        .split(',')
                        .map(|p| p.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| ConfigError::Value {
                            line,
                            key: key.into(),
                            message: format!("expected 3 comma-separated numbers, found `{value}`"),
                        })?;
                    cfg.slope.class_bounds_pct =
                        parts.try_into().map_err(|p: Vec<f64>| ConfigError::Value {
                            line,
                            key: key.into(),
                            message: format!("expected 3 values, found {}", p.len()),
                        })?;
                    lines_of.insert("class_bounds_pct", line);
                }
                _ => known = false,
            },
            Section::PointLayers | Section::PolygonLayers => {
                let is_point = section == Section::PointLayers;
                let spec = parse_layer(key, value, line, base_dir, is_point)?;
                if let Some(first) = layer_names.insert(spec.name.clone(), line) {
                    return Err(ConfigError::Value {
                        line,
                        key: key.into(),
                        message: format!("layer name already registered on line {first}"),
                    });
                }
                if is_point {
                    cfg.point_layers.push(spec);
                } else {
                    cfg.polygon_layers.push(spec);
                }
            }
            Section::Style => {
                if !is_hex_color(value) {
                    return Err(ConfigError::Value {
                        line,
                        key: key.into(),
                        message: format!("expected a #rrggbb color, found `{value}`"),
                    });
                }
                cfg.style.insert(key.to_string(), value.to_string());
            }
            Section::Root => {
                return Err(ConfigError::Syntax {
                    line,
                    message: format!("`{key}` appears before any [section]"),
                })
            }
            Section::Unknown => {}
        }
        if !known {
            cfg.warnings.push(ConfigWarning {
                line,
                message: format!("unknown key `{key}` ignored"),
            });
        }
    }

    check_ordering(&cfg, &lines_of)?;
    Ok(cfg)
}

fn parse_layer(
    key: &str,
    value: &str,
    line: usize,
    base_dir: &Path,
    is_point: bool,
) -> Result<LayerSpec, ConfigError> {
    let bad = |message: String| ConfigError::Value {
        line,
        key: key.to_string(),
        message,
    };
    if !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(bad("layer names may only contain letters, digits, `_` and `-`".into()));
    }
    let (path, buffer) = match value.rsplit_once(',') {
        Some((p, b)) => {
            let b = b
                .trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("buffer `{}` is not a number", b.trim())))?;
            (p.trim(), Some(b))
        }
        None => (value, None),
    };
    let default = if is_point {
        default_point_buffer(key)
    } else {
        default_polygon_buffer(key)
    };
    let buffer_m = buffer
        .or(default)
        .ok_or_else(|| bad("no buffer given and no default for this layer name".into()))?;
    if !(buffer_m > 0.0 && buffer_m.is_finite()) {
        return Err(bad(format!("buffer must be > 0, got {buffer_m}")));
    }
    if path.is_empty() {
        return Err(bad("missing layer path".into()));
    }
    Ok(LayerSpec {
        name: key.to_string(),
        path: base_dir.join(path),
        buffer_m,
    })
}

/// `#` opens a comment at the start of a line, or when it follows whitespace
/// and is followed by whitespace, so `#rrggbb` values survive.
fn strip_comment(raw: &str) -> &str {
    if raw.trim_start().starts_with('#') {
        return "";
    }
    let bytes = raw.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'#'
            && i > 0
            && bytes[i - 1].is_ascii_whitespace()
            && bytes.get(i + 1).is_none_or(|c| c.is_ascii_whitespace())
        {
            return &raw[..i];
        }
    }
    raw
}

fn is_hex_color(s: &str) -> bool {
    s.strip_prefix('#')
        .is_some_and(|h| (h.len() == 6 || h.len() == 3) && h.chars().all(|c| c.is_ascii_hexdigit()))
}

fn check_ordering(cfg: &EvaluationConfig, lines_of: &HashMap<&'static str, usize>) -> Result<(), ConfigError> {
    // report the latest line among the keys involved in a violation
    let line = |tags: &[&'static str]| tags.iter().filter_map(|t| lines_of.get(t)).copied().max().unwrap_or(0);
    let fail = |tags: &[&'static str], message: String| {
        Err(ConfigError::Order {
            line: line(tags),
            message,
        })
    };

    let e = &cfg.edges;
    if !(0.0 < e.too_short_km && e.too_short_km < e.ideal_max_km && e.ideal_max_km < e.max_km) {
        return fail(
            &["too_short_km", "ideal_max_km", "edge_max_km"],
            format!(
                "edge thresholds must satisfy 0 < too_short_km < ideal_max_km < max_km (got {}, {}, {})",
                e.too_short_km, e.ideal_max_km, e.max_km
            ),
        );
    }
    if e.deadend_max_km <= 0.0 {
        return fail(&["deadend_max_km"], "deadend_max_km must be > 0".into());
    }
    let l = &cfg.loops;
    if !(0.0 < l.min_km && l.min_km < l.max_km) {
        return fail(
            &["loop_min_km", "loop_max_km"],
            format!("loop thresholds must satisfy 0 < min_km < max_km (got {}, {})", l.min_km, l.max_km),
        );
    }
    let b = cfg.slope.class_bounds_pct;
    if !(0.0 < b[0] && b[0] < b[1] && b[1] < b[2]) {
        return fail(
            &["class_bounds_pct"],
            format!("class_bounds_pct must be positive and strictly ascending (got {b:?})"),
        );
    }
    for (tag, value) in [
        ("snap_tolerance_m", cfg.snap_tolerance_m),
        ("density_cell_m", cfg.density_cell_m),
        ("coverage_interval_m", cfg.coverage_interval_m),
        ("slope_interval", cfg.slope.sample_interval_m),
    ] {
        if value <= 0.0 {
            return fail(&[tag], format!("{tag} must be > 0 (got {value})"));
        }
    }
    Ok(())
}
