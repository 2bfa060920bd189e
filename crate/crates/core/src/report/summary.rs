use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use crate::evaluate::UNCLASSIFIED;
use crate::pipeline::Evaluation;

/// Rounds to 3 decimals and folds `-0.0` into `0.0`.
pub fn round3(v: f64) -> f64 {
    let r = (v * 1000.0).round() / 1000.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn ser3<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round3(*v))
}

fn ser3_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&round3(*v)),
        None => s.serialize_none(),
    }
}

fn percent(part: f64, whole: f64) -> f64 {
    if whole > 0.0 {
        (part / whole * 100.0).clamp(0.0, 100.0)
    } else {
        0.0
    }
}

// Values are stored unrounded so block sums hold exactly; rounding happens
// on serialization only.

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkTotals {
    pub nodes: usize,
    pub edges: usize,
    #[serde(serialize_with = "ser3")]
    pub length_km: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRow {
    pub class: String,
    pub count: usize,
    #[serde(serialize_with = "ser3")]
    pub length_km: f64,
    #[serde(serialize_with = "ser3")]
    pub percent_count: f64,
    #[serde(serialize_with = "ser3")]
    pub percent_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassBlock {
    pub classes: Vec<ClassRow>,
    pub total_count: usize,
    #[serde(serialize_with = "ser3")]
    pub total_length_km: f64,
}

impl ClassBlock {
    /// One row per label in scheme order; labels outside the scheme are
    /// appended in order of first appearance.
    fn build<'a>(labels: impl Iterator<Item = &'a str>, items: impl Iterator<Item = (&'a str, f64)>) -> Self {
        let mut classes: Vec<ClassRow> = labels
            .map(|l| ClassRow {
                class: l.to_string(),
                count: 0,
                length_km: 0.0,
                percent_count: 0.0,
                percent_length: 0.0,
            })
            .collect();
        for (label, km) in items {
            let row = match classes.iter().position(|r| r.class == label) {
                Some(i) => &mut classes[i],
                None => {
                    classes.push(ClassRow {
                        class: label.to_string(),
                        count: 0,
                        length_km: 0.0,
                        percent_count: 0.0,
                        percent_length: 0.0,
                    });
                    classes.last_mut().unwrap()
                }
            };
            row.count += 1;
            row.length_km += km;
        }
        let total_count: usize = classes.iter().map(|r| r.count).sum();
        let total_length_km: f64 = classes.iter().map(|r| r.length_km).sum();
        for r in &mut classes {
            r.percent_count = percent(r.count as f64, total_count as f64);
            r.percent_length = percent(r.length_km, total_length_km);
        }
        ClassBlock {
            classes,
            total_count,
            total_length_km,
        }
    }

    pub fn row(&self, class: &str) -> Option<&ClassRow> {
        self.classes.iter().find(|r| r.class == class)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeBlock {
    #[serde(flatten)]
    pub block: ClassBlock,
    pub deadend_chains: usize,
    pub deadend_chains_too_long: usize,
    #[serde(serialize_with = "ser3")]
    pub deadend_max_km: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentRow {
    pub component_id: usize,
    pub nodes: usize,
    pub edges: usize,
    /// Independent cycles, `E - V + 1`.
    pub cycle_rank: usize,
    #[serde(serialize_with = "ser3")]
    pub length_km: f64,
    #[serde(serialize_with = "ser3")]
    pub percent_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentBlock {
    pub count: usize,
    pub components: Vec<ComponentRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointLayerBlock {
    pub layer: String,
    #[serde(serialize_with = "ser3")]
    pub buffer_m: f64,
    pub points: usize,
    pub within: usize,
    pub outside: usize,
    #[serde(serialize_with = "ser3")]
    pub percent_within: f64,
    #[serde(serialize_with = "ser3_opt")]
    pub km_per_reachable_point: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonLayerBlock {
    pub layer: String,
    #[serde(serialize_with = "ser3")]
    pub buffer_m: f64,
    #[serde(serialize_with = "ser3")]
    pub km_inside: f64,
    #[serde(serialize_with = "ser3")]
    pub km_outside: f64,
    #[serde(serialize_with = "ser3")]
    pub percent_inside: f64,
    pub edges_through: usize,
    pub edges_total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeBlock {
    #[serde(flatten)]
    pub block: ClassBlock,
    /// Length-weighted mean of per-edge average slopes over edges with data.
    #[serde(serialize_with = "ser3_opt")]
    pub network_avg_slope_pct: Option<f64>,
    #[serde(serialize_with = "ser3_opt")]
    pub max_slope_pct: Option<f64>,
}

/// Statistics over every analysis present in an [`Evaluation`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryDocument {
    pub network: NetworkTotals,
    pub edges: Option<EdgeBlock>,
    pub loops: Option<ClassBlock>,
    pub components: Option<ComponentBlock>,
    pub point_layers: Vec<PointLayerBlock>,
    pub polygon_layers: Vec<PolygonLayerBlock>,
    pub slope: Option<SlopeBlock>,
}

pub fn summarize(ev: &Evaluation) -> SummaryDocument {
    let network = NetworkTotals {
        nodes: ev.network.nodes().len(),
        edges: ev.network.edges().len(),
        length_km: ev.network.total_length() / 1000.0,
    };

    let edges = ev.edges.as_ref().map(|ec| EdgeBlock {
        block: ClassBlock::build(
            ev.edge_scheme.labels(),
            ec.edges.iter().map(|e| (e.class.as_str(), e.length_m / 1000.0)),
        ),
        deadend_chains: ec.chains.len(),
        deadend_chains_too_long: ec
            .chains
            .iter()
            .filter(|c| c.total_length >= ev.deadend_max_km * 1000.0)
            .count(),
        deadend_max_km: ev.deadend_max_km,
    });

    let loops = ev.loops.as_ref().map(|la| {
        ClassBlock::build(
            ev.loop_scheme.labels(),
            la.classes.iter().map(|c| (c.class.as_str(), c.perimeter_m / 1000.0)),
        )
    });

    let components = ev.components.as_ref().map(|c| {
        let total: f64 = c.summaries.iter().map(|s| s.length_m).sum();
        ComponentBlock {
            count: c.count(),
            components: c
                .summaries
                .iter()
                .map(|s| ComponentRow {
                    component_id: s.id,
                    nodes: s.nodes,
                    edges: s.edges,
                    cycle_rank: (s.edges + 1).saturating_sub(s.nodes),
                    length_km: s.length_m / 1000.0,
                    percent_length: percent(s.length_m, total),
                })
                .collect(),
        }
    });

    let point_layers = ev
        .points
        .iter()
        .map(|p| PointLayerBlock {
            layer: p.layer.clone(),
            buffer_m: p.buffer_m,
            points: p.points.len(),
            within: p.within,
            outside: p.outside,
            percent_within: percent(p.within as f64, p.points.len() as f64),
            km_per_reachable_point: p.km_per_reachable_point(),
        })
        .collect();

    let polygon_layers = ev
        .polygons
        .iter()
        .map(|c| PolygonLayerBlock {
            layer: c.layer.clone(),
            buffer_m: c.buffer_m,
            km_inside: c.length_inside_m / 1000.0,
            km_outside: c.length_outside_m / 1000.0,
            percent_inside: percent(c.length_inside_m, c.total_length_m()),
            edges_through: c.edges_through(),
            edges_total: c.edges.len(),
        })
        .collect();

    let slope = ev.slopes.as_ref().map(|profiles| {
        let block = ClassBlock::build(
            ev.slope_scheme.labels().chain(std::iter::once(UNCLASSIFIED)),
            profiles.iter().map(|p| (p.class.as_str(), p.length_m / 1000.0)),
        );
        let (mut num, mut den) = (0.0, 0.0);
        for p in profiles {
            if let Some(a) = p.avg_slope_pct {
                num += a * p.length_m;
                den += p.length_m;
            }
        }
        SlopeBlock {
            block,
            network_avg_slope_pct: (den > 0.0).then(|| num / den),
            max_slope_pct: profiles.iter().filter_map(|p| p.max_slope_pct).reduce(f64::max),
        }
    });

    SummaryDocument {
        network,
        edges,
        loops,
        components,
        point_layers,
        polygon_layers,
        slope,
    }
}

impl SummaryDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{:.3}", round3(v)))
}

fn class_table(f: &mut String, block: &ClassBlock) {
    let _ = writeln!(f, "  {:<14} {:>6} {:>12} {:>8} {:>8}", "class", "count", "length_km", "%count", "%length");
    for r in &block.classes {
        let _ = writeln!(
            f,
            "  {:<14} {:>6} {:>12.3} {:>8.3} {:>8.3}",
            r.class,
            r.count,
            round3(r.length_km),
            round3(r.percent_count),
            round3(r.percent_length)
        );
    }
    let _ = writeln!(f, "  {:<14} {:>6} {:>12.3}", "total", block.total_count, round3(block.total_length_km));
}

impl fmt::Display for SummaryDocument {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut f = String::new();
        let n = &self.network;
        let _ = writeln!(f, "network: {} nodes, {} edges, {:.3} km", n.nodes, n.edges, round3(n.length_km));

        if let Some(e) = &self.edges {
            let _ = writeln!(f, "\nedge lengths");
            class_table(&mut f, &e.block);
            let _ = writeln!(
                f,
                "  dead-end chains: {} ({} at or above {:.3} km)",
                e.deadend_chains,
                e.deadend_chains_too_long,
                round3(e.deadend_max_km)
            );
        }
        if let Some(l) = &self.loops {
            let _ = writeln!(f, "\nloop perimeters");
            class_table(&mut f, l);
        }
        if let Some(c) = &self.components {
            let _ = writeln!(f, "\ncomponents: {}", c.count);
            let _ = writeln!(
                f,
                "  {:<4} {:>6} {:>6} {:>6} {:>12} {:>8}",
                "id", "nodes", "edges", "cycles", "length_km", "%length"
            );
            for r in &c.components {
                let _ = writeln!(
                    f,
                    "  {:<4} {:>6} {:>6} {:>6} {:>12.3} {:>8.3}",
                    r.component_id,
                    r.nodes,
                    r.edges,
                    r.cycle_rank,
                    round3(r.length_km),
                    round3(r.percent_length)
                );
            }
        }
        if !self.point_layers.is_empty() {
            let _ = writeln!(f, "\npoint layers");
            let _ = writeln!(
                f,
                "  {:<16} {:>9} {:>6} {:>6} {:>7} {:>8} {:>10}",
                "layer", "buffer_m", "points", "within", "outside", "%within", "km/point"
            );
            for p in &self.point_layers {
                let _ = writeln!(
                    f,
                    "  {:<16} {:>9.3} {:>6} {:>6} {:>7} {:>8.3} {:>10}",
                    p.layer,
                    round3(p.buffer_m),
                    p.points,
                    p.within,
                    p.outside,
                    round3(p.percent_within),
                    opt(p.km_per_reachable_point)
                );
            }
        }
        if !self.polygon_layers.is_empty() {
            let _ = writeln!(f, "\npolygon layers");
            let _ = writeln!(
                f,
                "  {:<16} {:>9} {:>10} {:>10} {:>8} {:>8}",
                "layer", "buffer_m", "km_inside", "km_outside", "%inside", "through"
            );
            for p in &self.polygon_layers {
                let _ = writeln!(
                    f,
                    "  {:<16} {:>9.3} {:>10.3} {:>10.3} {:>8.3} {:>8}",
                    p.layer,
                    round3(p.buffer_m),
                    round3(p.km_inside),
                    round3(p.km_outside),
                    round3(p.percent_inside),
                    format!("{}/{}", p.edges_through, p.edges_total)
                );
            }
        }
        if let Some(s) = &self.slope {
            let _ = writeln!(f, "\nslopes");
            class_table(&mut f, &s.block);
            let _ = writeln!(
                f,
                "  network average {} %, maximum {} %",
                opt(s.network_avg_slope_pct),
                opt(s.max_slope_pct)
            );
        }
        out.write_str(&f)
    }
}
