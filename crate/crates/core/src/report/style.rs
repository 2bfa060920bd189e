use std::collections::BTreeMap;

use crate::evaluate::{
    ABOVE_IDEAL, IDEAL, MANAGEABLE, NOTICEABLE, STEEP, TOO_LONG, TOO_SHORT, UNCLASSIFIED, VERY_STEEP,
};

pub const WITHIN_REACH: &str = "within_reach";
pub const OUTSIDE_REACH: &str = "outside_reach";
pub const THROUGH_LAYER: &str = "through_layer";
pub const OUTSIDE_LAYER: &str = "outside_layer";
pub const DEADEND_TOO_LONG: &str = "deadend_too_long";
pub const NETWORK: &str = "network";
pub const NODE: &str = "node";
pub const DENSITY: &str = "density";
pub const POINT_FEATURE: &str = "point_feature";
pub const POLYGON_FEATURE: &str = "polygon_feature";

/// Qualitative palette for component maps, cycled by component id.
pub const COMPONENT_PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ClassStyle {
    pub stroke: String,
    pub stroke_width: f64,
    pub point_radius: f64,
}

impl ClassStyle {
    fn new(stroke: &str, stroke_width: f64, point_radius: f64) -> Self {
        ClassStyle {
            stroke: stroke.to_string(),
            stroke_width,
            point_radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StyleSpec {
    pub classes: BTreeMap<String, ClassStyle>,
    /// Width of the map area in pixels; the legend panel is added on the right.
    pub map_width: f64,
    pub legend_width: f64,
    pub margin: f64,
}

impl Default for StyleSpec {
    fn default() -> Self {
        let entries = [
            // lengths: black / green / yellow / red
            (TOO_SHORT, ClassStyle::new("#000000", 2.0, 3.0)),
            (IDEAL, ClassStyle::new("#2ca02c", 2.0, 3.0)),
            (ABOVE_IDEAL, ClassStyle::new("#e6c700", 2.0, 3.0)),
            (TOO_LONG, ClassStyle::new("#d62728", 2.5, 3.0)),
            (DEADEND_TOO_LONG, ClassStyle::new("#7b2cbf", 5.0, 3.0)),
            // slopes: darker reds for steeper classes
            (MANAGEABLE, ClassStyle::new("#fcbba1", 2.0, 3.0)),
            (NOTICEABLE, ClassStyle::new("#fb6a4a", 2.0, 3.0)),
            (STEEP, ClassStyle::new("#cb181d", 2.5, 3.0)),
            (VERY_STEEP, ClassStyle::new("#67000d", 3.0, 3.0)),
            (UNCLASSIFIED, ClassStyle::new("#bdbdbd", 1.5, 3.0)),
            // access: large points in reach, small points out of reach
            (WITHIN_REACH, ClassStyle::new("#1f77b4", 1.0, 5.0)),
            (OUTSIDE_REACH, ClassStyle::new("#7f7f7f", 1.0, 2.0)),
            (THROUGH_LAYER, ClassStyle::new("#2ca02c", 2.5, 3.0)),
            (OUTSIDE_LAYER, ClassStyle::new("#000000", 1.0, 3.0)),
            (NETWORK, ClassStyle::new("#404040", 1.5, 3.0)),
            (NODE, ClassStyle::new("#000000", 1.0, 2.5)),
            (DENSITY, ClassStyle::new("#ff7f0e", 0.0, 0.0)),
            (POINT_FEATURE, ClassStyle::new("#1f77b4", 1.0, 3.0)),
            (POLYGON_FEATURE, ClassStyle::new("#9ecae1", 1.0, 3.0)),
        ];
        StyleSpec {
            classes: entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            map_width: 1000.0,
            legend_width: 240.0,
            margin: 20.0,
        }
    }
}

impl StyleSpec {
    /// Default style with stroke colors replaced per class label.
    pub fn with_overrides(overrides: &BTreeMap<String, String>) -> Self {
        let mut spec = StyleSpec::default();
        for (label, color) in overrides {
            let base = spec.style_for(label);
            spec.classes.insert(
                label.clone(),
                ClassStyle {
                    stroke: color.clone(),
                    ..base
                },
            );
        }
        spec
    }

    /// Style for a label; `component_<n>` labels cycle the palette.
    pub fn style_for(&self, label: &str) -> ClassStyle {
        if let Some(s) = self.classes.get(label) {
            return s.clone();
        }
        if let Some(n) = label.strip_prefix("component_").and_then(|n| n.parse::<usize>().ok()) {
            return ClassStyle::new(COMPONENT_PALETTE[n % COMPONENT_PALETTE.len()], 2.0, 3.0);
        }
        ClassStyle::new("#808080", 1.5, 3.0)
    }
}
