use thiserror::Error;

use crate::ingest::{EdgeThresholds, LoopThresholds};

pub const TOO_SHORT: &str = "too_short";
pub const IDEAL: &str = "ideal";
pub const ABOVE_IDEAL: &str = "above_ideal";
pub const TOO_LONG: &str = "too_long";
pub const MANAGEABLE: &str = "manageable";
pub const NOTICEABLE: &str = "noticeable";
pub const STEEP: &str = "steep";
pub const VERY_STEEP: &str = "very_steep";
pub const UNCLASSIFIED: &str = "unclassified";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("a scheme needs at least one class")]
    Empty,
    #[error("first class must start at 0, got {0}")]
    FirstBound(f64),
    #[error("class bounds must be finite and strictly ascending")]
    NotAscending,
    #[error("expected {labels} labels for {bounds} inner bounds")]
    Arity { labels: usize, bounds: usize },
}

/// Contiguous half-open intervals `[lower, next lower)` covering `[0, inf)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationScheme {
    classes: Vec<(String, f64)>,
}

impl ClassificationScheme {
    /// Classes given as `(label, lower bound)`; the last class is unbounded.
    pub fn new(classes: Vec<(String, f64)>) -> Result<Self, SchemeError> {
        let first = classes.first().ok_or(SchemeError::Empty)?;
        if first.1 != 0.0 {
            return Err(SchemeError::FirstBound(first.1));
        }
        if classes.iter().any(|c| !c.1.is_finite()) || classes.windows(2).any(|w| w[0].1 >= w[1].1) {
            return Err(SchemeError::NotAscending);
        }
        Ok(ClassificationScheme { classes })
    }

    /// `labels.len()` classes separated by the inner `bounds`.
    pub fn from_bounds(labels: &[&str], bounds: &[f64]) -> Result<Self, SchemeError> {
        if labels.len() != bounds.len() + 1 {
            return Err(SchemeError::Arity {
                labels: labels.len(),
                bounds: bounds.len(),
            });
        }
        let lowers = std::iter::once(0.0).chain(bounds.iter().copied());
        Self::new(labels.iter().map(|l| l.to_string()).zip(lowers).collect())
    }

    pub fn classify(&self, value: f64) -> &str {
        let i = self.classes.partition_point(|(_, lower)| *lower <= value);
        &self.classes[i.saturating_sub(1)].0
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|(l, _)| l.as_str())
    }

    /// `(label, lower, upper)` for every class.
    pub fn intervals(&self) -> Vec<(&str, f64, f64)> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, (l, lo))| {
                let hi = self.classes.get(i + 1).map_or(f64::INFINITY, |c| c.1);
                (l.as_str(), *lo, hi)
            })
            .collect()
    }
}

/// Edge length classes, in kilometers.
pub fn edge_scheme(t: &EdgeThresholds) -> ClassificationScheme {
    ClassificationScheme::from_bounds(
        &[TOO_SHORT, IDEAL, ABOVE_IDEAL, TOO_LONG],
        &[t.too_short_km, t.ideal_max_km, t.max_km],
    )
    .expect("thresholds validated at config load")
}

/// Loop perimeter classes, in kilometers.
pub fn loop_scheme(t: &LoopThresholds) -> ClassificationScheme {
    ClassificationScheme::from_bounds(&[TOO_SHORT, IDEAL, TOO_LONG], &[t.min_km, t.max_km])
        .expect("thresholds validated at config load")
}

/// Average slope classes, in percent.
pub fn slope_scheme(bounds_pct: &[f64; 3]) -> ClassificationScheme {
    ClassificationScheme::from_bounds(&[MANAGEABLE, NOTICEABLE, STEEP, VERY_STEEP], bounds_pct)
        .expect("bounds validated at config load")
}
