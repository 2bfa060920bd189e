use rayon::prelude::*;

use crate::geometry::{GridIndex, Point2};
use crate::ingest::{FeatureLayer, Network};

#[derive(Debug, Clone, PartialEq)]
pub struct PointAccess {
    pub feature_id: usize,
    pub location: Point2,
    pub name: Option<String>,
    /// Exact distance to the closest network edge.
    pub distance_m: f64,
    pub nearest_edge: i64,
    pub within_reach: bool,
}

/// Point counts per square cell, anchored at the lower-left corner of the
/// layer's bounding box. Row 0 is the southernmost row.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub origin: Point2,
    pub cell_size: f64,
    pub ncols: usize,
    pub nrows: usize,
    pub counts: Vec<u32>,
}

impl DensityGrid {
    pub fn build(points: &[Point2], cell_size: f64) -> Option<Self> {
        let bounds = crate::geometry::Bounds::of_points(points);
        if bounds.is_empty() {
            return None;
        }
        let ncols = ((bounds.width() / cell_size).ceil() as usize).max(1);
        let nrows = ((bounds.height() / cell_size).ceil() as usize).max(1);
        let mut counts = vec![0u32; ncols * nrows];
        for p in points {
            let c = (((p.x - bounds.min.x) / cell_size) as usize).min(ncols - 1);
            let r = (((p.y - bounds.min.y) / cell_size) as usize).min(nrows - 1);
            counts[r * ncols + c] += 1;
        }
        Some(DensityGrid {
            origin: bounds.min,
            cell_size,
            ncols,
            nrows,
            counts,
        })
    }

    pub fn count(&self, col: usize, row: usize) -> u32 {
        self.counts[row * self.ncols + col]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointAccessResult {
    pub layer: String,
    pub buffer_m: f64,
    pub points: Vec<PointAccess>,
    pub within: usize,
    pub outside: usize,
    pub density: Option<DensityGrid>,
    pub network_length_m: f64,
}

impl PointAccessResult {
    /// Network length per reachable point: the average spacing a cyclist
    /// would see between reachable points. `None` if nothing is reachable.
    pub fn km_per_reachable_point(&self) -> Option<f64> {
        (self.within > 0).then(|| self.network_length_m / 1000.0 / self.within as f64)
    }
}

pub fn evaluate_point_layer(
    network: &Network,
    index: &GridIndex,
    layer: &FeatureLayer,
    density_cell_m: f64,
) -> PointAccessResult {
    let features: Vec<_> = layer.features.iter().collect();
    let points: Vec<PointAccess> = features
        .par_iter()
        .filter_map(|f| match f.geometry {
            crate::ingest::FeatureGeometry::Point(p) => Some((f, p)),
            _ => None,
        })
        .map(|(f, p)| {
            let (distance_m, nearest_edge) = index.nearest(p).expect("network has edges");
            PointAccess {
                feature_id: f.id,
                location: p,
                name: f.name.clone(),
                distance_m,
                nearest_edge,
                within_reach: distance_m <= layer.buffer_m,
            }
        })
        .collect();
    let within = points.iter().filter(|p| p.within_reach).count();
    PointAccessResult {
        layer: layer.name.clone(),
        buffer_m: layer.buffer_m,
        within,
        outside: points.len() - within,
        density: DensityGrid::build(
            &points.iter().map(|p| p.location).collect::<Vec<_>>(),
            density_cell_m,
        ),
        points,
        network_length_m: network.total_length(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polyline;
    use crate::ingest::{Feature, FeatureGeometry, LayerKind};

    fn layer(name: &str, buffer: f64, pts: &[(f64, f64)]) -> FeatureLayer {
        FeatureLayer {
            name: name.into(),
            kind: LayerKind::Point,
            buffer_m: buffer,
            features: pts
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| Feature {
                    id: i,
                    geometry: FeatureGeometry::Point(Point2::new(x, y)),
                    name: None,
                })
                .collect(),
        }
    }

    fn network() -> Network {
        Network::build(
            vec![(None, Point2::new(0.0, 0.0)), (None, Point2::new(5000.0, 0.0))],
            vec![(
                None,
                Polyline::new(vec![Point2::new(0.0, 0.0), Point2::new(5000.0, 0.0)]).unwrap(),
            )],
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn reach_thresholds() {
        let net = network();
        let idx = GridIndex::build(net.edges().iter().map(|e| (e.id, &e.geometry)), 100.0);
        let fac = evaluate_point_layer(&net, &idx, &layer("facilities", 100.0, &[(2500.0, 50.0)]), 1000.0);
        assert!(fac.points[0].within_reach);
        assert_eq!(fac.points[0].distance_m, 50.0);
        let srv = evaluate_point_layer(&net, &idx, &layer("services", 750.0, &[(2500.0, -900.0)]), 1000.0);
        assert!(!srv.points[0].within_reach);
        assert_eq!((srv.within, srv.outside), (0, 1));
        assert_eq!(srv.km_per_reachable_point(), None);
        // exactly on the buffer counts as reachable
        let edge = evaluate_point_layer(&net, &idx, &layer("x", 100.0, &[(6000.0, 0.0)]), 1000.0);
        assert_eq!(edge.points[0].distance_m, 1000.0);
        let edge = evaluate_point_layer(&net, &idx, &layer("x", 1000.0, &[(6000.0, 0.0)]), 1000.0);
        assert!(edge.points[0].within_reach);
    }

    #[test]
    fn density_counts() {
        let pts: Vec<Point2> = [(0.0, 0.0), (10.0, 0.0), (2500.0, 0.0), (2000.0, 1999.0)]
            .iter()
            .map(|&(x, y)| Point2::new(x, y))
            .collect();
        let g = DensityGrid::build(&pts, 1000.0).unwrap();
        assert_eq!((g.ncols, g.nrows), (3, 2));
        assert_eq!(g.count(0, 0), 2);
        assert_eq!(g.count(2, 0), 1);
        assert_eq!(g.count(2, 1), 1);
        assert_eq!(g.total(), 4);
        assert!(DensityGrid::build(&[], 10.0).is_none());
    }

    #[test]
    fn spacing_statistic() {
        let net = network();
        let idx = GridIndex::build(net.edges().iter().map(|e| (e.id, &e.geometry)), 100.0);
        let r = evaluate_point_layer(&net, &idx, &layer("toilets", 100.0, &[(0.0, 0.0), (4000.0, 10.0)]), 1000.0);
        assert_eq!(r.km_per_reachable_point(), Some(2.5));
    }
}
