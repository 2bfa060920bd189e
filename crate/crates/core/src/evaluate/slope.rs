use rayon::prelude::*;

use super::{slope_scheme, UNCLASSIFIED};
use crate::geometry::{uniform_chainages, Point2};
use crate::ingest::{ElevationGrid, Network, SlopeSettings};

/// Share of valid elevation samples an edge needs to receive a class.
pub const MIN_VALID_FRACTION: f64 = 0.5;

/// Bilinear interpolation between the four surrounding cell centers.
///
/// Returns `None` outside the hull of cell centers or when a cell with
/// non-zero weight is nodata.
pub fn sample_elevation(grid: &ElevationGrid, p: Point2) -> Option<f64> {
    let fc = (p.x - grid.xllcorner) / grid.cellsize - 0.5;
    let top = grid.yllcorner + grid.nrows as f64 * grid.cellsize;
    let fr = (top - p.y) / grid.cellsize - 0.5;
    let (max_c, max_r) = ((grid.ncols - 1) as f64, (grid.nrows - 1) as f64);
    if !(0.0..=max_c).contains(&fc) || !(0.0..=max_r).contains(&fr) {
        return None;
    }
    let c0 = (fc.floor() as usize).min(grid.ncols - 2);
    let r0 = (fr.floor() as usize).min(grid.nrows - 2);
    let (tx, ty) = (fc - c0 as f64, fr - r0 as f64);
    let corners = [
        (c0, r0, (1.0 - tx) * (1.0 - ty)),
        (c0 + 1, r0, tx * (1.0 - ty)),
        (c0, r0 + 1, (1.0 - tx) * ty),
        (c0 + 1, r0 + 1, tx * ty),
    ];
    let mut z = 0.0;
    for (c, r, w) in corners {
        if w > 0.0 {
            z += w * grid.value(c, r)?;
        }
    }
    Some(z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeProfile {
    pub edge_id: i64,
    pub length_m: f64,
    pub chainages: Vec<f64>,
    pub elevations: Vec<Option<f64>>,
    /// Length-weighted mean of absolute segment slopes over valid pairs.
    pub avg_slope_pct: Option<f64>,
    pub max_slope_pct: Option<f64>,
    /// Slope class, or `unclassified` below [`MIN_VALID_FRACTION`].
    pub class: String,
    pub valid_fraction: f64,
}

/// Summarizes sampled elevations into average and maximum absolute slope.
/// Pairs touching a nodata sample are skipped.
pub fn slope_stats(chainages: &[f64], elevations: &[Option<f64>]) -> (Option<f64>, Option<f64>) {
    let mut rise = 0.0;
    let mut run = 0.0;
    let mut max: Option<f64> = None;
    for i in 1..chainages.len() {
        if let (Some(z0), Some(z1)) = (elevations[i - 1], elevations[i]) {
            let ds = chainages[i] - chainages[i - 1];
            if ds <= 0.0 {
                continue;
            }
            let dz = (z1 - z0).abs();
            rise += dz;
            run += ds;
            let s = dz * 100.0 / ds;
            max = Some(max.map_or(s, |m: f64| m.max(s)));
        }
    }
    let avg = (run > 0.0).then(|| rise * 100.0 / run);
    (avg, max)
}

/// Samples each edge every `sample_interval_m` (evenly spread, ends
/// included) and classifies it by average slope.
pub fn evaluate_slopes(network: &Network, grid: &ElevationGrid, settings: &SlopeSettings) -> Vec<SlopeProfile> {
    let scheme = slope_scheme(&settings.class_bounds_pct);
    network
        .edges()
        .par_iter()
        .map(|e| {
            let chainages = uniform_chainages(e.length, settings.sample_interval_m);
            let elevations: Vec<Option<f64>> = e
                .geometry
                .points_at(&chainages)
                .into_iter()
                .map(|p| sample_elevation(grid, p))
                .collect();
            let valid = elevations.iter().filter(|z| z.is_some()).count();
            let valid_fraction = valid as f64 / elevations.len() as f64;
            let (avg, max) = slope_stats(&chainages, &elevations);
            let class = match avg {
                Some(a) if valid_fraction >= MIN_VALID_FRACTION => scheme.classify(a).to_string(),
                _ => UNCLASSIFIED.to_string(),
            };
            SlopeProfile {
                edge_id: e.id,
                length_m: e.length,
                chainages,
                elevations,
                avg_slope_pct: avg,
                max_slope_pct: max,
                class,
                valid_fraction,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::{MANAGEABLE, VERY_STEEP};
    use crate::geometry::Polyline;

    fn grid(ncols: usize, nrows: usize, cellsize: f64, f: impl Fn(Point2) -> f64) -> ElevationGrid {
        let mut g = ElevationGrid {
            ncols,
            nrows,
            xllcorner: 0.0,
            yllcorner: 0.0,
            cellsize,
            nodata: -9999.0,
            values: vec![0.0; ncols * nrows],
        };
        for r in 0..nrows {
            for c in 0..ncols {
                g.values[r * ncols + c] = f(g.cell_center(c, r));
            }
        }
        g
    }

    fn edge(a: Point2, b: Point2) -> Network {
        Network::build(
            vec![(None, a), (None, b)],
            vec![(None, Polyline::new(vec![a, b]).unwrap())],
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn bilinear_cases() {
        let g = ElevationGrid {
            ncols: 2,
            nrows: 2,
            xllcorner: 0.0,
            yllcorner: 0.0,
            cellsize: 100.0,
            nodata: -9999.0,
            values: vec![0.0, 10.0, 20.0, 30.0],
        };
        assert_eq!(sample_elevation(&g, Point2::new(50.0, 150.0)), Some(0.0));
        assert_eq!(sample_elevation(&g, Point2::new(150.0, 50.0)), Some(30.0));
        assert_eq!(sample_elevation(&g, Point2::new(100.0, 100.0)), Some(15.0));
        assert_eq!(sample_elevation(&g, Point2::new(10.0, 100.0)), None);
        assert_eq!(sample_elevation(&g, Point2::new(500.0, 500.0)), None);
    }

    #[test]
    fn nodata_neighbours() {
        let g = ElevationGrid {
            ncols: 2,
            nrows: 2,
            xllcorner: 0.0,
            yllcorner: 0.0,
            cellsize: 100.0,
            nodata: -9999.0,
            values: vec![0.0, -9999.0, 20.0, 30.0],
        };
        assert_eq!(sample_elevation(&g, Point2::new(100.0, 100.0)), None);
        // a zero-weight nodata neighbour does not contribute
        assert_eq!(sample_elevation(&g, Point2::new(50.0, 150.0)), Some(0.0));
        assert_eq!(sample_elevation(&g, Point2::new(50.0, 100.0)), Some(10.0));
    }

    #[test]
    fn flat_and_ramp() {
        let flat = grid(30, 3, 50.0, |_| 12.0);
        let net = edge(Point2::new(25.0, 75.0), Point2::new(1025.0, 75.0));
        let p = &evaluate_slopes(&net, &flat, &SlopeSettings::default())[0];
        assert_eq!(p.avg_slope_pct, Some(0.0));
        assert_eq!(p.class, MANAGEABLE);

        // 6 % ramp sampled at cell centers: rise 60 m over 1000 m
        let ramp = grid(30, 3, 50.0, |c| 0.06 * (c.x - 25.0));
        let p = &evaluate_slopes(&net, &ramp, &SlopeSettings::default())[0];
        assert_eq!(p.avg_slope_pct, Some(6.0));
        assert_eq!(p.class, VERY_STEEP);
        assert!((p.max_slope_pct.unwrap() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn mostly_nodata_is_unclassified() {
        let mut g = grid(30, 3, 50.0, |c| c.x * 0.01);
        for c in 5..30 {
            for r in 0..3 {
                g.values[r * 30 + c] = -9999.0;
            }
        }
        let net = edge(Point2::new(25.0, 75.0), Point2::new(1025.0, 75.0));
        let p = &evaluate_slopes(&net, &g, &SlopeSettings::default())[0];
        assert!(p.valid_fraction < MIN_VALID_FRACTION);
        assert_eq!(p.class, UNCLASSIFIED);
        assert!(p.avg_slope_pct.is_some());
    }

    #[test]
    fn outside_grid_has_no_slope() {
        let g = grid(3, 3, 50.0, |_| 0.0);
        let net = edge(Point2::new(5000.0, 0.0), Point2::new(6000.0, 0.0));
        let p = &evaluate_slopes(&net, &g, &SlopeSettings::default())[0];
        assert_eq!((p.avg_slope_pct, p.max_slope_pct), (None, None));
        assert_eq!(p.valid_fraction, 0.0);
        assert_eq!(p.class, UNCLASSIFIED);
    }
}
