//! Synthetic inputs for the benchmarks.
//!
//! Everything is generated from a seed so that runs compare like with like.

use bnp_core::geometry::{Point2, Polygon, Polyline};
use bnp_core::ingest::{ElevationGrid, Feature, FeatureGeometry, FeatureLayer, LayerKind, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A jittered `n` by `n` grid network with `step` meter spacing.
///
/// Jitter stays below a quarter step so the network remains planar, and every
/// edge carries one interior vertex to exercise polyline handling.
pub fn grid_network(n: usize, step: f64, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = 0.2 * step;
    let pos: Vec<Point2> = (0..n * n)
        .map(|i| {
            let (c, r) = ((i % n) as f64, (i / n) as f64);
            Point2::new(c * step + rng.gen_range(-q..q), r * step + rng.gen_range(-q..q))
        })
        .collect();
    let nodes = pos.iter().enumerate().map(|(i, &p)| (Some(i as i64), p)).collect();
    let mut edges = Vec::new();
    for i in 0..n * n {
        let (c, r) = (i % n, i / n);
        let mut link = |j: usize| {
            let (a, b) = (pos[i], pos[j]);
            let mid = Point2::new(0.5 * (a.x + b.x) + rng.gen_range(-q..q) * 0.2, 0.5 * (a.y + b.y));
            edges.push((None, Polyline::new(vec![a, mid, b]).unwrap()));
        };
        if c + 1 < n {
            link(i + 1);
        }
        if r + 1 < n {
            link(i + n);
        }
    }
    Network::build(nodes, edges, 1.0).unwrap()
}

/// `count` uniform random points over the square `[0, extent]^2`.
pub fn random_points(count: usize, extent: f64, buffer_m: f64, seed: u64) -> FeatureLayer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FeatureLayer {
        name: "points".into(),
        kind: LayerKind::Point,
        buffer_m,
        features: (0..count)
            .map(|id| Feature {
                id,
                geometry: FeatureGeometry::Point(Point2::new(rng.gen_range(0.0..extent), rng.gen_range(0.0..extent))),
                name: None,
            })
            .collect(),
    }
}

/// `count` random axis-aligned squares with sides up to `max_side`.
pub fn random_squares(count: usize, extent: f64, max_side: f64, seed: u64) -> FeatureLayer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FeatureLayer {
        name: "squares".into(),
        kind: LayerKind::Polygon,
        buffer_m: 50.0,
        features: (0..count)
            .map(|id| {
                let (x, y) = (rng.gen_range(0.0..extent), rng.gen_range(0.0..extent));
                let s = rng.gen_range(0.1 * max_side..max_side);
                let ring = vec![
                    Point2::new(x, y),
                    Point2::new(x + s, y),
                    Point2::new(x + s, y + s),
                    Point2::new(x, y + s),
                    Point2::new(x, y),
                ];
                Feature {
                    id,
                    geometry: FeatureGeometry::Polygon(Polygon::new(ring, vec![]).unwrap()),
                    name: None,
                }
            })
            .collect(),
    }
}

/// Smooth rolling terrain covering `[0, extent]^2` with a margin.
pub fn rolling_dem(extent: f64, cellsize: f64) -> ElevationGrid {
    let margin = 2.0 * cellsize;
    let n = ((extent + 2.0 * margin) / cellsize).ceil() as usize + 1;
    let mut grid = ElevationGrid {
        ncols: n,
        nrows: n,
        xllcorner: -margin,
        yllcorner: -margin,
        cellsize,
        nodata: -9999.0,
        values: vec![0.0; n * n],
    };
    for r in 0..n {
        for c in 0..n {
            let p = grid.cell_center(c, r);
            grid.values[r * n + c] = 40.0 * (p.x / 1500.0).sin() + 25.0 * (p.y / 900.0).cos();
        }
    }
    grid
}
