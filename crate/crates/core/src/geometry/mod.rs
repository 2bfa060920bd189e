//! Planar geometry over projected, meter-unit coordinates.
//!
//! Everything here assumes a projected CRS: distances are Euclidean and
//! lengths are in meters. Rings and polylines are validated on construction,
//! so the free functions below never fail.

mod index;

pub use index::{GridIndex, SegmentRef};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("polyline needs at least 2 distinct vertices, got {0}")]
    DegeneratePolyline(usize),
    #[error("ring needs at least 4 vertices, got {0}")]
    ShortRing(usize),
    #[error("ring is not closed (first vertex != last vertex)")]
    UnclosedRing,
    #[error("polygon exterior has zero area")]
    ZeroArea,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub(crate) fn checked(self) -> Result<Self, GeometryError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(GeometryError::NonFinite {
                x: self.x,
                y: self.y,
            })
        }
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Point2,
    pub max: Point2,
}

impl Bounds {
    pub fn empty() -> Self {
        Bounds {
            min: Point2::new(f64::INFINITY, f64::INFINITY),
            max: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.min.x > self.max.x || self.min.y > self.max.y
    }

    pub fn extend(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&mut self, other: &Bounds) {
        if !other.is_empty() {
            self.extend(other.min);
            self.extend(other.max);
        }
    }

    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Self {
        let mut b = Bounds::empty();
        for p in points {
            b.extend(*p);
        }
        b
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Euclidean distance from `p` to the box (0 inside).
    pub fn distance_to(&self, p: Point2) -> f64 {
        let dx = (self.min.x - p.x).max(0.0).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(0.0).max(p.y - self.max.y);
        dx.hypot(dy)
    }
}

/// An open polyline with at least two distinct vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point2>,
}

impl Polyline {
    /// Builds a polyline, dropping consecutive duplicate vertices.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let mut out: Vec<Point2> = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.checked()?;
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        if out.len() < 2 {
            return Err(GeometryError::DegeneratePolyline(out.len()));
        }
        Ok(Polyline { vertices: out })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn first(&self) -> Point2 {
        self.vertices[0]
    }

    pub fn last(&self) -> Point2 {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Polyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Polyline { vertices }
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::of_points(&self.vertices)
    }

    /// Replaces the end vertices, e.g. to snap them onto node locations.
    pub fn with_endpoints(&self, start: Point2, end: Point2) -> Result<Polyline, GeometryError> {
        let mut vertices = self.vertices.clone();
        vertices[0] = start;
        let n = vertices.len();
        vertices[n - 1] = end;
        Polyline::new(vertices)
    }

    /// Point at `chainage` meters along the line, clamped to the ends.
    pub fn point_at(&self, chainage: f64) -> Point2 {
        if chainage <= 0.0 {
            return self.first();
        }
        let mut walked = 0.0;
        for (a, b) in self.segments() {
            let len = a.distance(b);
            if walked + len >= chainage {
                let t = (chainage - walked) / len;
                return lerp(a, b, t);
            }
            walked += len;
        }
        self.last()
    }

    /// Points at each of the given ascending chainages, in one pass.
    pub fn points_at(&self, chainages: &[f64]) -> Vec<Point2> {
        let mut out = Vec::with_capacity(chainages.len());
        let segs: Vec<(Point2, Point2, f64)> =
            self.segments().map(|(a, b)| (a, b, a.distance(b))).collect();
        let mut seg = 0;
        let mut start = 0.0;
        for &c in chainages {
            while seg + 1 < segs.len() && start + segs[seg].2 < c {
                start += segs[seg].2;
                seg += 1;
            }
            let (a, b, len) = segs[seg];
            let t = ((c - start) / len).clamp(0.0, 1.0);
            out.push(lerp(a, b, t));
        }
        out
    }
}

fn lerp(a: Point2, b: Point2, t: f64) -> Point2 {
    if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        Point2::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
    }
}

/// A polygon with an exterior ring and optional holes. Rings are closed
/// (first vertex repeated at the end).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    exterior: Vec<Point2>,
    holes: Vec<Vec<Point2>>,
}

impl Polygon {
    pub fn new(exterior: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Result<Self, GeometryError> {
        check_ring(&exterior)?;
        for h in &holes {
            check_ring(h)?;
        }
        if ring_signed_area(&exterior) == 0.0 {
            return Err(GeometryError::ZeroArea);
        }
        Ok(Polygon { exterior, holes })
    }

    pub fn exterior(&self) -> &[Point2] {
        &self.exterior
    }

    pub fn holes(&self) -> &[Vec<Point2>] {
        &self.holes
    }

    pub fn rings(&self) -> impl Iterator<Item = &[Point2]> {
        std::iter::once(self.exterior.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::of_points(&self.exterior)
    }
}

fn check_ring(ring: &[Point2]) -> Result<(), GeometryError> {
    for p in ring {
        p.checked()?;
    }
    if ring.len() < 4 {
        return Err(GeometryError::ShortRing(ring.len()));
    }
    if ring[0] != ring[ring.len() - 1] {
        return Err(GeometryError::UnclosedRing);
    }
    Ok(())
}

/// Shoelace area of a closed ring; positive when counter-clockwise.
pub fn ring_signed_area(ring: &[Point2]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    // shift to the first vertex to keep large projected coordinates precise
    let o = ring[0];
    let mut twice = 0.0;
    for w in ring.windows(2) {
        let (ax, ay) = (w[0].x - o.x, w[0].y - o.y);
        let (bx, by) = (w[1].x - o.x, w[1].y - o.y);
        twice += ax * by - bx * ay;
    }
    twice / 2.0
}

pub fn polyline_length(line: &Polyline) -> f64 {
    line.segments().map(|(a, b)| a.distance(b)).sum()
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    if t <= 0.0 {
        p.distance(a)
    } else if t >= 1.0 {
        p.distance(b)
    } else {
        p.distance(Point2::new(a.x + t * dx, a.y + t * dy))
    }
}

pub fn point_polyline_distance(p: Point2, line: &Polyline) -> f64 {
    line.segments()
        .map(|(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

fn ring_distance(p: Point2, ring: &[Point2]) -> f64 {
    ring.windows(2)
        .map(|w| point_segment_distance(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

fn boundary_distance(p: Point2, poly: &Polygon) -> f64 {
    poly.rings().map(|r| ring_distance(p, r)).fold(f64::INFINITY, f64::min)
}

/// Even-odd crossing test with the half-open rule on edge endpoints.
fn ray_crossings(p: Point2, ring: &[Point2]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// True when `p` is inside the exterior ring and outside every hole.
/// Points on any ring count as inside.
pub fn point_in_polygon(p: Point2, poly: &Polygon) -> bool {
    if boundary_distance(p, poly) == 0.0 {
        return true;
    }
    ray_crossings(p, &poly.exterior) && !poly.holes.iter().any(|h| ray_crossings(p, h))
}

pub fn point_polygon_distance(p: Point2, poly: &Polygon) -> f64 {
    let d = boundary_distance(p, poly);
    if d == 0.0 {
        return 0.0;
    }
    let inside = ray_crossings(p, &poly.exterior) && !poly.holes.iter().any(|h| ray_crossings(p, h));
    if inside {
        0.0
    } else {
        d
    }
}

/// Chainages `0, s, 2s, ..., L`; the end is always included exactly once.
pub fn stepped_chainages(length: f64, interval: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    let mut k = 1u64;
    loop {
        let c = k as f64 * interval;
        if c >= length * (1.0 - 1e-12) {
            break;
        }
        out.push(c);
        k += 1;
    }
    if length > 0.0 {
        out.push(length);
    }
    out
}

/// `n + 1` evenly spaced chainages with `n = ceil(L / s)`, so the spacing
/// never exceeds `interval` and the pattern is symmetric under reversal.
pub fn uniform_chainages(length: f64, interval: f64) -> Vec<f64> {
    let n = ((length / interval).ceil() as usize).max(1);
    (0..=n)
        .map(|i| if i == n { length } else { length * i as f64 / n as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(pts: &[(f64, f64)]) -> Polyline {
        Polyline::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn ring(pts: &[(f64, f64)]) -> Vec<Point2> {
        let mut r: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        r.push(r[0]);
        r
    }

    fn square10() -> Polygon {
        Polygon::new(ring(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]), vec![]).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(polyline_length(&pl(&[(0.0, 0.0), (3000.0, 4000.0)])), 5000.0);
        assert_eq!(
            polyline_length(&pl(&[(0.0, 0.0), (1000.0, 0.0), (1000.0, 1000.0)])),
            2000.0
        );
    }

    #[test]
    fn polyline_rejects_degenerate_input() {
        assert_eq!(
            Polyline::new(vec![Point2::new(1.0, 1.0), Point2::new(1.0, 1.0)]),
            Err(GeometryError::DegeneratePolyline(1))
        );
        assert!(matches!(
            Polyline::new(vec![Point2::new(f64::NAN, 1.0), Point2::new(1.0, 1.0)]),
            Err(GeometryError::NonFinite { .. })
        ));
        let line = pl(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(line.vertices().len(), 2);
    }

    #[test]
    fn polyline_distance_cases() {
        let line = pl(&[(-1000.0, 0.0), (1000.0, 0.0)]);
        assert_eq!(point_polyline_distance(Point2::new(0.0, 100.0), &line), 100.0);
        let line = pl(&[(0.0, 0.0), (1000.0, 0.0)]);
        assert_eq!(point_polyline_distance(Point2::new(2000.0, 0.0), &line), 1000.0);
        assert_eq!(point_polyline_distance(Point2::new(500.0, 0.0), &line), 0.0);
    }

    #[test]
    fn polygon_containment() {
        let sq = square10();
        assert!(point_in_polygon(Point2::new(5.0, 5.0), &sq));
        assert!(!point_in_polygon(Point2::new(15.0, 5.0), &sq));
        // boundary and corners count as inside
        assert!(point_in_polygon(Point2::new(10.0, 5.0), &sq));
        assert!(point_in_polygon(Point2::new(0.0, 0.0), &sq));
        assert!(point_in_polygon(Point2::new(10.0, 10.0), &sq));

        let holed = Polygon::new(
            sq.exterior().to_vec(),
            vec![ring(&[(4.0, 4.0), (6.0, 4.0), (6.0, 6.0), (4.0, 6.0)])],
        )
        .unwrap();
        assert!(!point_in_polygon(Point2::new(5.0, 5.0), &holed));
        assert!(point_in_polygon(Point2::new(4.0, 5.0), &holed));
        assert!(point_in_polygon(Point2::new(2.0, 5.0), &holed));
    }

    #[test]
    fn ray_through_vertex() {
        // ray from (1, 5) passes exactly through the vertex (5, 5) of a diamond
        let diamond = Polygon::new(
            ring(&[(5.0, 0.0), (10.0, 5.0), (5.0, 10.0), (0.0, 5.0)]),
            vec![],
        )
        .unwrap();
        assert!(point_in_polygon(Point2::new(1.0, 5.0), &diamond));
        assert!(!point_in_polygon(Point2::new(-1.0, 5.0), &diamond));
        assert!(!point_in_polygon(Point2::new(11.0, 5.0), &diamond));
    }

    #[test]
    fn polygon_distance_cases() {
        let sq = square10();
        assert_eq!(point_polygon_distance(Point2::new(5.0, 5.0), &sq), 0.0);
        assert_eq!(point_polygon_distance(Point2::new(20.0, 5.0), &sq), 10.0);
        assert_eq!(point_polygon_distance(Point2::new(13.0, 14.0), &sq), 5.0);
    }

    #[test]
    fn ring_validation() {
        let open = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        assert_eq!(Polygon::new(open, vec![]), Err(GeometryError::UnclosedRing));
        let flat = ring(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(Polygon::new(flat, vec![]), Err(GeometryError::ZeroArea));
        assert_eq!(
            Polygon::new(ring(&[(0.0, 0.0), (1.0, 0.0)]), vec![]),
            Err(GeometryError::ShortRing(3))
        );
    }

    #[test]
    fn chainage_sampling() {
        assert_eq!(stepped_chainages(100.0, 25.0), vec![0.0, 25.0, 50.0, 75.0, 100.0]);
        assert_eq!(stepped_chainages(90.0, 25.0), vec![0.0, 25.0, 50.0, 75.0, 90.0]);
        assert_eq!(stepped_chainages(10.0, 25.0), vec![0.0, 10.0]);
        assert_eq!(uniform_chainages(90.0, 25.0), vec![0.0, 22.5, 45.0, 67.5, 90.0]);
        assert_eq!(uniform_chainages(10.0, 25.0), vec![0.0, 10.0]);
    }

    #[test]
    fn point_at_walks_segments() {
        let line = pl(&[(0.0, 0.0), (1000.0, 0.0), (1000.0, 1000.0)]);
        assert_eq!(line.point_at(500.0), Point2::new(500.0, 0.0));
        assert_eq!(line.point_at(1500.0), Point2::new(1000.0, 500.0));
        assert_eq!(line.point_at(5000.0), Point2::new(1000.0, 1000.0));
        let pts = line.points_at(&[0.0, 500.0, 1000.0, 1500.0, 2000.0]);
        assert_eq!(
            pts,
            vec![
                Point2::new(0.0, 0.0),
                Point2::new(500.0, 0.0),
                Point2::new(1000.0, 0.0),
                Point2::new(1000.0, 500.0),
                Point2::new(1000.0, 1000.0)
            ]
        );
    }

    #[test]
    fn signed_area_orientation() {
        let ccw = ring(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
        assert_eq!(ring_signed_area(&ccw), 100.0);
        let mut cw = ccw.clone();
        cw.reverse();
        assert_eq!(ring_signed_area(&cw), -100.0);
    }
}
