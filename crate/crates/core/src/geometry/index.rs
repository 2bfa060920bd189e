use std::collections::HashMap;

use super::{point_segment_distance, Bounds, Point2, Polyline};

/// A segment reference returned by index queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRef {
    pub edge_id: i64,
    pub segment: usize,
}

#[derive(Debug, Clone)]
struct IndexedSegment {
    key: SegmentRef,
    a: Point2,
    b: Point2,
}

/// Uniform grid over polyline segments.
///
/// Each segment is registered in every cell it passes through, so a square
/// query window around a point never misses a segment within the query
/// radius. Candidates may include segments farther away.
#[derive(Debug, Clone)]
pub struct GridIndex {
    cell_size: f64,
    segments: Vec<IndexedSegment>,
    cells: HashMap<(i64, i64), Vec<u32>>,
    bounds: Bounds,
}

impl GridIndex {
    /// # Panics
    /// If `cell_size` is not strictly positive.
    pub fn build<'a>(edges: impl IntoIterator<Item = (i64, &'a Polyline)>, cell_size: f64) -> Self {
        assert!(cell_size > 0.0 && cell_size.is_finite(), "cell_size must be > 0");
        let mut index = GridIndex {
            cell_size,
            segments: Vec::new(),
            cells: HashMap::new(),
            bounds: Bounds::empty(),
        };
        for (edge_id, line) in edges {
            index.bounds.union(&line.bounds());
            for (segment, (a, b)) in line.segments().enumerate() {
                let slot = index.segments.len() as u32;
                index.segments.push(IndexedSegment {
                    key: SegmentRef { edge_id, segment },
                    a,
                    b,
                });
                for cell in index.cells_crossed(a, b) {
                    index.cells.entry(cell).or_default().push(slot);
                }
            }
        }
        index
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    fn cell_of(&self, p: Point2) -> (i64, i64) {
        (
            (p.x / self.cell_size).floor() as i64,
            (p.y / self.cell_size).floor() as i64,
        )
    }

    /// Cells whose closed square meets segment `ab`, walked column by
    /// column. Row ranges are padded by a hair against rounding in the clip.
    fn cells_crossed(&self, a: Point2, b: Point2) -> Vec<(i64, i64)> {
        let cs = self.cell_size;
        let (lo, hi) = if a.x <= b.x { (a, b) } else { (b, a) };
        let (c0, _) = self.cell_of(lo);
        let (c1, _) = self.cell_of(hi);
        let slack = cs * 1e-9;
        let mut out = Vec::new();
        for c in c0..=c1 {
            let (x0, x1) = ((c as f64 * cs).max(lo.x), ((c + 1) as f64 * cs).min(hi.x));
            let y_at = |x: f64| {
                if hi.x == lo.x {
                    None
                } else {
                    Some(lo.y + (hi.y - lo.y) * ((x - lo.x) / (hi.x - lo.x)))
                }
            };
            let (ya, yb) = match (y_at(x0), y_at(x1)) {
                (Some(ya), Some(yb)) => (ya, yb),
                _ => (lo.y, hi.y),
            };
            let r0 = ((ya.min(yb) - slack) / cs).floor() as i64;
            let r1 = ((ya.max(yb) + slack) / cs).floor() as i64;
            out.extend((r0..=r1).map(|r| (c, r)));
        }
        out
    }

    fn candidate_slots(&self, p: Point2, radius: f64) -> Vec<u32> {
        let (c0, r0) = self.cell_of(Point2::new(p.x - radius, p.y - radius));
        let (c1, r1) = self.cell_of(Point2::new(p.x + radius, p.y + radius));
        let window = (c1 - c0 + 1) as u128 * (r1 - r0 + 1) as u128;
        let mut slots: Vec<u32> = Vec::new();
        if window > self.cells.len() as u128 {
            for (&(c, r), list) in &self.cells {
                if (c0..=c1).contains(&c) && (r0..=r1).contains(&r) {
                    slots.extend_from_slice(list);
                }
            }
        } else {
            for c in c0..=c1 {
                for r in r0..=r1 {
                    if let Some(list) = self.cells.get(&(c, r)) {
                        slots.extend_from_slice(list);
                    }
                }
            }
        }
        slots.sort_unstable();
        slots.dedup();
        slots
    }

    /// Every segment whose distance to `p` is at most `radius`, plus
    /// possibly some farther ones. Sorted and free of duplicates.
    pub fn query_candidates(&self, p: Point2, radius: f64) -> Vec<SegmentRef> {
        let mut out: Vec<SegmentRef> = self
            .candidate_slots(p, radius)
            .into_iter()
            .map(|s| self.segments[s as usize].key)
            .collect();
        out.sort_unstable();
        out
    }

    /// Exact distance from `p` to the closest indexed segment, and the edge it
    /// belongs to. Ties go to the smallest edge id. `None` for an empty index.
    pub fn nearest(&self, p: Point2) -> Option<(f64, i64)> {
        if self.segments.is_empty() {
            return None;
        }
        let mut radius = self.cell_size.max(self.bounds.distance_to(p));
        loop {
            let slots = self.candidate_slots(p, radius);
            let best = slots
                .iter()
                .map(|&s| {
                    let seg = &self.segments[s as usize];
                    (point_segment_distance(p, seg.a, seg.b), seg.key.edge_id)
                })
                .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            if let Some(best) = best {
                // anything outside the window is farther than `radius`
                if best.0 <= radius {
                    return Some(best);
                }
            }
            radius *= 2.0;
        }
    }
}
