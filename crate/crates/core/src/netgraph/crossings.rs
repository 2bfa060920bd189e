use crate::geometry::{GridIndex, Point2};
use crate::ingest::Network;

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn proper_crossing(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Pairs of edge ids whose geometries cross in their interiors, i.e. without
/// a shared node. Sorted, each pair listed once with the smaller id first.
pub fn find_crossings(network: &Network) -> Vec<(i64, i64)> {
    let edges = network.edges();
    let seg_count: usize = edges.iter().map(|e| e.geometry.vertices().len() - 1).sum();
    let cell = (network.total_length() / seg_count.max(1) as f64).max(1.0);
    let index = GridIndex::build(edges.iter().map(|e| (e.id, &e.geometry)), cell);
    let by_id: std::collections::HashMap<i64, usize> =
        edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();

    let mut pairs = Vec::new();
    for e in edges {
        for (a, b) in e.geometry.segments() {
            let mid = Point2::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            for cand in index.query_candidates(mid, a.distance(b) / 2.0) {
                if cand.edge_id <= e.id {
                    continue;
                }
                let other = &edges[by_id[&cand.edge_id]].geometry.vertices();
                let (c, d) = (other[cand.segment], other[cand.segment + 1]);
                if proper_crossing(a, b, c, d) {
                    pairs.push((e.id, cand.edge_id));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}
