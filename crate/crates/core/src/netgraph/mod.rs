//! Network structure: half-edge graph with a rotation system, connected
//! components, dead-end chains and loops (faces of the planar embedding).

mod chains;
mod components;
mod crossings;
mod faces;

use crate::geometry::Point2;
use crate::ingest::Network;

pub use chains::{dead_end_chains, DeadEndChain};
pub use components::{connected_components, ComponentSummary, Components};
pub use crossings::find_crossings;
pub use faces::{enumerate_faces, enumerate_loops, Face, Loop};

/// One direction of a network edge. Half-edge `2k` runs along edge slot `k`
/// in geometry order; `2k + 1` is its reverse.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfEdge {
    /// Slot in [`Network::edges`].
    pub edge: usize,
    /// Node slot the half-edge leaves from.
    pub origin: usize,
    /// Node slot the half-edge arrives at.
    pub target: usize,
    /// Departure direction in radians, `(-pi, pi]`.
    pub angle: f64,
}

#[derive(Debug, Clone)]
pub struct Graph {
    half_edges: Vec<HalfEdge>,
    adjacency: Vec<Vec<usize>>,
    /// Position of each half-edge in its origin's adjacency list.
    rank: Vec<usize>,
}

impl Graph {
    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: usize) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn twin(&self, h: usize) -> usize {
        h ^ 1
    }

    /// Outgoing half-edges of a node, counter-clockwise by departure angle.
    pub fn adjacency(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Next half-edge along the same face: the one after `twin(h)` in
    /// clockwise order around the head of `h`. Inner faces come out
    /// counter-clockwise (positive area).
    pub fn successor(&self, h: usize) -> usize {
        let t = self.twin(h);
        let around = &self.adjacency[self.half_edges[t].origin];
        let r = self.rank[t];
        around[(r + around.len() - 1) % around.len()]
    }

    /// Vertices traversed by a half-edge, from origin to target.
    pub fn vertices<'a>(&self, network: &'a Network, h: usize) -> Box<dyn Iterator<Item = Point2> + 'a> {
        let verts = network.edges()[self.half_edges[h].edge].geometry.vertices();
        if h.is_multiple_of(2) {
            Box::new(verts.iter().copied())
        } else {
            Box::new(verts.iter().rev().copied())
        }
    }
}

pub fn build_graph(network: &Network) -> Graph {
    let n = network.nodes().len();
    let mut half_edges = Vec::with_capacity(network.edges().len() * 2);
    let mut adjacency = vec![Vec::new(); n];
    for (slot, e) in network.edges().iter().enumerate() {
        let a = network.node_slot(e.endpoint_a).expect("endpoint resolved at load");
        let b = network.node_slot(e.endpoint_b).expect("endpoint resolved at load");
        let v = e.geometry.vertices();
        // polylines hold no consecutive duplicates, so vertex 1 differs from vertex 0
        let fwd = direction(v[0], v[1]);
        let rev = direction(v[v.len() - 1], v[v.len() - 2]);
        adjacency[a].push(half_edges.len());
        half_edges.push(HalfEdge {
            edge: slot,
            origin: a,
            target: b,
            angle: fwd,
        });
        adjacency[b].push(half_edges.len());
        half_edges.push(HalfEdge {
            edge: slot,
            origin: b,
            target: a,
            angle: rev,
        });
    }
    let mut rank = vec![0; half_edges.len()];
    for list in &mut adjacency {
        list.sort_by(|&x, &y| {
            half_edges[x]
                .angle
                .total_cmp(&half_edges[y].angle)
                .then(x.cmp(&y))
        });
        for (i, &h) in list.iter().enumerate() {
            rank[h] = i;
        }
    }
    Graph {
        half_edges,
        adjacency,
        rank,
    }
}

fn direction(from: Point2, to: Point2) -> f64 {
    (to.y - from.y).atan2(to.x - from.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polyline;

    fn network(nodes: &[(f64, f64)], edges: &[&[(f64, f64)]]) -> Network {
        Network::build(
            nodes.iter().map(|&(x, y)| (None, Point2::new(x, y))).collect(),
            edges
                .iter()
                .map(|pts| {
                    (
                        None,
                        Polyline::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap(),
                    )
                })
                .collect(),
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn single_edge_twins() {
        let net = network(&[(0.0, 0.0), (10.0, 0.0)], &[&[(0.0, 0.0), (10.0, 0.0)]]);
        let g = build_graph(&net);
        assert_eq!(g.half_edges().len(), 2);
        assert_eq!(g.twin(0), 1);
        assert_eq!(g.twin(g.twin(0)), 0);
        assert_eq!(g.half_edge(0).origin, g.half_edge(1).target);
    }

    #[test]
    fn star_sorted_counter_clockwise() {
        // spokes listed out of angular order on purpose
        let net = network(
            &[(0.0, 0.0), (0.0, -10.0), (10.0, 0.0), (-10.0, 0.0), (0.0, 10.0)],
            &[
                &[(0.0, 0.0), (0.0, -10.0)],
                &[(0.0, 0.0), (10.0, 0.0)],
                &[(0.0, 0.0), (-10.0, 0.0)],
                &[(0.0, 0.0), (0.0, 10.0)],
            ],
        );
        let g = build_graph(&net);
        let targets: Vec<Point2> = g
            .adjacency(0)
            .iter()
            .map(|&h| net.nodes()[g.half_edge(h).target].location)
            .collect();
        assert_eq!(
            targets,
            vec![
                Point2::new(0.0, -10.0),
                Point2::new(10.0, 0.0),
                Point2::new(0.0, 10.0),
                Point2::new(-10.0, 0.0)
            ]
        );
    }

    #[test]
    fn curved_edge_uses_first_vertex_direction() {
        let net = network(
            &[(0.0, 0.0), (10.0, 0.0)],
            &[&[(0.0, 0.0), (0.0, 5.0), (10.0, 5.0), (10.0, 0.0)]],
        );
        let g = build_graph(&net);
        assert!((g.half_edge(0).angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((g.half_edge(1).angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn parallel_edges() {
        let net = network(
            &[(0.0, 0.0), (10.0, 0.0)],
            &[&[(0.0, 0.0), (10.0, 0.0)], &[(0.0, 0.0), (5.0, 5.0), (10.0, 0.0)]],
        );
        let g = build_graph(&net);
        assert_eq!(g.half_edges().len(), 4);
        assert_eq!(g.degree(0), 2);
        // successor is a permutation
        let mut seen = [false; 4];
        for h in 0..4 {
            let s = g.successor(h);
            assert!(!seen[s]);
            seen[s] = true;
        }
    }
}
