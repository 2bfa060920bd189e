use super::{connected_components, Graph};
use crate::geometry::{ring_signed_area, Point2};
use crate::ingest::Network;

/// A face of the planar embedding, as a closed half-edge cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub half_edges: Vec<usize>,
    /// Shoelace area over every traversed geometry vertex.
    pub signed_area: f64,
    /// Sum of traversed edge lengths; an edge walked twice counts twice.
    pub perimeter: f64,
    pub component: usize,
}

/// An inner face: the shortest roundtrip around one mesh of the network.
#[derive(Debug, Clone, PartialEq)]
pub struct Loop {
    pub id: usize,
    pub half_edge_cycle: Vec<usize>,
    pub perimeter: f64,
    pub signed_area: f64,
    pub component: usize,
}

impl Loop {
    /// Closed boundary ring following the traversal.
    pub fn boundary(&self, network: &Network, graph: &Graph) -> Vec<Point2> {
        boundary_ring(network, graph, &self.half_edge_cycle)
    }

    /// Edge ids on the boundary in traversal order (repeats for bridges).
    pub fn edge_ids(&self, network: &Network, graph: &Graph) -> Vec<i64> {
        self.half_edge_cycle
            .iter()
            .map(|&h| network.edges()[graph.half_edge(h).edge].id)
            .collect()
    }
}

fn boundary_ring(network: &Network, graph: &Graph, cycle: &[usize]) -> Vec<Point2> {
    let mut ring: Vec<Point2> = Vec::new();
    for &h in cycle {
        // consecutive half-edges meet exactly at a node, so skip the repeat
        let skip = usize::from(!ring.is_empty());
        ring.extend(graph.vertices(network, h).skip(skip));
    }
    if let Some(&first) = ring.first() {
        if ring.last() != Some(&first) {
            ring.push(first);
        }
    }
    ring
}

/// Every face of the embedding, outer faces included. Each half-edge lies on
/// exactly one face. Faces are ordered by their smallest half-edge.
pub fn enumerate_faces(network: &Network, graph: &Graph) -> Vec<Face> {
    let components = connected_components(network, graph);
    let n = graph.half_edges().len();
    let mut visited = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while !visited[h] {
            visited[h] = true;
            cycle.push(h);
            h = graph.successor(h);
        }
        debug_assert_eq!(h, start, "successor must be a permutation");
        let ring = boundary_ring(network, graph, &cycle);
        let perimeter = cycle
            .iter()
            .map(|&h| network.edges()[graph.half_edge(h).edge].length)
            .sum();
        faces.push(Face {
            signed_area: ring_signed_area(&ring),
            perimeter,
            component: components.edge_labels[graph.half_edge(start).edge],
            half_edges: cycle,
        });
    }
    faces
}

/// Inner faces of the embedding. In each component the face with the most
/// negative signed area is the unbounded outer face and is dropped.
///
/// Edges that cross without a shared node make the embedding non-planar and
/// the resulting loops geometrically meaningless.
pub fn enumerate_loops(network: &Network, graph: &Graph) -> Vec<Loop> {
    let faces = enumerate_faces(network, graph);
    let component_count = faces.iter().map(|f| f.component + 1).max().unwrap_or(0);
    let mut outer: Vec<Option<usize>> = vec![None; component_count];
    for (i, f) in faces.iter().enumerate() {
        let slot = &mut outer[f.component];
        match slot {
            Some(j) if faces[*j].signed_area <= f.signed_area => {}
            _ => *slot = Some(i),
        }
    }
    faces
        .into_iter()
        .enumerate()
        .filter(|(i, f)| outer[f.component] != Some(*i))
        .enumerate()
        .map(|(id, (_, f))| Loop {
            id,
            half_edge_cycle: f.half_edges,
            perimeter: f.perimeter,
            signed_area: f.signed_area,
            component: f.component,
        })
        .collect()
}
