use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::geojson::{integer_property, read_feature_collection, RawGeometry};
use super::IngestError;
use crate::geometry::{polyline_length, Bounds, Point2, Polyline};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEnd {
    Start,
    End,
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeEnd::Start => "start",
            EdgeEnd::End => "end",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("network has no edges")]
    Empty,
    #[error("duplicate node id {0}")]
    DuplicateNodeId(i64),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(i64),
    #[error("nodes {a} and {b} are {distance:.3} m apart, within the snap tolerance")]
    CoincidentNodes { a: i64, b: i64, distance: f64 },
    #[error("edge {edge_id}: {end} vertex ({x:.3}, {y:.3}) has no node within the snap tolerance")]
    DanglingEndpoint { edge_id: i64, end: EdgeEnd, x: f64, y: f64 },
    #[error("edge {edge_id}: {end} vertex matches several nodes {nodes:?}")]
    AmbiguousEndpoint {
        edge_id: i64,
        end: EdgeEnd,
        nodes: Vec<i64>,
    },
    #[error("edge {0} collapses to a point after snapping")]
    DegenerateEdge(i64),
    #[error("node {0} is not attached to any edge")]
    IsolatedNode(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkNode {
    pub id: i64,
    pub location: Point2,
    pub degree: usize,
}

/// A network edge. Its geometry starts exactly at `endpoint_a` and ends
/// exactly at `endpoint_b`; `length` caches the geometric length in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkEdge {
    pub id: i64,
    pub geometry: Polyline,
    pub endpoint_a: i64,
    pub endpoint_b: i64,
    pub length: f64,
}

/// The design proposal under evaluation. Nodes and edges are sorted by id.
#[derive(Debug, Clone)]
pub struct Network {
    nodes: Vec<NetworkNode>,
    edges: Vec<NetworkEdge>,
    node_slots: HashMap<i64, usize>,
}

impl Network {
    /// Resolves edge endpoints to nodes by snapping and computes degrees.
    ///
    /// Missing ids fall back to the input position. Edge end vertices are
    /// moved onto the matched node locations.
    pub fn build(
        nodes: Vec<(Option<i64>, Point2)>,
        edges: Vec<(Option<i64>, Polyline)>,
        snap_tolerance_m: f64,
    ) -> Result<Network, NetworkError> {
        if edges.is_empty() {
            return Err(NetworkError::Empty);
        }
        let mut nodes: Vec<NetworkNode> = nodes
            .into_iter()
            .enumerate()
            .map(|(i, (id, location))| NetworkNode {
                id: id.unwrap_or(i as i64),
                location,
                degree: 0,
            })
            .collect();
        nodes.sort_by_key(|n| n.id);
        if let Some(w) = nodes.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(NetworkError::DuplicateNodeId(w[0].id));
        }

        let snap = SnapGrid::new(&nodes, snap_tolerance_m);
        for (slot, node) in nodes.iter().enumerate() {
            if let Some(&other) = snap.within(node.location).iter().find(|&&o| o != slot) {
                let (a, b) = (node.id.min(nodes[other].id), node.id.max(nodes[other].id));
                return Err(NetworkError::CoincidentNodes {
                    a,
                    b,
                    distance: node.location.distance(nodes[other].location),
                });
            }
        }

        let mut out_edges = Vec::with_capacity(edges.len());
        for (i, (id, geometry)) in edges.into_iter().enumerate() {
            let edge_id = id.unwrap_or(i as i64);
            let resolve = |p: Point2, end: EdgeEnd| -> Result<usize, NetworkError> {
                let hits = snap.within(p);
                match hits.as_slice() {
                    [one] => Ok(*one),
                    [] => Err(NetworkError::DanglingEndpoint {
                        edge_id,
                        end,
                        x: p.x,
                        y: p.y,
                    }),
                    many => {
                        let mut ids: Vec<i64> = many.iter().map(|&s| nodes[s].id).collect();
                        ids.sort_unstable();
                        Err(NetworkError::AmbiguousEndpoint {
                            edge_id,
                            end,
                            nodes: ids,
                        })
                    }
                }
            };
            let a = resolve(geometry.first(), EdgeEnd::Start)?;
            let b = resolve(geometry.last(), EdgeEnd::End)?;
            let geometry = geometry
                .with_endpoints(nodes[a].location, nodes[b].location)
                .map_err(|_| NetworkError::DegenerateEdge(edge_id))?;
            if a == b && geometry.vertices().len() < 3 {
                return Err(NetworkError::DegenerateEdge(edge_id));
            }
            nodes[a].degree += 1;
            nodes[b].degree += 1;
            out_edges.push(NetworkEdge {
                id: edge_id,
                length: polyline_length(&geometry),
                geometry,
                endpoint_a: nodes[a].id,
                endpoint_b: nodes[b].id,
            });
        }
        out_edges.sort_by_key(|e| e.id);
        if let Some(w) = out_edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(NetworkError::DuplicateEdgeId(w[0].id));
        }
        if let Some(n) = nodes.iter().find(|n| n.degree == 0) {
            return Err(NetworkError::IsolatedNode(n.id));
        }
        let node_slots = nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
        Ok(Network {
            nodes,
            edges: out_edges,
            node_slots,
        })
    }

    pub fn nodes(&self) -> &[NetworkNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[NetworkEdge] {
        &self.edges
    }

    /// Position of a node id in [`Network::nodes`].
    pub fn node_slot(&self, id: i64) -> Option<usize> {
        self.node_slots.get(&id).copied()
    }

    pub fn node(&self, id: i64) -> Option<&NetworkNode> {
        self.node_slot(id).map(|s| &self.nodes[s])
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn bounds(&self) -> Bounds {
        let mut b = Bounds::empty();
        for e in &self.edges {
            b.union(&e.geometry.bounds());
        }
        for n in &self.nodes {
            b.extend(n.location);
        }
        b
    }
}

/// Hash grid over node locations with cell size equal to the tolerance, so
/// a 3x3 neighbourhood holds every node within tolerance.
struct SnapGrid {
    tolerance: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
    locations: Vec<Point2>,
}

impl SnapGrid {
    fn new(nodes: &[NetworkNode], tolerance: f64) -> Self {
        let mut grid = SnapGrid {
            tolerance,
            cells: HashMap::new(),
            locations: nodes.iter().map(|n| n.location).collect(),
        };
        for (slot, n) in nodes.iter().enumerate() {
            let key = grid.key(n.location);
            grid.cells.entry(key).or_default().push(slot);
        }
        grid
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        (
            (p.x / self.tolerance).floor() as i64,
            (p.y / self.tolerance).floor() as i64,
        )
    }

    fn within(&self, p: Point2) -> Vec<usize> {
        let (cx, cy) = self.key(p);
        let mut out = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.cells.get(&(cx + dx, cy + dy)) {
                    out.extend(
                        list.iter()
                            .copied()
                            .filter(|&s| self.locations[s].distance(p) <= self.tolerance),
                    );
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Loads nodes (Point features) and edges (LineString features) from two
/// GeoJSON files. Node ids come from a `node_id` property, edge ids from
/// `edge_id`; both default to input order.
pub fn load_network(
    nodes_path: &Path,
    edges_path: &Path,
    snap_tolerance_m: f64,
) -> Result<Network, IngestError> {
    let raw_nodes = read_feature_collection(nodes_path)?;
    let mut nodes = Vec::with_capacity(raw_nodes.len());
    for (i, f) in raw_nodes.iter().enumerate() {
        match &f.geometry {
            RawGeometry::Point(p) => {
                let p = p.checked().map_err(|source| IngestError::Geometry {
                    path: nodes_path.to_path_buf(),
                    feature: i,
                    source,
                })?;
                nodes.push((integer_property(&f.properties, "node_id"), p));
            }
            other => {
                return Err(IngestError::KindMismatch {
                    path: nodes_path.to_path_buf(),
                    feature: i,
                    expected: "Point",
                    found: other.type_name().to_string(),
                })
            }
        }
    }

    let raw_edges = read_feature_collection(edges_path)?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (i, f) in raw_edges.iter().enumerate() {
        match &f.geometry {
            RawGeometry::LineString(pts) => {
                let line = Polyline::new(pts.clone()).map_err(|source| IngestError::Geometry {
                    path: edges_path.to_path_buf(),
                    feature: i,
                    source,
                })?;
                edges.push((integer_property(&f.properties, "edge_id"), line));
            }
            other => {
                return Err(IngestError::KindMismatch {
                    path: edges_path.to_path_buf(),
                    feature: i,
                    expected: "LineString",
                    found: other.type_name().to_string(),
                })
            }
        }
    }

    Network::build(nodes, edges, snap_tolerance_m).map_err(|source| IngestError::Network {
        path: edges_path.to_path_buf(),
        source,
    })
}
