use super::Graph;
use crate::ingest::Network;

/// A maximal run of edges from a degree-1 tip through degree-2 nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DeadEndChain {
    /// Edge ids, walking from the tip.
    pub edge_ids: Vec<i64>,
    pub total_length: f64,
    pub tip: i64,
    /// Where the walk stopped: a junction (degree >= 3) or another tip.
    pub anchor: i64,
}

/// One chain per degree-1 node, except that a bare path (tips at both ends)
/// is reported once, from its smaller tip id. Sorted by tip id.
pub fn dead_end_chains(network: &Network, graph: &Graph) -> Vec<DeadEndChain> {
    let nodes = network.nodes();
    let edges = network.edges();
    let mut out = Vec::new();
    for tip in 0..graph.node_count() {
        if graph.degree(tip) != 1 {
            continue;
        }
        let mut h = graph.adjacency(tip)[0];
        let mut edge_ids = Vec::new();
        let mut total_length = 0.0;
        let anchor = loop {
            let he = graph.half_edge(h);
            edge_ids.push(edges[he.edge].id);
            total_length += edges[he.edge].length;
            let v = he.target;
            if graph.degree(v) != 2 || edge_ids.len() > edges.len() {
                break v;
            }
            let back = graph.twin(h);
            h = *graph
                .adjacency(v)
                .iter()
                .find(|&&o| o != back)
                .expect("degree-2 node has a second half-edge");
        };
        if graph.degree(anchor) == 1 && nodes[anchor].id < nodes[tip].id {
            continue;
        }
        out.push(DeadEndChain {
            edge_ids,
            total_length,
            tip: nodes[tip].id,
            anchor: nodes[anchor].id,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point2, Polyline};
    use crate::netgraph::build_graph;

    fn net(pts: &[(f64, f64)], pairs: &[(usize, usize)]) -> Network {
        Network::build(
            pts.iter().map(|&(x, y)| (None, Point2::new(x, y))).collect(),
            pairs
                .iter()
                .map(|&(a, b)| {
                    let (pa, pb) = (pts[a], pts[b]);
                    (
                        None,
                        Polyline::new(vec![Point2::new(pa.0, pa.1), Point2::new(pb.0, pb.1)]).unwrap(),
                    )
                })
                .collect(),
            0.01,
        )
        .unwrap()
    }

    #[test]
    fn spur_off_a_cycle() {
        // triangle c-d-e with path a-b-c hanging off c
        let n = net(
            &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 1.0), (3.0, -1.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)],
        );
        let chains = dead_end_chains(&n, &build_graph(&n));
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].edge_ids, vec![0, 1]);
        assert_eq!((chains[0].tip, chains[0].anchor), (0, 2));
        assert_eq!(chains[0].total_length, 2.0);
    }

    #[test]
    fn isolated_path_reported_once() {
        let n = net(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (6.0, 0.0)], &[(0, 1), (1, 2), (2, 3)]);
        let chains = dead_end_chains(&n, &build_graph(&n));
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].total_length, 6.0);
        assert_eq!((chains[0].tip, chains[0].anchor), (0, 3));
    }

    #[test]
    fn pure_cycle_has_none() {
        let n = net(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 0)]);
        assert!(dead_end_chains(&n, &build_graph(&n)).is_empty());
    }
}
