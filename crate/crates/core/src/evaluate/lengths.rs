use super::ClassificationScheme;
use crate::ingest::Network;
use crate::netgraph::{dead_end_chains, DeadEndChain, Graph, Loop};

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeClass {
    pub edge_id: i64,
    pub length_m: f64,
    pub class: String,
    /// Edge lies on a dead-end chain at least `deadend_max_km` long.
    pub deadend_too_long: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeClassification {
    pub edges: Vec<EdgeClass>,
    pub chains: Vec<DeadEndChain>,
}

/// Labels every edge by its length in km and flags edges on over-long
/// dead-end chains.
pub fn classify_edges(
    network: &Network,
    graph: &Graph,
    scheme: &ClassificationScheme,
    deadend_max_km: f64,
) -> EdgeClassification {
    let chains = dead_end_chains(network, graph);
    let limit_m = deadend_max_km * 1000.0;
    let mut flagged: Vec<i64> = chains
        .iter()
        .filter(|c| c.total_length >= limit_m)
        .flat_map(|c| c.edge_ids.iter().copied())
        .collect();
    flagged.sort_unstable();
    let edges = network
        .edges()
        .iter()
        .map(|e| EdgeClass {
            edge_id: e.id,
            length_m: e.length,
            class: scheme.classify(e.length / 1000.0).to_string(),
            deadend_too_long: flagged.binary_search(&e.id).is_ok(),
        })
        .collect();
    EdgeClassification { edges, chains }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopClass {
    pub loop_id: usize,
    pub perimeter_m: f64,
    pub component: usize,
    pub class: String,
}

pub fn classify_loops(loops: &[Loop], scheme: &ClassificationScheme) -> Vec<LoopClass> {
    loops
        .iter()
        .map(|l| LoopClass {
            loop_id: l.id,
            perimeter_m: l.perimeter,
            component: l.component,
            class: scheme.classify(l.perimeter / 1000.0).to_string(),
        })
        .collect()
}
