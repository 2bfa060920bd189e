use super::Graph;
use crate::ingest::Network;

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSummary {
    pub id: usize,
    pub nodes: usize,
    pub edges: usize,
    pub length_m: f64,
}

/// Component labels for every node and edge slot. Label 0 is the component
/// with the most edges; ties go to the component holding the smaller node id.
#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    pub node_labels: Vec<usize>,
    pub edge_labels: Vec<usize>,
    pub summaries: Vec<ComponentSummary>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.summaries.len()
    }
}

pub fn connected_components(network: &Network, graph: &Graph) -> Components {
    let n = graph.node_count();
    let mut raw = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    // nodes are sorted by id, so the seed of each raw component is its smallest id
    for seed in 0..n {
        if raw[seed] != usize::MAX {
            continue;
        }
        raw[seed] = count;
        stack.push(seed);
        while let Some(v) = stack.pop() {
            for &h in graph.adjacency(v) {
                let w = graph.half_edge(h).target;
                if raw[w] == usize::MAX {
                    raw[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }

    let mut stats = vec![(0usize, 0usize, 0.0f64); count];
    for &c in &raw {
        stats[c].0 += 1;
    }
    for (slot, e) in network.edges().iter().enumerate() {
        let c = raw[graph.half_edge(2 * slot).origin];
        stats[c].1 += 1;
        stats[c].2 += e.length;
    }
    let mut order: Vec<usize> = (0..count).collect();
    // raw ids already follow smallest-node-id order, so a stable sort settles ties
    order.sort_by(|&a, &b| stats[b].1.cmp(&stats[a].1));
    let mut relabel = vec![0; count];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }

    let node_labels: Vec<usize> = raw.iter().map(|&c| relabel[c]).collect();
    let edge_labels = (0..network.edges().len())
        .map(|slot| node_labels[graph.half_edge(2 * slot).origin])
        .collect();
    let summaries = order
        .iter()
        .enumerate()
        .map(|(id, &old)| ComponentSummary {
            id,
            nodes: stats[old].0,
            edges: stats[old].1,
            length_m: stats[old].2,
        })
        .collect();
    Components {
        node_labels,
        edge_labels,
        summaries,
    }
}
