use bnp_core::evaluate::{classify_edges, classify_loops, edge_scheme, loop_scheme};
use bnp_core::geometry::{Point2, Polyline};
use bnp_core::ingest::{EdgeThresholds, LoopThresholds, Network};
use bnp_core::netgraph::{build_graph, connected_components, dead_end_chains, enumerate_faces, enumerate_loops};
use proptest::prelude::*;

/// A jittered grid with a random subset of its axis edges and at most one
/// diagonal per cell. Jitter stays below a quarter step, so it is planar.
#[derive(Debug, Clone)]
struct GridSpec {
    cols: usize,
    rows: usize,
    step: f64,
    jitter: Vec<(f64, f64)>,
    keep: Vec<bool>,
    diagonals: Vec<u8>,
}

fn grid_spec() -> impl Strategy<Value = GridSpec> {
    (2usize..6, 2usize..6, 200.0..3_000.0f64).prop_flat_map(|(cols, rows, step)| {
        let n = cols * rows;
        (
            prop::collection::vec((-0.24..0.24f64, -0.24..0.24f64), n),
            prop::collection::vec(prop::bool::weighted(0.8), 2 * n),
            prop::collection::vec(0u8..3, n),
        )
            .prop_map(move |(jitter, keep, diagonals)| GridSpec {
                cols,
                rows,
                step,
                jitter,
                keep,
                diagonals,
            })
    })
}

fn build(spec: &GridSpec, scale: f64) -> Option<Network> {
    let GridSpec { cols, rows, step, .. } = *spec;
    let at = |i: usize| {
        let (c, r) = (i % cols, i / cols);
        let (jx, jy) = spec.jitter[i];
        Point2::new((c as f64 + jx) * step * scale, (r as f64 + jy) * step * scale)
    };
    let mut pairs = Vec::new();
    for i in 0..cols * rows {
        let (c, r) = (i % cols, i / cols);
        if c + 1 < cols && spec.keep[2 * i] {
            pairs.push((i, i + 1));
        }
        if r + 1 < rows && spec.keep[2 * i + 1] {
            pairs.push((i, i + cols));
        }
        if c + 1 < cols && r + 1 < rows {
            match spec.diagonals[i] {
                1 => pairs.push((i, i + cols + 1)),
                2 => pairs.push((i + 1, i + cols)),
                _ => {}
            }
        }
    }
    let mut used = vec![false; cols * rows];
    for &(a, b) in &pairs {
        used[a] = true;
        used[b] = true;
    }
    // keep node ids stable across scales: the grid index
    let nodes: Vec<(Option<i64>, Point2)> = (0..cols * rows)
        .filter(|&i| used[i])
        .map(|i| (Some(i as i64), at(i)))
        .collect();
    if nodes.is_empty() {
        return None;
    }
    let edges = pairs
        .iter()
        .map(|&(a, b)| (None, Polyline::new(vec![at(a), at(b)]).unwrap()))
        .collect();
    Network::build(nodes, edges, 0.5 * scale).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn face_invariants(spec in grid_spec()) {
        let Some(net) = build(&spec, 1.0) else { return Ok(()) };
        let g = build_graph(&net);
        let comps = connected_components(&net, &g);
        let faces = enumerate_faces(&net, &g);
        let loops = enumerate_loops(&net, &g);

        let mut seen = vec![0u32; g.half_edges().len()];
        for f in &faces {
            for &h in &f.half_edges {
                seen[h] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));

        // every edge is walked twice over all faces
        let walked: f64 = faces.iter().map(|f| f.perimeter).sum();
        prop_assert!((walked - 2.0 * net.total_length()).abs() <= 1e-9 * walked.max(1.0));

        for s in &comps.summaries {
            let rank = s.edges + 1 - s.nodes;
            let mine: Vec<_> = loops.iter().filter(|l| l.component == s.id).collect();
            prop_assert_eq!(mine.len(), rank);
            prop_assert!(mine.iter().all(|l| l.signed_area > 0.0));
            let (sum, abs) = faces
                .iter()
                .filter(|f| f.component == s.id)
                .fold((0.0, 0.0), |(a, b), f| (a + f.signed_area, b + f.signed_area.abs()));
            prop_assert!(sum.abs() <= 1e-6 * abs.max(1.0));
        }
    }

    #[test]
    fn dead_end_chains_start_at_leaves(spec in grid_spec()) {
        let Some(net) = build(&spec, 1.0) else { return Ok(()) };
        let g = build_graph(&net);
        for chain in dead_end_chains(&net, &g) {
            prop_assert_eq!(net.node(chain.tip).unwrap().degree, 1);
            let sum: f64 = chain
                .edge_ids
                .iter()
                .map(|id| net.edges().iter().find(|e| e.id == *id).unwrap().length)
                .sum();
            prop_assert!((sum - chain.total_length).abs() <= 1e-9 * sum);
        }
    }

    #[test]
    fn labels_survive_scaling(spec in grid_spec(), k in prop::sample::select(vec![0.1, 10.0, 1000.0])) {
        let (Some(a), Some(b)) = (build(&spec, 1.0), build(&spec, k)) else { return Ok(()) };
        let et = EdgeThresholds::default();
        let scaled_et = EdgeThresholds {
            too_short_km: et.too_short_km * k,
            ideal_max_km: et.ideal_max_km * k,
            max_km: et.max_km * k,
            deadend_max_km: et.deadend_max_km * k,
        };
        let lt = LoopThresholds::default();
        let scaled_lt = LoopThresholds { min_km: lt.min_km * k, max_km: lt.max_km * k };
        let (ga, gb) = (build_graph(&a), build_graph(&b));

        let ea = classify_edges(&a, &ga, &edge_scheme(&et), et.deadend_max_km);
        let eb = classify_edges(&b, &gb, &edge_scheme(&scaled_et), scaled_et.deadend_max_km);
        let tag = |e: &bnp_core::evaluate::EdgeClass| (e.class.clone(), e.deadend_too_long);
        prop_assert_eq!(ea.edges.iter().map(tag).collect::<Vec<_>>(), eb.edges.iter().map(tag).collect::<Vec<_>>());

        let la = classify_loops(&enumerate_loops(&a, &ga), &loop_scheme(&lt));
        let lb = classify_loops(&enumerate_loops(&b, &gb), &loop_scheme(&scaled_lt));
        prop_assert_eq!(
            la.iter().map(|c| c.class.clone()).collect::<Vec<_>>(),
            lb.iter().map(|c| c.class.clone()).collect::<Vec<_>>()
        );
        prop_assert_eq!(connected_components(&a, &ga).edge_labels, connected_components(&b, &gb).edge_labels);
    }
}
