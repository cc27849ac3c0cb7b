//! The labeled slow-growth construction for `f(k) = 2k + 3`, with sampled
//! growth bounds and the layer decomposition.

use hm_forge::coloring::{verify_growth_bound, GrowthReport, DEFAULT_BUDGET};
use hm_forge::csequence::LadderSystem;
use hm_forge::graph::Graph;
use hm_forge::growthbuild::{build_growth_hm, check_decomposition, classify_edges, derive_params};
use hm_forge::hmbuild::Stream;
use hm_forge::ordinal::Universe;

fn main() {
    let f = [3, 5, 7];
    let params = derive_params(&f, 2);
    println!("s = {:?}, n = {:?}, needs width {}", params.s, params.n, params.width_needed());

    let u = Universe::new(48, 32).unwrap();
    let ladders = LadderSystem::seeded(&u, 0);
    let build = build_growth_hm(&ladders, &Stream::new(0), &params).unwrap();
    let g = build.graph.graph();
    println!("{} vertices, {} labeled edges", g.vertex_count(), g.edge_count());

    let classes = classify_edges(g, |a, b| build.label(a, b).unwrap(), 3);
    let forests: Vec<bool> = classes.layers.iter().map(Graph::is_forest).collect();
    println!("layers are forests: {forests:?}");

    println!("{}", GrowthReport::CSV_HEADER);
    for (k, &fk) in f.iter().enumerate() {
        let r = verify_growth_bound(g, fk as usize, k, 200, 0, DEFAULT_BUDGET);
        println!("{}", r.csv_row());
        let d = check_decomposition(&build, k, 200, 0, DEFAULT_BUDGET);
        assert!(d.failures().is_empty());
    }
}
