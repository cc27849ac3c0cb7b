//! The Cohen-stream construction on `ω·32`, its verifiers, trace replay and
//! a forced monochromatic edge.

use hm_forge::csequence::LadderSystem;
use hm_forge::graphprops::{verify_hm_graph, Check};
use hm_forge::hmbuild::{build_cohen_hm, force_monochromatic_edge, replay, BuildParams, Decision, Stream};
use hm_forge::ordinal::{Ordinal, Universe};

fn main() {
    let u = Universe::new(32, 16).unwrap();
    let ladders = LadderSystem::seeded(&u, 0);
    let params = BuildParams::new(3, 1, 12);

    let build = build_cohen_hm(&ladders, &Stream::new(0), params).unwrap();
    println!("{} limits, {} edges", build.graph.vertex_count(), build.graph.edge_count());
    for (a, b) in build.graph.labeled_edges() {
        println!("  {a} -- {b}");
    }

    let mut tally = std::collections::BTreeMap::<String, usize>::new();
    for lt in &build.trace.limits {
        for step in &lt.steps {
            *tally.entry(format!("{:?}", step.decision)).or_default() += 1;
        }
    }
    println!("step decisions: {tally:?}");
    assert!(tally.contains_key(&format!("{:?}", Decision::Accepted)) || build.graph.edge_count() == 0);

    let report = verify_hm_graph(&build.graph, &ladders, 3, 1, 12, &Check::ALL);
    for c in &report.checks {
        println!("  {:<14} {}", c.check.name(), if c.passed { "pass" } else { "FAIL" });
    }
    assert_eq!(replay(&build.trace), build.graph);

    // extend a short prefix so that a constant coloring gets an edge
    let f = |_: &Ordinal| 0u64;
    let inj = force_monochromatic_edge(&ladders, &Stream::new(0).pinned(2), &f, params).unwrap().unwrap();
    let forced = build_cohen_hm(&ladders, &inj.stream, params).unwrap();
    println!(
        "prefix {:?} forces {} -- {}: present = {}",
        inj.stream.prefix,
        inj.alpha,
        inj.beta,
        forced.graph.has_edge(&inj.alpha, &inj.beta)
    );
}
