//! The tree construction over a branch family, with a diagonal branch that
//! defeats a given coloring of the nodes.

use hm_forge::csequence::LadderSystem;
use hm_forge::graphprops::{verify_hm_graph, Check};
use hm_forge::hmbuild::{build_tree_hm, diagonal_branch, diagonal_conflict, BuildParams, TreeNode};
use hm_forge::ordinal::Universe;

fn main() {
    let u = Universe::new(24, 12).unwrap();
    let ladders = LadderSystem::seeded(&u, 3);
    let params = BuildParams::new(3, 1, 10);

    let c = |node: &TreeNode| node.values().iter().sum::<u64>() % 3;
    let mut branches: Vec<Vec<u64>> = (0..9u64)
        .map(|b| (0..u.limit_count() as u64).map(|i| (i * (b + 1) + b) % 4).collect())
        .collect();
    let diagonal = diagonal_branch(&u, &c);
    branches.push(diagonal.clone());

    let build = build_tree_hm(&ladders, &branches, params).unwrap();
    println!("{} nodes, {} edges", build.graph.vertex_count(), build.graph.edge_count());
    for (lower, upper) in build.graph.labeled_edges().take(5) {
        println!("  {lower} -- {upper}");
    }

    let report = verify_hm_graph(&build.graph, &ladders, 3, 1, 10, &Check::ALL);
    println!("verifiers pass: {}", report.passed());

    match diagonal_conflict(&build, &diagonal, &c) {
        Some((lo, hi)) => println!("c colors {lo} and {hi} alike"),
        None => println!("no monochromatic edge along the diagonal at this scale"),
    }
}
