//! Specker graphs `S^n_s`: no short odd cycles, growing chromatic number.

use hm_forge::coloring::{estimate_f_g, exact_chromatic, FgEstimate, DEFAULT_BUDGET};
use hm_forge::graphprops::shortest_odd_cycle_upto;
use hm_forge::specker::{materialize, sampled_odd_cycle_check};
use hm_forge::types::specker_type;

fn main() {
    let t = specker_type(3, 1).unwrap();
    println!("S^3_1 = G({t})");
    for n_points in [6, 9, 12, 15, 18] {
        let g = materialize(&t, n_points).unwrap();
        let odd = shortest_odd_cycle_upto(g.graph(), 9).map(|c| c.length);
        let chi = exact_chromatic(g.graph(), DEFAULT_BUDGET).unwrap().chi;
        println!(
            "  N={n_points:>2}: {:>4} vertices, {:>4} edges, odd girth {odd:?}, chi {chi}",
            g.graph().vertex_count(),
            g.graph().edge_count()
        );
    }

    let g = materialize(&t, 9).unwrap();
    if let Ok(FgEstimate::Exact { value, witness }) = estimate_f_g(g.graph(), 3, 8, DEFAULT_BUDGET) {
        let names: Vec<String> = witness.iter().map(|&i| g.vertex_name(i)).collect();
        println!("f_G(3) = {value}, e.g. {}", names.join(" "));
    }

    // too large to materialize comfortably: sample induced subgraphs
    let t = specker_type(5, 1).unwrap();
    let r = sampled_odd_cycle_check(&t, 24, 50, 300, 3, 7).unwrap();
    println!(
        "S^5_1 over 24 points: {} samples up to {} vertices, triangle found: {}",
        r.samples,
        r.largest_sample,
        r.witness.is_some()
    );
}
