//! Exact chromatic numbers, budgets, and connected-subgraph sampling.

use hm_forge::coloring::{exact_chromatic, greedy_upper, sample_connected_subsets, ColoringError, DEFAULT_BUDGET};
use hm_forge::graph::Graph;

fn mycielski(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for (u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    edges.extend((0..n).map(|i| (n + i, 2 * n)));
    Graph::from_edges(2 * n + 1, edges)
}

fn main() {
    let petersen = Graph::from_edges(10, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]));
    let sol = exact_chromatic(&petersen, DEFAULT_BUDGET).unwrap();
    println!("Petersen: chi {} coloring {:?}", sol.chi, sol.coloring);

    // Mycielski graphs are triangle-free with chi 2, 3, 4, 5, ...
    let mut g = Graph::from_edges(2, [(0, 1)]);
    for _ in 0..3 {
        g = mycielski(&g);
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        match exact_chromatic(&g, DEFAULT_BUDGET) {
            Ok(sol) => println!(
                "Mycielski on {:>2} vertices: chi {} (greedy {}, {} nodes)",
                g.vertex_count(),
                sol.chi,
                greedy_upper(&g, &order).0,
                sol.nodes
            ),
            Err(e) => println!("Mycielski on {} vertices: {e}", g.vertex_count()),
        }
    }

    match exact_chromatic(&g, 10) {
        Err(ColoringError::BudgetExceeded { lower, upper, .. }) => println!("with 10 nodes of budget: {lower} <= chi <= {upper}"),
        Ok(sol) => println!("solved within 10 nodes: {}", sol.chi),
    }

    for set in sample_connected_subsets(&petersen, 5, 3, 1) {
        let chi = exact_chromatic(&petersen.induced(&set), DEFAULT_BUDGET).unwrap().chi;
        println!("connected sample {set:?}: chi {chi}");
    }
}
