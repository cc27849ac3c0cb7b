//! Graph documents: JSON with optional edge labels, and DOT.

use hm_forge::cli::{GraphDoc, Format};
use hm_forge::graph::OrdGraph;
use hm_forge::ordinal::Ordinal;

fn main() {
    let limits: Vec<Ordinal> = (1..=4).map(Ordinal::omega_mul).collect();
    let mut g = OrdGraph::new(limits);
    g.add_edge(&Ordinal::omega_mul(1), &Ordinal::omega_mul(3));
    g.add_edge(&Ordinal::omega_mul(2), &Ordinal::omega_mul(4));

    let doc = GraphDoc::from_ord_graph(&g, |u, _| (u == 0).then_some(0));
    let json = doc.render(Format::Json);
    print!("{json}");
    print!("{}", doc.render(Format::Dot));

    let (back, labels) = GraphDoc::from_json(&json).unwrap().to_ord_graph().unwrap();
    assert_eq!(back, g);
    assert_eq!(GraphDoc::from_ord_graph(&back, |u, v| labels.get(&(u, v)).copied()).to_json(), json);
}
