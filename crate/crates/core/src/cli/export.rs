//! Graph documents: `{"vertices": [...], "edges": [[u, v, label?], ...]}` in
//! JSON, and undirected DOT with quoted vertex spellings as node ids.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, OrdGraph};
use crate::ordinal::Ordinal;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeDoc {
    Labeled(String, String, usize),
    Plain(String, String),
}

impl EdgeDoc {
    pub fn ends(&self) -> (&str, &str) {
        match self {
            EdgeDoc::Labeled(u, v, _) | EdgeDoc::Plain(u, v) => (u, v),
        }
    }

    pub fn label(&self) -> Option<usize> {
        match self {
            EdgeDoc::Labeled(_, _, k) => Some(*k),
            EdgeDoc::Plain(..) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

impl GraphDoc {
    /// Vertices in graph order; edges as `(lower, upper)` in lexicographic
    /// index order, labeled where `label` says so.
    pub fn from_ord_graph<V: Ord + Clone + Display>(g: &OrdGraph<V>, label: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let vertices = g.labels().iter().map(ToString::to_string).collect::<Vec<_>>();
        let edges = g
            .graph()
            .edges()
            .map(|(u, v)| {
                let (a, b) = (vertices[u].clone(), vertices[v].clone());
                match label(u, v) {
                    Some(k) => EdgeDoc::Labeled(a, b, k),
                    None => EdgeDoc::Plain(a, b),
                }
            })
            .collect();
        Self { vertices, edges }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| CliError::Config(format!("bad graph JSON: {e}")))?;
        doc.index()?;
        Ok(doc)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in &self.vertices {
            writeln!(s, "  {};", quote(v)).unwrap();
        }
        for e in &self.edges {
            let (u, v) = e.ends();
            match e.label() {
                Some(k) => writeln!(s, "  {} -- {} [label=\"{k}\"];", quote(u), quote(v)).unwrap(),
                None => writeln!(s, "  {} -- {};", quote(u), quote(v)).unwrap(),
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Dot => self.to_dot(),
        }
    }

    fn index(&self) -> Result<BTreeMap<&str, usize>, CliError> {
        let mut index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(CliError::Config(format!("duplicate vertex {v:?}")));
            }
        }
        for e in &self.edges {
            let (u, v) = e.ends();
            for end in [u, v] {
                if !index.contains_key(end) {
                    return Err(CliError::Config(format!("edge endpoint {end:?} is not a vertex")));
                }
            }
        }
        Ok(index)
    }

    /// The underlying graph, vertex `i` being `vertices[i]`.
    pub fn to_graph(&self) -> Result<Graph, CliError> {
        let index = self.index()?;
        Ok(Graph::from_edges(
            self.vertices.len(),
            self.edges.iter().map(|e| {
                let (u, v) = e.ends();
                (index[u], index[v])
            }),
        ))
    }

    /// Reads the vertices as ordinals. Returns the graph together with the
    /// edge labels keyed by `(lower, upper)` vertex index.
    pub fn to_ord_graph(&self) -> Result<(OrdGraph<Ordinal>, BTreeMap<(usize, usize), usize>), CliError> {
        let labels = self
            .vertices
            .iter()
            .map(|v| v.parse::<Ordinal>().map_err(|e| CliError::Config(format!("vertex {v:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut g = OrdGraph::new(labels);
        if g.vertex_count() != self.vertices.len() {
            return Err(CliError::Config("duplicate vertices".into()));
        }
        let mut edge_labels = BTreeMap::new();
        for e in &self.edges {
            let (u, v) = e.ends();
            let (u, v): (Ordinal, Ordinal) = (u.parse().expect("checked above"), v.parse().expect("checked above"));
            g.add_edge(&u, &v);
            if let Some(k) = e.label() {
                let (a, b) = (g.index_of(&u).unwrap(), g.index_of(&v).unwrap());
                edge_labels.insert((a.min(b), a.max(b)), k);
            }
        }
        Ok((g, edge_labels))
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Writes `g` in the requested format.
pub fn export_graph<V: Ord + Clone + Display>(
    g: &OrdGraph<V>,
    label: impl Fn(usize, usize) -> Option<usize>,
    format: Format,
    path: &std::path::Path,
) -> Result<(), CliError> {
    let text = GraphDoc::from_ord_graph(g, label).render(format);
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OrdGraph<Ordinal> {
        let mut g = OrdGraph::new((1..4).map(Ordinal::omega_mul).collect());
        g.add_edge(&Ordinal::omega_mul(1), &Ordinal::omega_mul(3));
        g
    }

    #[test]
    fn json_roundtrip_is_byte_stable() {
        let doc = GraphDoc::from_ord_graph(&sample(), |_, _| Some(0));
        let text = doc.to_json();
        let back = GraphDoc::from_json(&text).unwrap();
        let (g, labels) = back.to_ord_graph().unwrap();
        let again = GraphDoc::from_ord_graph(&g, |u, v| labels.get(&(u, v)).copied()).to_json();
        assert_eq!(text, again);
        assert!(text.contains("\"w*3\",\n      0"));
    }

    #[test]
    fn empty_documents() {
        let doc = GraphDoc::default();
        assert_eq!(doc.to_dot(), "graph G {\n}\n");
        assert_eq!(GraphDoc::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn dot_uses_quoted_spellings() {
        let dot = GraphDoc::from_ord_graph(&sample(), |_, _| None).to_dot();
        assert!(dot.contains("  \"w\" -- \"w*3\";\n"));
    }

    #[test]
    fn rejects_dangling_edges() {
        let text = r#"{"vertices":["w"],"edges":[["w","w*2"]]}"#;
        assert!(GraphDoc::from_json(text).is_err());
    }
}
