use std::fmt::Write;

use super::{Digraph, WeightedDigraph};

fn node_name(labels: Option<&[String]>, v: usize) -> String {
    match labels.and_then(|l| l.get(v)) {
        Some(label) => escape(label),
        None => (v + 1).to_string(),
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn header(out: &mut String, nodes: usize, labels: Option<&[String]>) {
    out.push_str("digraph G {\n");
    for v in 0..nodes {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", v + 1, node_name(labels, v));
    }
}

/// Graphviz DOT text for an unweighted digraph.
pub fn export_dot(graph: &Digraph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    header(&mut out, graph.node_count(), labels);
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  n{} -> n{};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}

/// Like [`export_dot`], with arc costs as edge labels.
pub fn export_weighted_dot(graph: &WeightedDigraph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    header(&mut out, graph.node_count(), labels);
    for (u, v, cost) in graph.arcs() {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", u + 1, v + 1, cost);
    }
    out.push_str("}\n");
    out
}
