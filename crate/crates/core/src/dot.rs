//! Graphviz export.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::graph::{Graph, VertexId};
use crate::rules::{Colour, Position};

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders an undirected DOT graph. Stones are filled blue or red;
/// highlighted vertices are drawn dashed.
pub fn to_dot(g: &Graph, pos: &Position, highlight: &BTreeSet<VertexId>) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        let mut attrs = Vec::new();
        match pos.cells().get(v.0).copied().flatten() {
            Some(Colour::Blue) => attrs.push("style=filled fillcolor=blue fontcolor=white".to_string()),
            Some(Colour::Red) => attrs.push("style=filled fillcolor=red fontcolor=white".to_string()),
            None => {}
        }
        if highlight.contains(&v) {
            if attrs.is_empty() {
                attrs.push("style=dashed".into());
            } else {
                attrs[0] = attrs[0].replace("style=filled", "style=\"filled,dashed\"");
            }
        }
        if attrs.is_empty() {
            writeln!(out, "  {};", quote(g.name(v))).unwrap();
        } else {
            writeln!(out, "  {} [{}];", quote(g.name(v)), attrs.join(" ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", quote(g.name(u)), quote(g.name(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Vertices whose names follow the gadget naming scheme `g<id>.<role>`.
pub fn gadget_vertices(g: &Graph) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|&v| {
            let name = g.name(v);
            name.strip_prefix('g')
                .and_then(|rest| rest.split_once('.'))
                .is_some_and(|(id, role)| !id.is_empty() && id.bytes().all(|b| b.is_ascii_digit()) && !role.is_empty())
        })
        .collect()
}
