//! Graphviz output for transition diagrams.

use crate::dynamics::{NodeRole, PartialDiagram};
use crate::graph::TransitionDiagram;
use crate::sequence::RuleChoice;
use std::fmt::Write;

fn edge_color(rule: RuleChoice) -> &'static str {
    match rule {
        RuleChoice::F => "black",
        RuleChoice::G => "blue",
    }
}

/// The full diagram: every vertex declared, every arrow drawn, the first
/// rule's arrows in black and the second's in blue.
pub fn diagram_dot(diagram: &TransitionDiagram) -> String {
    let mut out = String::new();
    out.push_str("digraph transitions {\n");
    for v in 0..diagram.config_count() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for edge in diagram.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [color=\"{}\"];",
            edge.from,
            edge.to,
            edge_color(edge.rule)
        );
    }
    out.push_str("}\n");
    out
}

/// A chain's diagram: initial-set vertices filled white, reached vertices
/// filled gray, untouched vertices plain, and only the traversed arrows drawn.
pub fn partial_dot(diagram: &PartialDiagram) -> String {
    let mut out = String::new();
    out.push_str("digraph transitions {\n");
    for &(v, role) in &diagram.nodes {
        match role {
            Some(NodeRole::Initial) => {
                let _ = writeln!(out, "  \"{v}\" [style=\"filled\", fillcolor=\"white\"];");
            }
            Some(NodeRole::Intermediate) => {
                let _ = writeln!(out, "  \"{v}\" [style=\"filled\", fillcolor=\"gray\"];");
            }
            None => {
                let _ = writeln!(out, "  \"{v}\";");
            }
        }
    }
    for arc in &diagram.arcs {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [color=\"{}\"];",
            arc.from,
            arc.to,
            edge_color(arc.rule)
        );
    }
    out.push_str("}\n");
    out
}
