use std::fmt::Write as _;

use contrasim::game::{GameGraph, Player};

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

/// Renders positions and moves as a DOT digraph. Attacker positions are
/// boxes, defender positions circles; the initial position is drawn bold.
pub fn dot_digraph(
    nodes: &[(Player, String)],
    edges: &[(usize, usize)],
    initial: Option<usize>,
) -> String {
    let mut out = String::from("digraph game {\n");
    if !nodes.is_empty() {
        out.push_str("  node [fontname=\"monospace\"];\n");
    }
    for (g, (owner, label)) in nodes.iter().enumerate() {
        let shape = match owner {
            Player::Attacker => "box",
            Player::Defender => "circle",
        };
        let bold = if initial == Some(g) {
            ", style=bold"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  g{g} [shape={shape}{bold}, label=\"{}\"];",
            escape(label)
        );
    }
    for (from, to) in edges {
        let _ = writeln!(out, "  g{from} -> g{to};");
    }
    out.push_str("}\n");
    out
}

/// DOT export of a solved or unsolved game graph with one label per position.
pub fn export_game_dot(graph: &GameGraph, labels: &[String]) -> String {
    let n = graph.position_count();
    assert_eq!(labels.len(), n, "one label per position");
    let nodes: Vec<(Player, String)> = (0..n)
        .map(|g| (graph.owner(g), labels[g].clone()))
        .collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|g| graph.moves(g).iter().map(move |&t| (g, t)))
        .collect();
    dot_digraph(&nodes, &edges, Some(graph.initial()))
}
