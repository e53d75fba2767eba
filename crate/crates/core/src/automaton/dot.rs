use std::fmt::Write;

use super::Nfa;
use crate::fs_partition::Partition;

/// Renders `nfa` as Graphviz DOT. With a partition, members of a block share
/// a fill color and the node label carries the block index.
pub fn to_dot(nfa: &Nfa, partition: Option<&Partition>) -> String {
    let mut out = String::new();
    out.push_str("digraph nfa {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");
    out.push_str("  __start [shape=point];\n");
    writeln!(out, "  __start -> q{};", nfa.initial()).unwrap();

    let blocks = partition.map(|p| p.num_blocks()).unwrap_or(0);
    for u in nfa.states() {
        let name = escape(nfa.name(u));
        match partition.and_then(|p| p.block_of().get(u).copied()) {
            Some(b) => {
                let hue = b as f64 / blocks as f64;
                writeln!(
                    out,
                    "  q{u} [label=\"{name}\\n[{b}]\", style=filled, fillcolor=\"{hue:.3} 0.350 1.000\"];"
                )
                .unwrap();
            }
            None => writeln!(out, "  q{u} [label=\"{name}\"];").unwrap(),
        }
    }
    for t in nfa.transitions() {
        writeln!(
            out,
            "  q{} -> q{} [label=\"{}\"];",
            t.from,
            t.to,
            escape(&nfa.label(t.label).to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
