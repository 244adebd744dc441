//! Graphviz DOT rendering with a pinned emission order, so output is
//! byte-stable: nodes ascending, then edges by `(src, dst, color)` with
//! blue before red.

use super::WeightedDag;
use std::fmt::Write;

impl WeightedDag {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in self.nodes() {
            writeln!(out, "    {v};").expect("writing to a string cannot fail");
        }
        for e in self.edges() {
            writeln!(
                out,
                "    {} -> {} [color={}, label={}];",
                e.src,
                e.dst,
                e.color.name(),
                e.weight
            )
            .expect("writing to a string cannot fail");
        }
        out.push_str("}\n");
        out
    }
}
