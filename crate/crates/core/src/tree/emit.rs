use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use super::schema::{Seq, TreeSchema};
use crate::oracle::{enumerate_schema, Budget};

/// DOT rendering of the generated tree of the budget-truncated denotation;
/// elements of the set are drawn as double circles.
pub fn to_dot(t: &TreeSchema, b: &Budget) -> String {
    let elements = enumerate_schema(t, b);
    let members: BTreeSet<&Seq> = elements.iter().collect();
    let mut nodes = BTreeSet::new();
    for e in &elements {
        for k in 0..=e.len() {
            nodes.insert(Seq(e[..k].to_vec()));
        }
    }
    let mut out = String::from("digraph schema {\n  node [shape=circle, label=\"\"];\n");
    for n in &nodes {
        let shape = if members.contains(n) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  \"{n}\" [shape={shape}, tooltip=\"{n}\"];");
    }
    for n in nodes.iter().filter(|n| !n.is_empty()) {
        let parent = Seq(n[..n.len() - 1].to_vec());
        let _ = writeln!(
            out,
            "  \"{parent}\" -> \"{n}\" [label=\"{}\"];",
            n[n.len() - 1]
        );
    }
    out.push_str("}\n");
    out
}

pub fn to_json(t: &TreeSchema, b: &Budget) -> Value {
    let elements = enumerate_schema(t, b);
    json!({
        "schema": t.to_string(),
        "budget": b,
        "truncated": elements.len() >= b.count,
        "elements": elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}
