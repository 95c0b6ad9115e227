//! Graphviz export. 1-transitions become labelled edges; each higher
//! transition, up to reordering of its actions, becomes a box node joined to
//! its endpoints by dashed edges.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::system::{ActionId, StateId, TransitionSystem};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn action_text(ts: &TransitionSystem, a: ActionId) -> String {
    let (name, label) = (ts.action_name(a), ts.label(a).as_str());
    if name == label {
        name.to_string()
    } else {
        format!("{name}:{label}")
    }
}

pub fn export_dot(name: &str, ts: &TransitionSystem, base: Option<StateId>) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    if ts.state_count() > 0 {
        out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    }
    for s in ts.states() {
        let shape = if Some(s) == base { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  s{} [label={}{}];", s.0, quote(ts.state_name(s)), shape);
    }
    for (s, a, t) in ts.one_transitions() {
        let _ = writeln!(out, "  s{} -> s{} [label={}];", s.0, t.0, quote(&action_text(ts, a)));
    }
    let cells: BTreeSet<(StateId, Vec<ActionId>, StateId)> = ts
        .transitions()
        .iter()
        .filter(|t| t.dim() >= 2)
        .map(|t| {
            let mut acts = t.actions.clone();
            acts.sort();
            (t.source, acts, t.target)
        })
        .collect();
    for (i, (s, acts, t)) in cells.iter().enumerate() {
        let text: Vec<String> = acts.iter().map(|&a| action_text(ts, a)).collect();
        let _ = writeln!(
            out,
            "  h{i} [shape=box, style=dashed, label={}];",
            quote(&format!("{{{}}}", text.join(", ")))
        );
        let _ = writeln!(out, "  s{} -> h{i} [style=dashed, arrowhead=none];", s.0);
        let _ = writeln!(out, "  h{i} -> s{} [style=dashed];", t.0);
    }
    out.push_str("}\n");
    out
}
