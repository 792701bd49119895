use std::fmt::Write;

use crate::admissibility::{EdgeLabel, FlourishedGraph, NodeKind};
use crate::diagram::{DiagonalTemplate, DynkinDiagram, VertexRef, Window};
use crate::space::{Sign, TailShape};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Per-ray lengths covering the first `n` vertices of a tail.
fn per_ray(shape: &TailShape, n: usize) -> Vec<usize> {
    let mut per = vec![0; shape.template.rays.len()];
    for r in shape.order(n) {
        if let VertexRef::Ray(k, i) = r {
            per[k] = per[k].max(i + 1);
        }
    }
    per
}

/// Writes the window's vertices and edges plus one ellipsis node per ray,
/// named after `tag`. Returns the DOT names of the window vertices.
fn write_window(out: &mut String, t: &DiagonalTemplate, w: &Window, per: &[usize], tag: &str) -> Vec<String> {
    let names: Vec<String> = w.refs.iter().map(|r| t.name(*r)).collect();
    for (name, label) in names.iter().zip(&w.labels) {
        let _ = writeln!(out, "  {} [shape=circle, label={}];", quote(name), quote(&label.to_string()));
    }
    for (a, b, l) in &w.edges {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&names[*a]),
            quote(&names[*b]),
            quote(&l.to_string())
        );
    }
    for (k, ray) in t.rays.iter().enumerate() {
        let dots = format!("{tag}…{}", k + 1);
        let _ = writeln!(out, "  {} [shape=plaintext, label=\"…\"];", quote(&dots));
        let last = if per[k] > 0 {
            w.refs.iter().position(|r| *r == VertexRef::Ray(k, per[k] - 1))
        } else {
            ray.anchor.as_ref().map(|(a, _)| *a)
        };
        if let Some(v) = last {
            let _ = writeln!(out, "  {} -- {} [style=dotted];", quote(&names[v]), quote(&dots));
        }
    }
    names
}

/// DOT text of a flourished graph. Blocks are squares labelled `+` or `-`,
/// points circles labelled by `q`; tails show their first `prefix` vertices
/// followed by an ellipsis. Nodes standing for `omega` many copies are
/// dashed.
pub fn flourished_to_dot(g: &FlourishedGraph, prefix: usize) -> String {
    let mut out = String::from("graph flourished {\n  node [fontsize=10];\n");
    let mut entry: Vec<Option<String>> = vec![None; g.nodes.len()];
    for (k, n) in g.nodes.iter().enumerate() {
        let dashed = if n.omega { ", style=dashed" } else { "" };
        match &n.kind {
            NodeKind::Block(sign) => {
                let label = match sign {
                    Sign::Plus => "+",
                    Sign::Minus => "-",
                };
                let _ = writeln!(out, "  {} [shape=square, label=\"{label}\"{dashed}];", quote(&n.id));
                entry[k] = Some(n.id.clone());
            }
            NodeKind::Point(q) => {
                let _ = writeln!(out, "  {} [shape=circle, label={}{dashed}];", quote(&n.id), quote(&q.to_string()));
                entry[k] = Some(n.id.clone());
            }
            NodeKind::Tail(t) => {
                let shape = &g.skeleton.tails[*t].shape;
                let per = per_ray(shape, prefix);
                let w = shape.template.window_with(&per);
                let names = write_window(&mut out, &shape.template, &w, &per, &format!("{}.", n.id));
                entry[k] = w.refs.iter().position(|r| *r == shape.entry).map(|i| names[i].clone());
                if entry[k].is_none() {
                    let dots = format!("{}.…1", n.id);
                    entry[k] = Some(dots);
                }
            }
        }
    }
    for e in &g.edges {
        let (Some(a), Some(b)) = (&entry[e.a], &entry[e.b]) else { continue };
        let attr = match &e.label {
            EdgeLabel::QTilde(q) => format!(" [label={}]", quote(&q.to_string())),
            EdgeLabel::Ghost(gh) => format!(" [label={}, style=bold]", quote(&format!("G={gh}"))),
            EdgeLabel::Plain => String::new(),
        };
        let _ = writeln!(out, "  {} -- {}{attr};", quote(a), quote(b));
    }
    out.push_str("}\n");
    out
}

/// DOT text of a generalized Dynkin diagram, showing `prefix` vertices of
/// every ray.
pub fn dynkin_to_dot(d: &DynkinDiagram, prefix: usize) -> String {
    let mut out = String::from("graph dynkin {\n  node [fontsize=10];\n");
    let per = vec![prefix; d.template.rays.len()];
    let w = d.template.window_with(&per);
    write_window(&mut out, &d.template, &w, &per, "");
    out.push_str("}\n");
    out
}
