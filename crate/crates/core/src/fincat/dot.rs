//! Graphviz export.
//!
//! Objects become nodes labelled with the order of their automorphism group;
//! parallel non-endomorphisms between two objects are drawn as one edge with
//! a multiplicity label.

use std::fmt::Write;

use super::FinCategory;

pub fn to_dot(c: &FinCategory, name: &str, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    for x in c.objects() {
        let base = labels
            .and_then(|l| l.get(x))
            .cloned()
            .unwrap_or_else(|| x.to_string());
        let autos = c.hom(x, x).iter().filter(|&&f| c.is_iso(f)).count();
        let endos = c.hom(x, x).len();
        let mut label = format!("{base}\\n|Aut| = {autos}");
        if endos != autos {
            let _ = write!(label, ", |End| = {endos}");
        }
        let _ = writeln!(out, "  n{x} [label=\"{}\"];", escape(&label));
    }
    for x in c.objects() {
        for y in c.objects() {
            if x == y {
                continue;
            }
            let count = c.hom(x, y).len();
            match count {
                0 => {}
                1 => {
                    let _ = writeln!(out, "  n{x} -> n{y};");
                }
                k => {
                    let _ = writeln!(out, "  n{x} -> n{y} [label=\"×{k}\"];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}
