//! Graphviz DOT output.

use std::fmt::Write;

use crate::decide::{Portrait, PortraitNode, SectionClosure};
use crate::element::Vertex;
use crate::subgroups::{GenSet, LevelAction, OrbitTable};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Portrait as a rooted tree; internal nodes carry root permutations, leaves
/// carry residual sections.
pub fn portrait_dot(p: &Portrait) -> String {
    fn walk(n: &PortraitNode, out: &mut String) {
        let id = quote(&n.vertex().to_string());
        match n {
            PortraitNode::Internal { perm, children, .. } => {
                let _ = writeln!(out, "  {id} [label={}];", quote(&perm.to_string()));
                for (i, c) in children.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  {id} -> {} [label=\"{}\"];",
                        quote(&c.vertex().to_string()),
                        i + 1
                    );
                    walk(c, out);
                }
            }
            PortraitNode::Leaf { residual, .. } => {
                let _ = writeln!(
                    out,
                    "  {id} [shape=box, label={}];",
                    quote(&residual.to_string())
                );
            }
        }
    }
    let mut out = String::from("digraph portrait {\n");
    walk(&p.root, &mut out);
    out.push_str("}\n");
    out
}

/// Section closure as a Mealy automaton: states labeled by word and root
/// permutation, edges `i|π(i)` to the section at letter `i`.
pub fn closure_dot(c: &SectionClosure) -> String {
    let mut out = String::from("digraph closure {\n  rankdir=LR;\n");
    for (i, s) in c.states.iter().enumerate() {
        let _ = writeln!(
            out,
            "  s{i} [label={}];",
            quote(&format!("{}\n{}", s.element, s.perm))
        );
    }
    for (i, s) in c.states.iter().enumerate() {
        for (x, &t) in s.children.iter().enumerate() {
            let _ = writeln!(
                out,
                "  s{i} -> s{t} [label=\"{}|{}\"];",
                x + 1,
                s.perm.apply(x) + 1
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Orbit tree: one node per orbit, edges given by the map `e` to the orbit of
/// the parents.
pub fn orbits_dot(t: &OrbitTable) -> String {
    let mut out = String::from("digraph orbits {\n");
    for l in &t.levels {
        for (i, o) in l.orbits.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"L{}O{}\" [label={}];",
                l.level,
                i,
                quote(&format!("{} (|{}|)", o[0], o.len()))
            );
            if l.level > 0 {
                let _ = writeln!(
                    out,
                    "  \"L{}O{}\" -> \"L{}O{}\";",
                    l.level - 1,
                    l.parent[i],
                    l.level,
                    i
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Schreier graph of level `n`: vertices of the level, an edge `v -> s(v)`
/// for each generator `s`.
pub fn schreier_dot(s: &GenSet, level: usize) -> String {
    let d = s.group().degree();
    let action = LevelAction::new(s.group(), level);
    let mut out = String::from("digraph schreier {\n");
    for i in 0..action.width() {
        let _ = writeln!(
            out,
            "  {};",
            quote(&Vertex::from_index(i, level, d).to_string())
        );
    }
    for (name, g) in s.names().iter().zip(s.elements()) {
        let p = action.word_perm(g.letters());
        for (i, &j) in p.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&Vertex::from_index(i, level, d).to_string()),
                quote(&Vertex::from_index(j as usize, level, d).to_string()),
                quote(name)
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::decide::{portrait, section_closure};
    use crate::word::parse_word;

    #[test]
    fn portrait_of_a() {
        let g = corpus::grigorchuk();
        let a = parse_word("a", &g).unwrap();
        let dot = portrait_dot(&portrait(&a, 1));
        assert!(dot.starts_with("digraph portrait {"));
        assert!(dot.contains("\".\" [label=\"(1 2)\"]"));
        assert!(dot.contains("\"1\" [shape=box, label=\"1\"]"));
    }

    #[test]
    fn closure_edges() {
        let g = corpus::grigorchuk();
        let b = parse_word("b", &g).unwrap();
        let dot = closure_dot(&section_closure(&b));
        assert_eq!(dot.matches("->").count(), 10);
    }

    #[test]
    fn schreier_level_one() {
        let g = corpus::basilica();
        let dot = schreier_dot(&GenSet::generators(&g), 1);
        assert!(dot.contains("\"1\" -> \"2\" [label=\"b\"]"));
        assert!(dot.contains("\"1\" -> \"1\" [label=\"a\"]"));
    }
}
