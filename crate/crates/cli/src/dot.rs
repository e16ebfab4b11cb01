//! Graphviz export of cover graphs.

use std::fmt::Write as _;

use liftspace::complex::{BaseGraph, Pi1Basis};
use liftspace::covers::CoverGraph;

/// Renders a cover as an undirected DOT graph.
///
/// Vertices are `v{base vertex}_{sheet}` in ascending order. Each lifted
/// edge appears once, drawn along the lift of the smaller dart of its base
/// edge; chord lifts carry the generator name, tree lifts are dashed.
/// Output depends only on the input, so it is byte-stable.
pub fn export_dot(base: &BaseGraph, basis: &Pi1Basis, cover: &CoverGraph) -> String {
    let mut out = String::from("graph cover {\n");
    let name = |v: usize| {
        let (b, c) = cover.split(v);
        format!("v{b}_{c}")
    };
    for v in 0..cover.vertex_count() {
        let _ = writeln!(out, "  {};", name(v));
    }
    let sheets = cover.sheets();
    for (d, dart) in base.darts().iter().enumerate() {
        if dart.reverse < d {
            continue;
        }
        for c in 0..sheets {
            let lifted = cover.dart(d * sheets + c);
            let (s, t) = (name(lifted.source), name(lifted.target));
            match basis.dart_letter(d) {
                Some(l) => {
                    let _ = writeln!(out, "  {s} -- {t} [label=\"{}\"];", basis.generator_names()[l.generator]);
                }
                None => {
                    let _ = writeln!(out, "  {s} -- {t} [style=dashed];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use liftspace::covers::CoverSpec;
    use liftspace::groups::FiniteGroup;

    fn dot(base: BaseGraph, group: FiniteGroup, images: Vec<usize>) -> String {
        let spec = CoverSpec::regular(base, group, images).unwrap();
        export_dot(spec.base(), spec.basis(), &spec.build())
    }

    #[test]
    fn circle_z2() {
        let text = dot(BaseGraph::circle(), FiniteGroup::cyclic(2), vec![1]);
        assert_eq!(
            text,
            "graph cover {\n  v0_0;\n  v0_1;\n  v0_0 -- v0_1 [label=\"a\"];\n  v0_1 -- v0_0 [label=\"a\"];\n}\n"
        );
    }

    #[test]
    fn wedge_klein() {
        let z2 = FiniteGroup::cyclic(2);
        let text = dot(BaseGraph::bouquet(2), FiniteGroup::direct_product(&z2, &z2), vec![2, 1]);
        assert_eq!(text.lines().filter(|l| l.ends_with("];") && l.contains("--")).count(), 8);
        assert_eq!(text.matches("label=\"a\"").count(), 4);
        assert_eq!(text.matches("label=\"b\"").count(), 4);
        assert_eq!(
            text.lines().filter(|l| l.starts_with("  v") && l.ends_with("_0;") || l.ends_with("_3;")).count(),
            2
        );
    }

    #[test]
    fn theta_tree_edges_are_dashed() {
        let text = dot(BaseGraph::theta(), FiniteGroup::cyclic(3), vec![1, 1]);
        // two vertices, three sheets; one tree edge and two chords
        assert_eq!(text.matches("style=dashed").count(), 3);
        assert_eq!(text.matches("label=").count(), 6);
        assert_eq!(text, dot(BaseGraph::theta(), FiniteGroup::cyclic(3), vec![1, 1]));
    }
}
