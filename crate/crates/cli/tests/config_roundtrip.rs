//! parse(render(doc)) = doc over generated documents.

use liftspace_cli::config::{
    parse_config, render, BondDef, ConfigDocument, CoverSection, GraphSection, GroupDef, LevelDef, ModelSection,
};
use proptest::prelude::*;
use proptest::sample::Index;

fn graph() -> impl Strategy<Value = GraphSection> {
    (1usize..=3)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            (Just(n), parents, prop::collection::vec((0..n, 0..n), 0..=2), 0..n)
        })
        .prop_map(|(n, parents, extra, base)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
            edges.extend(extra);
            GraphSection { vertices: n, edges, base }
        })
}

fn rank(g: &GraphSection) -> usize {
    g.edges.len() + 1 - g.vertices
}

/// A cover document over a cyclic, product, permutation or table group.
fn cover_doc() -> impl Strategy<Value = ConfigDocument> {
    (graph(), 0usize..4, 2usize..6, prop::collection::vec(any::<Index>(), 4), any::<bool>()).prop_map(
        |(graph, kind, n, picks, whole)| {
            let mut groups = vec![("C".to_string(), GroupDef::Cyclic(n))];
            let (name, order) = match kind {
                0 => ("C", n),
                1 => {
                    groups.push(("P".into(), GroupDef::Product("C".into(), "C".into())));
                    ("P", n * n)
                }
                2 => {
                    groups.push(("S".into(), GroupDef::Permutations(vec![vec![1, 0, 2], vec![1, 2, 0]])));
                    ("S", 6)
                }
                _ => {
                    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
                    groups.push(("T".into(), GroupDef::Table(rows)));
                    ("T", n)
                }
            };
            let images = picks[..rank(&graph)].iter().map(|i| i.index(order)).collect();
            let subgroup = if whole { (0..order).collect() } else { Vec::new() };
            ConfigDocument {
                graph,
                groups,
                model: ModelSection::Cover(CoverSection { group: name.into(), images, subgroup }),
            }
        },
    )
}

/// A cyclic tower over a bouquet with `mod` or explicit table bonds.
fn tower_doc() -> impl Strategy<Value = ConfigDocument> {
    (1usize..=2, prop::collection::vec((1usize..=3, any::<bool>()), 1..=3), prop::collection::vec(any::<Index>(), 2))
        .prop_map(|(r, steps, tops)| {
            let mut orders = Vec::new();
            let mut n = 1;
            for (k, (f, _)) in steps.iter().enumerate() {
                n *= if k == 0 { f + 1 } else { *f };
                orders.push(n);
            }
            let top = *orders.last().unwrap();
            let tops: Vec<usize> = tops[..r].iter().map(|i| i.index(top)).collect();
            let mut groups: Vec<(String, GroupDef)> = Vec::new();
            let mut levels = Vec::new();
            for (k, &n) in orders.iter().enumerate() {
                let name = format!("Z{n}");
                if !groups.iter().any(|(g, _)| *g == name) {
                    groups.push((name.clone(), GroupDef::Cyclic(n)));
                }
                let bond = (k > 0).then(|| {
                    if steps[k].1 {
                        BondDef::Mod
                    } else {
                        BondDef::Table((0..n).map(|x| x % orders[k - 1]).collect())
                    }
                });
                levels.push(LevelDef { group: name, images: tops.iter().map(|x| x % n).collect(), bond });
            }
            let graph = GraphSection { vertices: 1, edges: vec![(0, 0); r], base: 0 };
            ConfigDocument { graph, groups, model: ModelSection::Tower(levels) }
        })
}

proptest! {
    #[test]
    fn covers_round_trip(doc in cover_doc()) {
        let text = render(&doc);
        prop_assert_eq!(parse_config(&text).unwrap(), doc);
    }

    #[test]
    fn towers_round_trip(doc in tower_doc()) {
        let text = render(&doc);
        prop_assert_eq!(parse_config(&text).unwrap(), doc);
    }
}
