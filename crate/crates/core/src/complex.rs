//! Finite connected base graphs and the free basis of π₁ given by a
//! spanning tree.
//!
//! A graph is a set of darts (directed half-edges). Every dart has a
//! reverse; an undirected edge is a dart together with its reverse, and a
//! loop at a vertex is two distinct darts that reverse each other.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::groups::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub source: usize,
    pub target: usize,
    pub reverse: usize,
}

/// A validated finite connected graph with a base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraph {
    vertex_count: usize,
    darts: Vec<Dart>,
    base_vertex: usize,
    // outgoing darts per vertex, ascending
    stars: Vec<Vec<usize>>,
}

impl BaseGraph {
    pub fn new(vertex_count: usize, darts: Vec<Dart>, base_vertex: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        if base_vertex >= vertex_count {
            return Err(Error::VertexOutOfRange { vertex: base_vertex });
        }
        for (id, d) in darts.iter().enumerate() {
            if d.source >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: d.source });
            }
            if d.target >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: d.target });
            }
            let Some(r) = darts.get(d.reverse) else {
                return Err(Error::BadInvolution { dart: id });
            };
            if d.reverse == id || r.reverse != id || r.source != d.target || r.target != d.source {
                return Err(Error::BadInvolution { dart: id });
            }
        }
        let mut stars = vec![Vec::new(); vertex_count];
        for (id, d) in darts.iter().enumerate() {
            stars[d.source].push(id);
        }
        let graph = BaseGraph { vertex_count, darts, base_vertex, stars };
        let reached = graph.bfs_order();
        if reached.len() < vertex_count {
            let mut seen = vec![false; vertex_count];
            for &v in &reached {
                seen[v] = true;
            }
            let vertex = seen.iter().position(|&s| !s).expect("some vertex unreached");
            return Err(Error::Disconnected { vertex });
        }
        Ok(graph)
    }

    /// Builds the graph from undirected edges; edge `k` becomes darts `2k`
    /// (`u → v`) and `2k + 1` (`v → u`).
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)], base_vertex: usize) -> Result<Self> {
        let mut darts = Vec::with_capacity(2 * edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            darts.push(Dart { source: u, target: v, reverse: 2 * k + 1 });
            darts.push(Dart { source: v, target: u, reverse: 2 * k });
        }
        Self::new(vertex_count, darts, base_vertex)
    }

    /// One vertex with one loop.
    pub fn circle() -> Self {
        Self::bouquet(1)
    }

    /// One vertex with `loops` loops; `bouquet(2)` is the wedge of two circles.
    pub fn bouquet(loops: usize) -> Self {
        let edges = vec![(0, 0); loops];
        Self::from_edges(1, &edges, 0).expect("bouquet is connected")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::from_edges(2, &[(0, 1), (0, 1), (0, 1)], 0).expect("theta graph is connected")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn base_vertex(&self) -> usize {
        self.base_vertex
    }

    pub fn dart(&self, id: usize) -> Dart {
        self.darts[id]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Darts leaving `v`, in ascending id order.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    /// First Betti number `E − V + 1`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    /// Undirected edges as `(u, v)` pairs, one per dart pair, in order of
    /// the smaller dart id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.darts.iter().enumerate().filter(|&(id, d)| id < d.reverse).map(|(_, d)| (d.source, d.target)).collect()
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        seen[self.base_vertex] = true;
        let mut order = vec![self.base_vertex];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &d in &self.stars[u] {
                let t = self.darts[d].target;
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }
}

/// A path given by its darts; `start` disambiguates the empty path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub start: usize,
    pub darts: Vec<usize>,
}

impl EdgePath {
    pub fn constant(vertex: usize) -> Self {
        EdgePath { start: vertex, darts: Vec::new() }
    }

    /// Checks incidence and returns the end vertex.
    pub fn end(&self, graph: &BaseGraph) -> Result<usize> {
        let mut at = self.start;
        if at >= graph.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: at });
        }
        for (position, &d) in self.darts.iter().enumerate() {
            if d >= graph.dart_count() || graph.dart(d).source != at {
                return Err(Error::NotIncident { position });
            }
            at = graph.dart(d).target;
        }
        Ok(at)
    }

    pub fn concat(&self, other: &EdgePath) -> EdgePath {
        EdgePath { start: self.start, darts: self.darts.iter().chain(&other.darts).copied().collect() }
    }
}

/// A BFS spanning tree and the chord basis of π₁ it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Basis {
    base_vertex: usize,
    // dart from the parent, per vertex (None at the root)
    parent: Vec<Option<usize>>,
    in_tree: Vec<bool>,
    chords: Vec<usize>,
    // per dart: the generator letter it reads as, None for tree darts
    letter: Vec<Option<Letter>>,
    generator_names: Vec<String>,
}

impl Pi1Basis {
    /// BFS from the base vertex, visiting darts in ascending id order. Each
    /// non-tree edge becomes a generator whose positive orientation is its
    /// smaller dart; generators are numbered by that dart id.
    pub fn spanning_tree(graph: &BaseGraph) -> Self {
        let n = graph.vertex_count();
        let mut parent = vec![None; n];
        let mut in_tree = vec![false; graph.dart_count()];
        let mut seen = vec![false; n];
        seen[graph.base_vertex()] = true;
        let mut queue = VecDeque::from([graph.base_vertex()]);
        while let Some(u) = queue.pop_front() {
            for &d in graph.star(u) {
                let t = graph.dart(d).target;
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some(d);
                    in_tree[d] = true;
                    in_tree[graph.dart(d).reverse] = true;
                    queue.push_back(t);
                }
            }
        }
        let chords: Vec<usize> =
            (0..graph.dart_count()).filter(|&d| !in_tree[d] && d < graph.dart(d).reverse).collect();
        let mut letter = vec![None; graph.dart_count()];
        for (g, &d) in chords.iter().enumerate() {
            letter[d] = Some(Letter::new(g, false));
            letter[graph.dart(d).reverse] = Some(Letter::new(g, true));
        }
        let generator_names = (0..chords.len()).map(generator_name).collect();
        Pi1Basis { base_vertex: graph.base_vertex(), parent, in_tree, chords, letter, generator_names }
    }

    pub fn rank(&self) -> usize {
        self.chords.len()
    }

    /// Positive dart of each generator.
    pub fn chords(&self) -> &[usize] {
        &self.chords
    }

    pub fn is_tree_dart(&self, dart: usize) -> bool {
        self.in_tree[dart]
    }

    pub fn tree_darts(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_tree.iter().enumerate().filter(|&(_, &t)| t).map(|(d, _)| d)
    }

    /// The generator (and sign) a dart reads as, `None` for tree darts.
    pub fn dart_letter(&self, dart: usize) -> Option<Letter> {
        self.letter[dart]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Tree path from the base vertex to `v`.
    pub fn tree_path_from_base(&self, graph: &BaseGraph, v: usize) -> EdgePath {
        let mut darts = Vec::new();
        let mut at = v;
        while let Some(d) = self.parent[at] {
            darts.push(d);
            at = graph.dart(d).source;
        }
        darts.reverse();
        EdgePath { start: self.base_vertex, darts }
    }

    /// Tree path from `v` back to the base vertex.
    pub fn tree_path_to_base(&self, graph: &BaseGraph, v: usize) -> EdgePath {
        let forward = self.tree_path_from_base(graph, v);
        EdgePath { start: v, darts: forward.darts.iter().rev().map(|&d| graph.dart(d).reverse).collect() }
    }

    /// Reads a loop at the base vertex as a reduced word: chords contribute
    /// their letter, tree darts nothing.
    pub fn path_to_word(&self, graph: &BaseGraph, path: &EdgePath) -> Result<Word> {
        let end = path.end(graph)?;
        if path.start != self.base_vertex || end != self.base_vertex {
            return Err(Error::NotALoop { start: path.start, end });
        }
        Ok(path.darts.iter().filter_map(|&d| self.letter[d]).collect())
    }

    /// The canonical loop of a word: for each letter, the tree path to the
    /// chord, the chord (reversed for an inverse letter), and the tree path
    /// back.
    pub fn word_to_path(&self, graph: &BaseGraph, word: &Word) -> Result<EdgePath> {
        let mut darts = Vec::new();
        for l in word.letters() {
            let &chord = self.chords.get(l.generator).ok_or(Error::UnknownGenerator { generator: l.generator })?;
            let d = if l.inverse { graph.dart(chord).reverse } else { chord };
            let dart = graph.dart(d);
            darts.extend(self.tree_path_from_base(graph, dart.source).darts);
            darts.push(d);
            darts.extend(self.tree_path_to_base(graph, dart.target).darts);
        }
        Ok(EdgePath { start: self.base_vertex, darts })
    }
}

/// `a`–`z` for the first 26 generators, then `x26`, `x27`, …
pub fn generator_name(index: usize) -> String {
    if index < 26 {
        String::from(char::from(b'a' + index as u8))
    } else {
        format!("x{index}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graph_validation() {
        assert!(BaseGraph::from_edges(1, &[(0, 0)], 0).is_ok());
        assert_eq!(BaseGraph::from_edges(2, &[], 0).unwrap_err(), Error::Disconnected { vertex: 1 });
        assert_eq!(BaseGraph::bouquet(2).dart_count(), 4);
        assert_eq!(BaseGraph::from_edges(0, &[], 0).unwrap_err(), Error::EmptyGraph);
        assert!(matches!(BaseGraph::from_edges(2, &[(0, 5)], 0), Err(Error::VertexOutOfRange { vertex: 5 })));
    }

    #[test]
    fn bad_involutions() {
        let fixed = vec![Dart { source: 0, target: 0, reverse: 0 }];
        assert_eq!(BaseGraph::new(1, fixed, 0).unwrap_err(), Error::BadInvolution { dart: 0 });
        let unswapped = vec![Dart { source: 0, target: 1, reverse: 1 }, Dart { source: 0, target: 1, reverse: 0 }];
        assert!(matches!(BaseGraph::new(2, unswapped, 0), Err(Error::BadInvolution { .. })));
        let dangling = vec![Dart { source: 0, target: 0, reverse: 3 }];
        assert!(matches!(BaseGraph::new(1, dangling, 0), Err(Error::BadInvolution { .. })));
    }

    #[test]
    fn ranks() {
        let circle = BaseGraph::circle();
        let b = Pi1Basis::spanning_tree(&circle);
        assert_eq!((b.tree_darts().count(), b.rank()), (0, 1));
        assert_eq!(Pi1Basis::spanning_tree(&BaseGraph::bouquet(2)).rank(), 2);
        let theta = BaseGraph::theta();
        let b = Pi1Basis::spanning_tree(&theta);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.chords(), &[2, 4]);
        assert_eq!(b.tree_darts().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn words_from_paths() {
        let circle = BaseGraph::circle();
        let b = Pi1Basis::spanning_tree(&circle);
        let w = b.path_to_word(&circle, &EdgePath { start: 0, darts: vec![0] }).unwrap();
        assert_eq!(w, Word::generator(0));
        assert!(b.path_to_word(&circle, &EdgePath::constant(0)).unwrap().is_empty());

        let wedge = BaseGraph::bouquet(2);
        let b = Pi1Basis::spanning_tree(&wedge);
        let w = b.path_to_word(&wedge, &EdgePath { start: 0, darts: vec![0, 3] }).unwrap();
        assert_eq!(w.letters(), &[Letter::new(0, false), Letter::new(1, true)]);
    }

    #[test]
    fn path_errors() {
        let theta = BaseGraph::theta();
        let b = Pi1Basis::spanning_tree(&theta);
        let err = b.path_to_word(&theta, &EdgePath { start: 0, darts: vec![0] }).unwrap_err();
        assert_eq!(err, Error::NotALoop { start: 0, end: 1 });
        let err = b.path_to_word(&theta, &EdgePath { start: 0, darts: vec![0, 0] }).unwrap_err();
        assert_eq!(err, Error::NotIncident { position: 1 });
        let err = b.word_to_path(&theta, &Word::generator(2)).unwrap_err();
        assert_eq!(err, Error::UnknownGenerator { generator: 2 });
    }

    #[test]
    fn canonical_loops() {
        let circle = BaseGraph::circle();
        let b = Pi1Basis::spanning_tree(&circle);
        assert_eq!(b.word_to_path(&circle, &Word::generator(0)).unwrap().darts, vec![0]);
        assert!(b.word_to_path(&circle, &Word::empty()).unwrap().darts.is_empty());

        // theta: tree is edge 0 (darts 0/1); a = dart 2 from 0 to 1, back along dart 1
        let theta = BaseGraph::theta();
        let b = Pi1Basis::spanning_tree(&theta);
        let p = b.word_to_path(&theta, &Word::generator(0)).unwrap();
        assert_eq!(p.darts, vec![2, 1]);
        assert_eq!(p.end(&theta).unwrap(), 0);
    }

    fn graphs() -> impl Strategy<Value = BaseGraph> {
        // random spanning path plus extra edges keeps the graph connected
        (1usize..6, prop::collection::vec((0usize..6, 0usize..6), 0..6)).prop_map(|(n, extra)| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
            edges.extend(extra.into_iter().map(|(u, v)| (u % n, v % n)));
            BaseGraph::from_edges(n, &edges, 0).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_is_betti_number(g in graphs()) {
            let b = Pi1Basis::spanning_tree(&g);
            prop_assert_eq!(b.rank(), g.betti_number());
            prop_assert_eq!(b.tree_darts().count(), 2 * (g.vertex_count() - 1));
        }

        #[test]
        fn word_path_round_trip(g in graphs(), raw in prop::collection::vec((0usize..8, any::<bool>()), 0..10)) {
            let b = Pi1Basis::spanning_tree(&g);
            prop_assume!(b.rank() > 0);
            let w: Word = raw.into_iter().map(|(x, i)| Letter::new(x % b.rank(), i)).collect();
            let p = b.word_to_path(&g, &w).unwrap();
            prop_assert_eq!(b.path_to_word(&g, &p).unwrap(), w);
        }

        #[test]
        fn path_to_word_is_a_homomorphism(
            g in graphs(),
            r1 in prop::collection::vec((0usize..8, any::<bool>()), 0..6),
            r2 in prop::collection::vec((0usize..8, any::<bool>()), 0..6),
        ) {
            let b = Pi1Basis::spanning_tree(&g);
            prop_assume!(b.rank() > 0);
            let w1: Word = r1.into_iter().map(|(x, i)| Letter::new(x % b.rank(), i)).collect();
            let w2: Word = r2.into_iter().map(|(x, i)| Letter::new(x % b.rank(), i)).collect();
            let p = b.word_to_path(&g, &w1).unwrap().concat(&b.word_to_path(&g, &w2).unwrap());
            prop_assert_eq!(b.path_to_word(&g, &p).unwrap(), w1.concat(&w2));
        }
    }
}
