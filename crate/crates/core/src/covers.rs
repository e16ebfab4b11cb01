//! Finite covers of a base graph built from a homomorphism `φ: F_r → G`
//! (the generator images) and a subgroup `K ≤ G`.
//!
//! The fibre over the base vertex is the set of right cosets `K\G`. The
//! sidedness is fixed throughout: monodromy (the right action of π₁) is
//! right multiplication `Kx ↦ Kx·φ(w)`, deck transformations act by left
//! multiplication `Kx ↦ Knx` with `n` in the normalizer of `K`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{BaseGraph, EdgePath, Pi1Basis};
use crate::groups::{quotient_group, CosetTable, Elem, FiniteGroup, Subgroup, Word};
use crate::{Error, Result};

/// A point of the fibre over the base vertex: a right coset id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibrePoint(pub usize);

/// The classifying data of a cover.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    base: BaseGraph,
    basis: Pi1Basis,
    group: FiniteGroup,
    gen_images: Vec<Elem>,
    subgroup: Subgroup,
    cosets: CosetTable,
    surjective: bool,
    normal: bool,
}

impl CoverSpec {
    pub fn new(base: BaseGraph, group: FiniteGroup, gen_images: Vec<Elem>, subgroup: Subgroup) -> Result<Self> {
        let basis = Pi1Basis::spanning_tree(&base);
        Self::with_basis(base, basis, group, gen_images, subgroup)
    }

    pub fn with_basis(
        base: BaseGraph,
        basis: Pi1Basis,
        group: FiniteGroup,
        gen_images: Vec<Elem>,
        subgroup: Subgroup,
    ) -> Result<Self> {
        if gen_images.len() != basis.rank() {
            return Err(Error::ImageCountMismatch { expected: basis.rank(), found: gen_images.len() });
        }
        for &x in &gen_images {
            group.check_element(x)?;
        }
        // revalidate: the subgroup may come from a different group
        let subgroup = Subgroup::new(&group, subgroup.as_slice())?;
        let cosets = CosetTable::right(&group, &subgroup);
        let surjective = group.generated(&gen_images).len() == group.order();
        let normal = group.is_normal(&subgroup);
        Ok(CoverSpec { base, basis, group, gen_images, subgroup, cosets, surjective, normal })
    }

    /// The regular cover with `K` trivial.
    pub fn regular(base: BaseGraph, group: FiniteGroup, gen_images: Vec<Elem>) -> Result<Self> {
        let k = Subgroup::trivial(&group);
        Self::new(base, group, gen_images, k)
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn basis(&self) -> &Pi1Basis {
        &self.basis
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gen_images(&self) -> &[Elem] {
        &self.gen_images
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    pub fn fibre_size(&self) -> usize {
        self.cosets.len()
    }

    pub fn fibre(&self) -> impl Iterator<Item = FibrePoint> {
        (0..self.cosets.len()).map(FibrePoint)
    }

    /// The coset `K` itself.
    pub fn base_point(&self) -> FibrePoint {
        FibrePoint(self.cosets.coset_of(self.group.identity()))
    }

    pub fn point_of(&self, x: Elem) -> FibrePoint {
        FibrePoint(self.cosets.coset_of(x))
    }

    pub fn representative(&self, x: FibrePoint) -> Elem {
        self.cosets.representative(x.0)
    }

    fn check_point(&self, x: FibrePoint) -> Result<()> {
        if x.0 < self.fibre_size() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x.0, order: self.fibre_size() })
        }
    }

    /// `φ(w)`.
    pub fn phi(&self, word: &Word) -> Result<Elem> {
        word.evaluate(&self.group, &self.gen_images)
    }

    /// The group element a dart translates cosets by: identity on tree
    /// darts, `φ(a)` on the chord of `a`, `φ(a)⁻¹` on its reverse.
    pub fn voltage(&self, dart: usize) -> Elem {
        match self.basis.dart_letter(dart) {
            None => self.group.identity(),
            Some(l) if l.inverse => self.group.inv(self.gen_images[l.generator]),
            Some(l) => self.gen_images[l.generator],
        }
    }

    /// Whether the generator images generate all of `G`.
    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Right action of π₁ on the fibre: `Kx ↦ Kx·φ(w)`.
    pub fn monodromy(&self, x: FibrePoint, word: &Word) -> Result<FibrePoint> {
        self.check_point(x)?;
        let g = self.phi(word)?;
        Ok(self.point_of(self.group.mul(self.representative(x), g)))
    }

    /// Whether monodromy is transitive on `K\G`, i.e. the cover graph is
    /// connected.
    pub fn is_connected_cover(&self) -> bool {
        let mut seen = vec![false; self.fibre_size()];
        let start = self.base_point().0;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(c) = queue.pop_front() {
            for &g in &self.gen_images {
                let next = self.cosets.coset_of(self.group.mul(self.cosets.representative(c), g));
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    queue.push_back(next);
                }
            }
        }
        count == self.fibre_size()
    }

    fn require_surjective(&self) -> Result<()> {
        if self.surjective {
            Ok(())
        } else {
            Err(Error::NotSurjective)
        }
    }

    fn require_regular(&self) -> Result<()> {
        self.require_surjective()?;
        if self.normal {
            Ok(())
        } else {
            Err(Error::NotRegular)
        }
    }

    /// Deck-transitivity on the fibre, decided twice: by normality of `K`
    /// and by enumerating the orbit of the deck group. The two must agree.
    pub fn is_regular(&self) -> Result<bool> {
        self.require_surjective()?;
        let transitive = self.deck_group()?.is_transitive();
        if transitive != self.normal {
            return Err(Error::Inconsistent("deck transitivity disagrees with normality"));
        }
        Ok(transitive)
    }

    /// The deck group `N_G(K)/K` and its action `Kx ↦ Knx` on the fibre.
    pub fn deck_group(&self) -> Result<DeckGroup> {
        self.require_surjective()?;
        let normalizer = self.group.normalizer(&self.subgroup);
        let (n_group, embedding) = self.group.restrict(&normalizer, "N");
        let k_local: Vec<Elem> =
            self.subgroup.iter().map(|x| normalizer.position(x).expect("K lies in its normalizer")).collect();
        let k_in_n = Subgroup::new(&n_group, &k_local)?;
        let (carrier, _) = quotient_group(&n_group, &k_in_n)?;
        let representatives: Vec<Elem> =
            CosetTable::right(&n_group, &k_in_n).representatives().iter().map(|&local| embedding[local]).collect();
        let action = representatives
            .iter()
            .map(|&n| {
                self.cosets.representatives().iter().map(|&x| self.cosets.coset_of(self.group.mul(n, x))).collect()
            })
            .collect();
        Ok(DeckGroup { carrier, representatives, action })
    }

    /// The group structure transported to the fibre: `Ka ∗ Kb = K(ab)`,
    /// together with `Θ: A(p) → F`, `nK ↦ Kn`.
    pub fn fibre_group(&self) -> Result<FibreGroup> {
        self.require_regular()?;
        let (group, _) = quotient_group(&self.group, &self.subgroup)?;
        let deck = self.deck_group()?;
        let theta: Vec<FibrePoint> = deck.representatives.iter().map(|&n| self.point_of(n)).collect();
        let mut hit = vec![false; self.fibre_size()];
        for t in &theta {
            if core::mem::replace(&mut hit[t.0], true) {
                return Err(Error::Inconsistent("Θ is not injective"));
            }
        }
        if theta.len() != self.fibre_size() || group.order() != self.fibre_size() {
            return Err(Error::Inconsistent("Θ is not surjective"));
        }
        Ok(FibreGroup { group, theta, deck })
    }

    /// Left action of π₁ on the fibre: the unique deck transformation taking
    /// `K` to `Kφ(w)`, applied to `Kx`, i.e. `Kx ↦ Kφ(w)x`.
    pub fn left_action(&self, word: &Word, x: FibrePoint) -> Result<FibrePoint> {
        self.require_regular()?;
        self.check_point(x)?;
        let g = self.phi(word)?;
        Ok(self.point_of(self.group.mul(g, self.representative(x))))
    }

    /// The fibre points where the left and right actions of `w` agree. With
    /// `K` trivial this is the centralizer of `φ(w)`.
    pub fn equalizer_set(&self, word: &Word) -> Result<Vec<FibrePoint>> {
        self.require_regular()?;
        let mut out = Vec::new();
        for x in self.fibre() {
            if self.left_action(word, x)? == self.monodromy(x, word)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// The cover graph: vertices `V × K\G`, lifted darts translating cosets
    /// by their voltages.
    pub fn build(&self) -> CoverGraph {
        let sheets = self.fibre_size();
        let mut darts = Vec::with_capacity(self.base.dart_count() * sheets);
        for (d, bd) in self.base.darts().iter().enumerate() {
            let volt = self.voltage(d);
            for c in 0..sheets {
                let tc = self.cosets.coset_of(self.group.mul(self.cosets.representative(c), volt));
                darts.push(CoverDart {
                    source: bd.source * sheets + c,
                    target: bd.target * sheets + tc,
                    reverse: bd.reverse * sheets + tc,
                    base_dart: d,
                });
            }
        }
        CoverGraph::from_darts(self.base.vertex_count(), sheets, self.base_point().0, darts)
    }
}

/// A dart of a cover graph together with the base dart it lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverDart {
    pub source: usize,
    pub target: usize,
    pub reverse: usize,
    pub base_dart: usize,
}

/// A finite cover of a base graph. Vertex `(v, c)` has index
/// `v · sheets + c`; dart ids follow the same pattern over base darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGraph {
    base_vertices: usize,
    sheets: usize,
    base_point: usize,
    darts: Vec<CoverDart>,
    stars: Vec<Vec<usize>>,
}

impl CoverGraph {
    pub fn from_darts(base_vertices: usize, sheets: usize, base_sheet: usize, darts: Vec<CoverDart>) -> Self {
        let mut stars = vec![Vec::new(); base_vertices * sheets];
        for (id, d) in darts.iter().enumerate() {
            stars[d.source].push(id);
        }
        CoverGraph { base_vertices, sheets, base_point: base_sheet, darts, stars }
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn vertex_count(&self) -> usize {
        self.base_vertices * self.sheets
    }

    pub fn vertex(&self, base_vertex: usize, sheet: usize) -> usize {
        base_vertex * self.sheets + sheet
    }

    /// `(base vertex, sheet)` of a cover vertex.
    pub fn split(&self, vertex: usize) -> (usize, usize) {
        (vertex / self.sheets, vertex % self.sheets)
    }

    pub fn project(&self, vertex: usize) -> usize {
        vertex / self.sheets
    }

    /// `(base vertex, coset of the identity)` as a sheet index.
    pub fn base_sheet(&self) -> usize {
        self.base_point
    }

    pub fn darts(&self) -> &[CoverDart] {
        &self.darts
    }

    pub fn dart(&self, id: usize) -> CoverDart {
        self.darts[id]
    }

    pub fn star(&self, vertex: usize) -> &[usize] {
        &self.stars[vertex]
    }

    /// The lift of base dart `base_dart` starting at `vertex`, if any.
    pub fn lift_dart(&self, vertex: usize, base_dart: usize) -> Option<usize> {
        self.stars[vertex].iter().copied().find(|&d| self.darts[d].base_dart == base_dart)
    }

    /// Lifts `path` dart by dart from `start` and returns the end vertex.
    pub fn lift_path(&self, base: &BaseGraph, start: usize, path: &EdgePath) -> Result<usize> {
        if self.project(start) != path.start {
            return Err(Error::NotIncident { position: 0 });
        }
        path.end(base)?;
        let mut at = start;
        for &d in &path.darts {
            let lifted = self.lift_dart(at, d).ok_or(Error::NotACovering { vertex: at })?;
            at = self.darts[lifted].target;
        }
        Ok(at)
    }

    /// Checks the covering property against the base: darts project to
    /// darts compatibly with ends and reversal, and each star maps
    /// bijectively onto the star below it.
    pub fn check_covering(&self, base: &BaseGraph) -> Result<()> {
        if self.vertex_count() != base.vertex_count() * self.sheets {
            return Err(Error::Inconsistent("cover vertex count"));
        }
        for (id, d) in self.darts.iter().enumerate() {
            let bd = base.dart(d.base_dart);
            let r = self.darts.get(d.reverse).ok_or(Error::NotACovering { vertex: d.source })?;
            if self.project(d.source) != bd.source
                || self.project(d.target) != bd.target
                || r.reverse != id
                || r.source != d.target
                || r.base_dart != bd.reverse
            {
                return Err(Error::NotACovering { vertex: d.source });
            }
        }
        for v in 0..self.vertex_count() {
            let mut below: Vec<usize> = self.stars[v].iter().map(|&d| self.darts[d].base_dart).collect();
            below.sort_unstable();
            if below != base.star(self.project(v)) {
                return Err(Error::NotACovering { vertex: v });
            }
        }
        Ok(())
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.stars[v] {
                    let t = self.darts[d].target;
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        components
    }
}

/// `N_G(K)/K` acting on the fibre by `Kx ↦ Knx`.
#[derive(Clone, Debug)]
pub struct DeckGroup {
    carrier: FiniteGroup,
    // minimal normalizer element of each carrier coset nK
    representatives: Vec<Elem>,
    // action[d][c]: image of coset c under d
    action: Vec<Vec<usize>>,
}

impl DeckGroup {
    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// The element `n` of `G` representing deck element `d`.
    pub fn representative(&self, d: Elem) -> Elem {
        self.representatives[d]
    }

    pub fn apply(&self, d: Elem, x: FibrePoint) -> FibrePoint {
        FibrePoint(self.action[d][x.0])
    }

    /// The permutation of the fibre induced by `d`.
    pub fn permutation(&self, d: Elem) -> &[usize] {
        &self.action[d]
    }

    /// The whole cover graph moved by `d`: `(v, Kx) ↦ (v, Knx)`.
    pub fn apply_to_vertex(&self, graph: &CoverGraph, d: Elem, vertex: usize) -> usize {
        let (v, c) = graph.split(vertex);
        graph.vertex(v, self.action[d][c])
    }

    /// Whether `d` is a graph automorphism of `graph` commuting with the
    /// projection.
    pub fn is_cover_automorphism(&self, graph: &CoverGraph, d: Elem) -> bool {
        graph.darts().iter().all(|dart| {
            let s = self.apply_to_vertex(graph, d, dart.source);
            let t = self.apply_to_vertex(graph, d, dart.target);
            graph.lift_dart(s, dart.base_dart).map(|e| graph.dart(e).target) == Some(t)
        })
    }

    /// No non-identity element fixes a fibre point.
    pub fn is_free(&self) -> bool {
        let id = self.carrier.identity();
        (0..self.order()).filter(|&d| d != id).all(|d| self.action[d].iter().enumerate().all(|(c, &image)| image != c))
    }

    pub fn orbit(&self, x: FibrePoint) -> Vec<FibrePoint> {
        let mut points: Vec<FibrePoint> = (0..self.order()).map(|d| self.apply(d, x)).collect();
        points.sort_unstable();
        points.dedup();
        points
    }

    pub fn is_transitive(&self) -> bool {
        let fibre = self.action.first().map_or(0, Vec::len);
        self.orbit(FibrePoint(0)).len() == fibre
    }

    /// The unique deck element sending `from` to `to`, if any.
    pub fn element_sending(&self, from: FibrePoint, to: FibrePoint) -> Option<Elem> {
        (0..self.order()).find(|&d| self.apply(d, from) == to)
    }
}

/// The fibre of a regular cover with its transported group structure.
#[derive(Clone, Debug)]
pub struct FibreGroup {
    group: FiniteGroup,
    theta: Vec<FibrePoint>,
    deck: DeckGroup,
}

impl FibreGroup {
    /// `K\G` as a group; element `c` is fibre point `c`.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    /// `Θ(d) = d(K)`.
    pub fn theta(&self, d: Elem) -> FibrePoint {
        self.theta[d]
    }

    pub fn theta_inverse(&self, x: FibrePoint) -> Elem {
        self.theta.iter().position(|&t| t == x).expect("Θ is a bijection")
    }

    pub fn mul(&self, x: FibrePoint, y: FibrePoint) -> FibrePoint {
        FibrePoint(self.group.mul(x.0, y.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Letter;

    fn perm(perms: &[Vec<usize>], p: &[usize]) -> usize {
        perms.iter().position(|q| q == p).unwrap()
    }

    /// Wedge cover with `G = S₃`, `a ↦ (0 1)`, `b ↦ (1 2)`.
    fn s3_cover(k: &[&[usize]]) -> (CoverSpec, Vec<Vec<usize>>) {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let images = vec![perm(&perms, &[1, 0, 2]), perm(&perms, &[0, 2, 1])];
        let k: Vec<usize> = k.iter().map(|p| perm(&perms, p)).collect();
        let k = Subgroup::new(&s3, &k).unwrap();
        (CoverSpec::new(BaseGraph::bouquet(2), s3, images, k).unwrap(), perms)
    }

    fn klein_cover() -> CoverSpec {
        let z2 = FiniteGroup::cyclic(2);
        let klein = FiniteGroup::direct_product(&z2, &z2);
        CoverSpec::regular(BaseGraph::bouquet(2), klein, vec![2, 1]).unwrap()
    }

    fn a() -> Word {
        Word::generator(0)
    }

    fn b() -> Word {
        Word::generator(1)
    }

    #[test]
    fn build_examples() {
        let z2 = CoverSpec::regular(BaseGraph::circle(), FiniteGroup::cyclic(2), vec![1]).unwrap();
        let g = z2.build();
        assert_eq!(g.vertex_count(), 2);
        g.check_covering(z2.base()).unwrap();
        // the loop's lifts cross between the sheets
        assert!(g.darts().iter().all(|d| g.split(d.source).1 != g.split(d.target).1));

        let klein = klein_cover();
        let g = klein.build();
        assert_eq!(g.vertex_count(), 4);
        assert!((0..4).all(|v| g.star(v).len() == 4));
        g.check_covering(klein.base()).unwrap();

        let (s3, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        let g = s3.build();
        assert_eq!(g.vertex_count(), 3);
        g.check_covering(s3.base()).unwrap();
    }

    #[test]
    fn connectivity() {
        let (s3, _) = s3_cover(&[&[0, 1, 2]]);
        assert!(s3.is_connected_cover());
        assert_eq!(s3.build().component_count(), 1);

        let z4 = CoverSpec::regular(BaseGraph::circle(), FiniteGroup::cyclic(4), vec![2]).unwrap();
        assert!(!z4.is_connected_cover());
        assert_eq!(z4.build().component_count(), 2);

        let (irregular, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        assert!(irregular.is_connected_cover());
    }

    #[test]
    fn monodromy_examples() {
        let z4 = CoverSpec::regular(BaseGraph::circle(), FiniteGroup::cyclic(4), vec![1]).unwrap();
        assert_eq!(z4.monodromy(FibrePoint(0), &a()).unwrap(), FibrePoint(1));
        assert_eq!(z4.monodromy(FibrePoint(3), &Word::empty()).unwrap(), FibrePoint(3));

        let (s3, perms) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        let k = s3.base_point();
        let expected = s3.point_of(perm(&perms, &[0, 2, 1]));
        assert_eq!(s3.monodromy(k, &b()).unwrap(), expected);
        assert!(matches!(s3.monodromy(k, &Word::generator(5)), Err(Error::UnknownGenerator { generator: 5 })));
    }

    #[test]
    fn regularity() {
        let (trivial, _) = s3_cover(&[&[0, 1, 2]]);
        assert!(trivial.is_regular().unwrap());
        let (irregular, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        assert!(!irregular.is_regular().unwrap());
        let (a3, _) = s3_cover(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        assert!(a3.is_regular().unwrap());

        let z4 = CoverSpec::regular(BaseGraph::circle(), FiniteGroup::cyclic(4), vec![2]).unwrap();
        assert_eq!(z4.is_regular().unwrap_err(), Error::NotSurjective);
        assert_eq!(z4.deck_group().unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn deck_groups() {
        let z8 = CoverSpec::regular(BaseGraph::circle(), FiniteGroup::cyclic(8), vec![1]).unwrap();
        let deck = z8.deck_group().unwrap();
        assert_eq!(deck.order(), 8);
        for d in 0..8 {
            for x in 0..8 {
                assert_eq!(deck.apply(d, FibrePoint(x)), FibrePoint((deck.representative(d) + x) % 8));
            }
        }

        let (irregular, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        let deck = irregular.deck_group().unwrap();
        assert_eq!(deck.order(), 1);
        assert!(irregular.fibre().all(|x| deck.orbit(x) == vec![x]));
        assert!(!deck.is_transitive());

        let (a3, _) = s3_cover(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        let deck = a3.deck_group().unwrap();
        assert_eq!(deck.order(), 2);
        assert!(deck.is_free() && deck.is_transitive());
    }

    #[test]
    fn deck_elements_are_cover_automorphisms() {
        for spec in [s3_cover(&[&[0, 1, 2]]).0, s3_cover(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]).0, klein_cover()] {
            let g = spec.build();
            let deck = spec.deck_group().unwrap();
            assert!((0..deck.order()).all(|d| deck.is_cover_automorphism(&g, d)));
            assert!(deck.is_free());
        }
    }

    #[test]
    fn fibre_groups() {
        let klein = klein_cover();
        let fg = klein.fibre_group().unwrap();
        assert_eq!(fg.group().order(), 4);
        assert!((0..4).all(|x| fg.group().row(x) == klein.group().row(x)));
        assert!((0..4).all(|d| fg.theta(d) == FibrePoint(d)));

        let z8 = FiniteGroup::cyclic(8);
        let k = Subgroup::new(&z8, &[0, 4]).unwrap();
        let spec = CoverSpec::new(BaseGraph::circle(), z8, vec![1], k).unwrap();
        let fg = spec.fibre_group().unwrap();
        assert_eq!(fg.group().order(), 4);
        assert_eq!(fg.group().element_order(spec.point_of(1).0), 4);

        let (a3, _) = s3_cover(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        assert_eq!(a3.fibre_group().unwrap().group().order(), 2);

        let (irregular, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        assert_eq!(irregular.fibre_group().unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn theta_is_a_homomorphism_and_base_point_is_identity() {
        let (spec, _) = s3_cover(&[&[0, 1, 2]]);
        let fg = spec.fibre_group().unwrap();
        let deck = fg.deck().carrier();
        assert_eq!(spec.base_point(), FibrePoint(fg.group().identity()));
        for d1 in deck.elements() {
            for d2 in deck.elements() {
                assert_eq!(fg.theta(deck.mul(d1, d2)), fg.mul(fg.theta(d1), fg.theta(d2)));
            }
            assert_eq!(fg.theta_inverse(fg.theta(d1)), d1);
        }
    }

    #[test]
    fn left_action_examples() {
        let (spec, perms) = s3_cover(&[&[0, 1, 2]]);
        let k = spec.base_point();
        for w in [a(), b(), a().concat(&b()), b().pow(3)] {
            assert_eq!(spec.left_action(&w, k).unwrap(), spec.monodromy(k, &w).unwrap());
        }
        let x = FibrePoint(perm(&perms, &[0, 2, 1]));
        let left = spec.left_action(&a(), x).unwrap();
        let right = spec.monodromy(x, &a()).unwrap();
        let t01 = perm(&perms, &[1, 0, 2]);
        assert_eq!(left.0, spec.group().mul(t01, x.0));
        assert_eq!(right.0, spec.group().mul(x.0, t01));
        assert_ne!(left, right);

        let klein = klein_cover();
        let w = Word::reduce([Letter::new(0, false), Letter::new(1, true), Letter::new(0, false)]);
        assert!(klein.fibre().all(|x| klein.left_action(&w, x).unwrap() == klein.monodromy(x, &w).unwrap()));

        let (irregular, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        assert_eq!(irregular.left_action(&a(), FibrePoint(0)).unwrap_err(), Error::NotRegular);
    }

    #[test]
    fn left_action_is_the_deck_transformation_through_the_base_point() {
        let (spec, _) = s3_cover(&[&[0, 1, 2]]);
        let deck = spec.deck_group().unwrap();
        let w = a().concat(&b()).concat(&a());
        let target = spec.monodromy(spec.base_point(), &w).unwrap();
        let d = deck.element_sending(spec.base_point(), target).unwrap();
        for x in spec.fibre() {
            assert_eq!(spec.left_action(&w, x).unwrap(), deck.apply(d, x));
        }
    }

    #[test]
    fn equalizers() {
        let (spec, perms) = s3_cover(&[&[0, 1, 2]]);
        let eq = spec.equalizer_set(&a()).unwrap();
        let t01 = perm(&perms, &[1, 0, 2]);
        let brute: Vec<FibrePoint> =
            (0..6).filter(|&x| spec.group().mul(t01, x) == spec.group().mul(x, t01)).map(FibrePoint).collect();
        assert_eq!(eq, brute);
        assert_eq!(eq.len(), 2);
        assert!(eq.contains(&spec.base_point()));

        // φ(a³) = φ(a) still; φ(w) central only for w in the kernel
        let central = a().pow(2);
        assert_eq!(spec.equalizer_set(&central).unwrap().len(), 6);

        let klein = klein_cover();
        assert_eq!(klein.equalizer_set(&a().concat(&b())).unwrap().len(), 4);
    }

    #[test]
    fn lifting_agrees_with_coset_multiplication() {
        let (spec, _) = s3_cover(&[&[0, 1, 2], &[1, 0, 2]]);
        let g = spec.build();
        let w = Word::reduce([Letter::new(0, false), Letter::new(1, true), Letter::new(1, true)]);
        let path = spec.basis().word_to_path(spec.base(), &w).unwrap();
        for x in spec.fibre() {
            let start = g.vertex(spec.base().base_vertex(), x.0);
            let end = g.lift_path(spec.base(), start, &path).unwrap();
            assert_eq!(g.split(end), (0, spec.monodromy(x, &w).unwrap().0));
        }
    }

    #[test]
    fn theta_graph_cover_with_tree_darts() {
        let theta = BaseGraph::theta();
        let (s3, perms) = FiniteGroup::symmetric(3);
        let images = vec![perm(&perms, &[1, 0, 2]), perm(&perms, &[1, 2, 0])];
        let spec = CoverSpec::regular(theta, s3, images).unwrap();
        let g = spec.build();
        assert_eq!(g.vertex_count(), 12);
        g.check_covering(spec.base()).unwrap();
        assert_eq!(g.component_count(), 1);
        // tree darts stay on their sheet
        for d in g.darts() {
            if spec.basis().is_tree_dart(d.base_dart) {
                assert_eq!(g.split(d.source).1, g.split(d.target).1);
            }
        }
    }
}
