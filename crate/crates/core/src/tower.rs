//! Finite truncations of inverse sequences of regular covers.
//!
//! A tower is a chain of finite groups `G_1 ← G_2 ← … ← G_n` with
//! surjective bonds `q_i: G_{i+1} → G_i` and generator images `φ_i` that
//! are compatible, `q_i(φ_{i+1}(a)) = φ_i(a)`. Level `i` is the regular
//! cover with group `G_i` and trivial `K`; the fibre of the limit is the
//! group of compatible tuples.
//!
//! Levels are numbered from 0 in this API.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{BaseGraph, Pi1Basis};
use crate::covers::{CoverGraph, CoverSpec, FibrePoint};
use crate::groups::{Elem, FiniteGroup, GroupHom, Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TowerSpec {
    base: BaseGraph,
    basis: Pi1Basis,
    levels: Vec<FiniteGroup>,
    // bonds[i]: levels[i + 1] → levels[i]
    bonds: Vec<GroupHom>,
    gen_images: Vec<Vec<Elem>>,
}

impl TowerSpec {
    /// Validates a tower. `bonds[i]` is the image table of `q_i` from level
    /// `i + 1` onto level `i`.
    pub fn new(
        base: BaseGraph,
        levels: Vec<FiniteGroup>,
        bonds: Vec<Vec<Elem>>,
        gen_images: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::EmptyTower);
        }
        let basis = Pi1Basis::spanning_tree(&base);
        if bonds.len() + 1 != levels.len() {
            return Err(Error::ImageCountMismatch { expected: levels.len() - 1, found: bonds.len() });
        }
        if gen_images.len() != levels.len() {
            return Err(Error::ImageCountMismatch { expected: levels.len(), found: gen_images.len() });
        }
        for (group, images) in levels.iter().zip(&gen_images) {
            if images.len() != basis.rank() {
                return Err(Error::ImageCountMismatch { expected: basis.rank(), found: images.len() });
            }
            for &x in images {
                group.check_element(x)?;
            }
        }
        let mut homs = Vec::with_capacity(bonds.len());
        for (i, table) in bonds.into_iter().enumerate() {
            let hom = GroupHom::new(&levels[i + 1], &levels[i], table)?;
            if !hom.is_surjective() {
                return Err(Error::BondNotSurjective { level: i });
            }
            homs.push(hom);
        }
        for (i, hom) in homs.iter().enumerate() {
            for (generator, (&upper, &lower)) in gen_images[i + 1].iter().zip(&gen_images[i]).enumerate() {
                if hom.apply(upper) != lower {
                    return Err(Error::Incompatible { level: i, generator });
                }
            }
        }
        Ok(TowerSpec { base, basis, levels, bonds: homs, gen_images })
    }

    /// The circle with levels `Z/p, Z/p², …, Z/p^depth`, bonds reduction
    /// mod `p^i` and `a ↦ 1` everywhere.
    pub fn solenoid(p: usize, depth: usize) -> Self {
        assert!(p >= 2 && depth >= 1, "solenoid needs p ≥ 2 and depth ≥ 1");
        let sizes: Vec<usize> = (1..=depth as u32).map(|k| p.pow(k)).collect();
        let levels = sizes.iter().map(|&n| FiniteGroup::cyclic(n)).collect();
        let bonds = sizes.windows(2).map(|w| (0..w[1]).map(|x| x % w[0]).collect()).collect();
        Self::new(BaseGraph::circle(), levels, bonds, vec![vec![1]; depth]).expect("solenoid towers are valid")
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn basis(&self) -> &Pi1Basis {
        &self.basis
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &FiniteGroup {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    /// `q_i: G_{i+1} → G_i`.
    pub fn bond(&self, i: usize) -> &GroupHom {
        &self.bonds[i]
    }

    pub fn gen_images(&self, i: usize) -> &[Elem] {
        &self.gen_images[i]
    }

    /// The first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        self.check_depth(depth)?;
        if depth == 0 {
            return Err(Error::EmptyTower);
        }
        Ok(TowerSpec {
            base: self.base.clone(),
            basis: self.basis.clone(),
            levels: self.levels[..depth].to_vec(),
            bonds: self.bonds[..depth - 1].to_vec(),
            gen_images: self.gen_images[..depth].to_vec(),
        })
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        if depth > self.depth() {
            Err(Error::DepthExceeded { depth, available: self.depth() })
        } else {
            Ok(())
        }
    }

    /// The regular cover at level `i`.
    pub fn cover_spec(&self, i: usize) -> CoverSpec {
        CoverSpec::with_basis(
            self.base.clone(),
            self.basis.clone(),
            self.levels[i].clone(),
            self.gen_images[i].clone(),
            crate::groups::Subgroup::trivial(&self.levels[i]),
        )
        .expect("tower levels are valid cover data")
    }

    /// `q_{ij} = q_i ∘ … ∘ q_{j−1}` applied to `g ∈ G_j`.
    pub fn project(&self, g: Elem, from: usize, to: usize) -> Result<Elem> {
        if to > from {
            return Err(Error::LevelOrder { lower: to, upper: from });
        }
        self.check_depth(from + 1)?;
        Ok((to..from).rev().fold(g, |x, k| self.bonds[k].apply(x)))
    }

    /// `φ_i(w)`.
    pub fn phi(&self, i: usize, word: &Word) -> Result<Elem> {
        word.evaluate(&self.levels[i], &self.gen_images[i])
    }

    /// `θ(w)` truncated at `depth`: the tuple `(φ_1(w), …, φ_depth(w))`.
    pub fn theta(&self, word: &Word, depth: usize) -> Result<ProfiniteElement> {
        self.check_depth(depth)?;
        let components = (0..depth).map(|i| self.phi(i, word)).collect::<Result<Vec<_>>>()?;
        let x = ProfiniteElement { components };
        if !self.is_compatible(&x) {
            return Err(Error::Inconsistent("θ produced an incompatible tuple"));
        }
        Ok(x)
    }

    pub fn identity_element(&self, depth: usize) -> Result<ProfiniteElement> {
        self.check_depth(depth)?;
        Ok(ProfiniteElement { components: self.levels[..depth].iter().map(FiniteGroup::identity).collect() })
    }

    /// The compatible tuple whose last component is `g ∈ G_{depth}`.
    pub fn element_from_top(&self, g: Elem, depth: usize) -> Result<ProfiniteElement> {
        self.check_depth(depth)?;
        if depth == 0 {
            return Ok(ProfiniteElement { components: Vec::new() });
        }
        self.levels[depth - 1].check_element(g)?;
        let components = (0..depth).map(|i| self.project(g, depth - 1, i)).collect::<Result<Vec<_>>>()?;
        Ok(ProfiniteElement { components })
    }

    pub fn from_components(&self, components: Vec<Elem>) -> Result<ProfiniteElement> {
        self.check_depth(components.len())?;
        for (i, &g) in components.iter().enumerate() {
            self.levels[i].check_element(g)?;
        }
        let x = ProfiniteElement { components };
        if self.is_compatible(&x) {
            Ok(x)
        } else {
            let level =
                (0..x.depth() - 1).find(|&i| self.bonds[i].apply(x.components[i + 1]) != x.components[i]).unwrap_or(0);
            Err(Error::IncompatibleTuple { level })
        }
    }

    pub fn is_compatible(&self, x: &ProfiniteElement) -> bool {
        x.depth() <= self.depth() && x.components.windows(2).enumerate().all(|(i, w)| self.bonds[i].apply(w[1]) == w[0])
    }

    pub fn fibre_mul(&self, x: &ProfiniteElement, y: &ProfiniteElement) -> Result<ProfiniteElement> {
        if x.depth() != y.depth() {
            return Err(Error::DepthMismatch { left: x.depth(), right: y.depth() });
        }
        self.check_depth(x.depth())?;
        let components =
            x.components.iter().zip(&y.components).enumerate().map(|(i, (&a, &b))| self.levels[i].mul(a, b)).collect();
        Ok(ProfiniteElement { components })
    }

    pub fn fibre_inv(&self, x: &ProfiniteElement) -> Result<ProfiniteElement> {
        self.check_depth(x.depth())?;
        let components = x.components.iter().enumerate().map(|(i, &a)| self.levels[i].inv(a)).collect();
        Ok(ProfiniteElement { components })
    }

    /// Level `i` passes iff `φ_i` is onto `G_i`.
    pub fn dense_leaf_check(&self) -> DenseLeafReport {
        let levels = self
            .levels
            .iter()
            .zip(&self.gen_images)
            .map(|(g, images)| g.generated(images).len() == g.order())
            .collect();
        DenseLeafReport { levels }
    }

    /// For each level, the index of `ker θ_i` in π₁ together with a
    /// transversal of words witnessing `π₁/ker θ_i ≅ G_i`.
    ///
    /// The transversal word of `g` is a shortest word with `φ_i(w) = g`.
    /// The check confirms the index equals `|G_i|`, that products of
    /// transversal words evaluate to products in `G_i`, and that the
    /// transversal of level `i + 1` projects onto that of level `i`.
    pub fn kernel_chain(&self) -> Result<Vec<KernelLevel>> {
        if let Some(level) = self.dense_leaf_check().first_failure() {
            return Err(Error::NotDense { level });
        }
        let mut chain = Vec::with_capacity(self.depth());
        for i in 0..self.depth() {
            let group = &self.levels[i];
            let transversal = self.transversal(i);
            let index = transversal.iter().filter(|w| w.is_some()).count();
            if index != group.order() {
                return Err(Error::NotDense { level: i });
            }
            let transversal: Vec<Word> = transversal.into_iter().map(Option::unwrap).collect();
            for x in group.elements() {
                if self.phi(i, &transversal[x])? != x {
                    return Err(Error::Inconsistent("transversal word evaluates elsewhere"));
                }
                for y in group.elements() {
                    let product = transversal[x].concat(&transversal[y]);
                    if self.phi(i, &product)? != group.mul(x, y) {
                        return Err(Error::Inconsistent("π₁/ker θ_i → G_i is not a homomorphism"));
                    }
                }
                if i > 0 {
                    let below = self.phi(i - 1, &transversal[x])?;
                    if self.bonds[i - 1].apply(x) != below {
                        return Err(Error::IncompatibleTuple { level: i - 1 });
                    }
                }
            }
            chain.push(KernelLevel { level: i, index, transversal });
        }
        Ok(chain)
    }

    /// BFS over the Cayley graph of `G_i` on the generator images; entry `g`
    /// is a shortest word reaching `g`, `None` outside the image of `φ_i`.
    pub fn transversal(&self, i: usize) -> Vec<Option<Word>> {
        transversal_words(&self.levels[i], &self.gen_images[i])
    }

    /// The tower of regular cover graphs and the bonding cover maps.
    pub fn build_covers(&self) -> Result<TowerCover> {
        let levels: Vec<CoverGraph> = (0..self.depth()).map(|i| self.cover_spec(i).build()).collect();
        let mut maps = Vec::with_capacity(self.bonds.len());
        for (i, bond) in self.bonds.iter().enumerate() {
            let (upper, lower) = (&levels[i + 1], &levels[i]);
            let vertex_map = (0..upper.vertex_count())
                .map(|u| {
                    let (v, g) = upper.split(u);
                    lower.vertex(v, bond.apply(g))
                })
                .collect();
            let dart_map = upper
                .darts()
                .iter()
                .map(|d| d.base_dart * lower.sheets() + bond.apply(upper.split(d.source).1))
                .collect();
            let map = CoverMap { vertex_map, dart_map };
            map.check(&self.base, upper, lower)?;
            maps.push(map);
        }
        for graph in &levels {
            graph.check_covering(&self.base)?;
        }
        Ok(TowerCover { levels, maps })
    }
}

pub(crate) fn transversal_words(group: &FiniteGroup, images: &[Elem]) -> Vec<Option<Word>> {
    let mut words: Vec<Option<Word>> = vec![None; group.order()];
    words[group.identity()] = Some(Word::empty());
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (generator, &g) in images.iter().enumerate() {
            for inverse in [false, true] {
                let y = group.mul(x, if inverse { group.inv(g) } else { g });
                if words[y].is_none() {
                    let w = words[x].as_ref().expect("queued elements have words");
                    words[y] = Some(w.concat(&Word::reduce([Letter::new(generator, inverse)])));
                    queue.push_back(y);
                }
            }
        }
    }
    words
}

/// A point of the limit fibre truncated at some depth: a compatible tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfiniteElement {
    components: Vec<Elem>,
}

impl ProfiniteElement {
    pub fn depth(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Elem] {
        &self.components
    }

    pub fn component(&self, i: usize) -> Elem {
        self.components[i]
    }

    /// Drops the components beyond `depth`.
    pub fn truncated(&self, depth: usize) -> ProfiniteElement {
        ProfiniteElement { components: self.components[..depth.min(self.depth())].to_vec() }
    }
}

impl core::fmt::Display for ProfiniteElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseLeafReport {
    levels: Vec<bool>,
}

impl DenseLeafReport {
    pub fn levels(&self) -> &[bool] {
        &self.levels
    }

    pub fn passes(&self) -> bool {
        self.levels.iter().all(|&ok| ok)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().position(|&ok| !ok)
    }
}

#[derive(Clone, Debug)]
pub struct KernelLevel {
    pub level: usize,
    /// `[π₁ : ker θ_i]`.
    pub index: usize,
    /// Word representatives of π₁/ker θ_i, indexed by their image in `G_i`.
    pub transversal: Vec<Word>,
}

/// A cover map `E_{i+1} → E_i` over the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverMap {
    pub vertex_map: Vec<usize>,
    pub dart_map: Vec<usize>,
}

impl CoverMap {
    /// Commutes with projections, sends darts to darts with matching ends,
    /// and is a bijection on every star.
    pub fn check(&self, base: &BaseGraph, upper: &CoverGraph, lower: &CoverGraph) -> Result<()> {
        for (id, d) in upper.darts().iter().enumerate() {
            let image = lower.dart(self.dart_map[id]);
            if image.base_dart != d.base_dart
                || image.source != self.vertex_map[d.source]
                || image.target != self.vertex_map[d.target]
            {
                return Err(Error::NotACovering { vertex: d.source });
            }
        }
        for u in 0..upper.vertex_count() {
            if lower.project(self.vertex_map[u]) != upper.project(u) {
                return Err(Error::NotACovering { vertex: u });
            }
            let mut images: Vec<usize> = upper.star(u).iter().map(|&d| self.dart_map[d]).collect();
            images.sort_unstable();
            let mut below = lower.star(self.vertex_map[u]).to_vec();
            below.sort_unstable();
            if images != below || below.len() != base.star(upper.project(u)).len() {
                return Err(Error::NotACovering { vertex: u });
            }
        }
        Ok(())
    }

    pub fn apply(&self, vertex: usize) -> usize {
        self.vertex_map[vertex]
    }
}

/// The cover graphs `E_1, …, E_n` and the bonding maps `r_i: E_{i+1} → E_i`.
#[derive(Clone, Debug)]
pub struct TowerCover {
    levels: Vec<CoverGraph>,
    maps: Vec<CoverMap>,
}

impl TowerCover {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &CoverGraph {
        &self.levels[i]
    }

    /// `r_i: E_{i+1} → E_i`.
    pub fn bond(&self, i: usize) -> &CoverMap {
        &self.maps[i]
    }

    /// Fibre-to-fibre degree of `r_i`.
    pub fn bond_degree(&self, i: usize) -> usize {
        self.levels[i + 1].sheets() / self.levels[i].sheets()
    }
}

/// Whether `r_i` intertwines monodromy of `word` on the base fibres.
pub fn bond_intertwines(spec: &TowerSpec, i: usize, word: &Word) -> Result<bool> {
    let upper = spec.cover_spec(i + 1);
    let lower = spec.cover_spec(i);
    for x in upper.fibre() {
        let down = FibrePoint(spec.bond(i).apply(x.0));
        if FibrePoint(spec.bond(i).apply(upper.monodromy(x, word)?.0)) != lower.monodromy(down, word)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl core::fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let names: Vec<&str> = self.levels.iter().map(FiniteGroup::name).collect();
        write!(f, "tower of depth {} [{}]", self.depth(), names.join(" <- "))
    }
}
