//! The Borel construction at a finite level pair `(i, j)`.
//!
//! The deeper cover `E_j` stands in for the leaf through the base point;
//! the fibre of level `i` is `G_i`. The map
//!
//! ```text
//! Φ: G_i × V(E_j) → V(E_i),   (u, (v, g)) ↦ (v, u·q_ij(g))
//! ```
//!
//! is constant on the orbits of `γ·(u, ŷ) = (u·q_ij(γ), γ⁻¹·ŷ)`, `γ ∈ G_j`,
//! and the induced map on orbits is a bijection onto the vertices of `E_i`.

mod reconstruct;
mod suite;

use alloc::vec;
use alloc::vec::Vec;

use crate::complex::EdgePath;
use crate::groups::{Elem, Letter, Word};
use crate::tower::{transversal_words, TowerCover, TowerSpec};
use crate::{Error, Result};

pub use reconstruct::{
    cover_isomorphism, reconstruct_tower, relabel_group, CoverIsomorphism, IsoMethod, Reconstruction,
    EXHAUSTIVE_FIBRE_LIMIT,
};
pub use suite::{
    borel_report, cover_report, random_word, structure_report, theorem_suite, CheckEntry, Report, Status, SuiteOptions,
};

fn check_pair(tower: &TowerSpec, i: usize, j: usize) -> Result<()> {
    if i > j {
        return Err(Error::LevelOrder { lower: i, upper: j });
    }
    if j >= tower.depth() {
        return Err(Error::DepthExceeded { depth: j + 1, available: tower.depth() });
    }
    Ok(())
}

/// `Φ(u, ŷ)`: for `ŷ = (v, g)` in `E_j`, the vertex `(v, u·q_ij(g))` of `E_i`.
pub fn phi_map(tower: &TowerSpec, covers: &TowerCover, i: usize, j: usize, u: Elem, y: usize) -> Result<usize> {
    check_pair(tower, i, j)?;
    tower.level(i).check_element(u)?;
    let upper = covers.level(j);
    if y >= upper.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: y });
    }
    let (v, g) = upper.split(y);
    let gi = tower.level(i);
    Ok(covers.level(i).vertex(v, gi.mul(u, tower.project(g, j, i)?)))
}

/// `Φ(u, ŷ)` the slow way: lift `path` from the base point of `E_j`,
/// check that it ends at `ŷ`, then lift it again from `u` in `E_i`.
pub fn phi_map_by_lifting(
    tower: &TowerSpec,
    covers: &TowerCover,
    i: usize,
    j: usize,
    u: Elem,
    y: usize,
    path: &EdgePath,
) -> Result<usize> {
    check_pair(tower, i, j)?;
    let base = tower.base();
    let (upper, lower) = (covers.level(j), covers.level(i));
    let start = upper.vertex(base.base_vertex(), upper.base_sheet());
    if upper.lift_path(base, start, path)? != y {
        return Err(Error::Inconsistent("path does not lift to the requested leaf vertex"));
    }
    lower.lift_path(base, lower.vertex(base.base_vertex(), u), path)
}

/// Several distinct paths from the base vertex whose lifts from the base
/// point of `E_j` end at `y`: a shortest transversal word followed by the
/// tree path, and variants padded with loops in the kernel of `φ_j` and
/// with a backtrack.
pub fn paths_to_leaf_vertex(tower: &TowerSpec, covers: &TowerCover, j: usize, y: usize) -> Result<Vec<EdgePath>> {
    check_pair(tower, 0, j)?;
    let base = tower.base();
    let basis = tower.basis();
    let graph = covers.level(j);
    let (v, g) = graph.split(y);
    let group = tower.level(j);
    let words = transversal_words(group, tower.gen_images(j));
    let w = words[g].clone().ok_or(Error::NotDense { level: j })?;
    let tail = basis.tree_path_from_base(base, v);

    let mut variants = vec![w.clone()];
    for (a, &image) in tower.gen_images(j).iter().enumerate() {
        let k = Word::reduce(core::iter::repeat_n(Letter::new(a, false), group.element_order(image)));
        variants.push(k.concat(&w));
        variants.push(w.concat(&k));
    }
    let mut paths = Vec::new();
    for word in &variants {
        paths.push(basis.word_to_path(base, word)?.concat(&tail));
    }
    // an unreduced detour: out along the first dart and straight back
    if let Some(&d) = base.star(base.base_vertex()).first() {
        let detour = EdgePath { start: base.base_vertex(), darts: vec![d, base.dart(d).reverse] };
        paths.push(detour.concat(&paths[0]));
    }
    Ok(paths)
}

/// The orbit partition of `G_i × V(E_j)` and the map it induces to `V(E_i)`.
#[derive(Clone, Debug)]
pub struct BorelQuotient {
    pub lower: usize,
    pub upper: usize,
    /// Class of `(u, ŷ)` at index `u · |V(E_j)| + ŷ`.
    class_of: Vec<usize>,
    class_count: usize,
    /// The vertex of `E_i` each class maps to.
    canonical: Vec<usize>,
    /// Whether `Φ` was constant on every class.
    phi_constant: bool,
    leaf_vertices: usize,
    target_vertices: usize,
}

impl BorelQuotient {
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_of(&self, u: Elem, y: usize) -> usize {
        self.class_of[u * self.leaf_vertices + y]
    }

    pub fn canonical_map(&self) -> &[usize] {
        &self.canonical
    }

    pub fn phi_constant_on_classes(&self) -> bool {
        self.phi_constant
    }

    /// `Φ̄` is a bijection from classes onto `V(E_i)`.
    pub fn is_bijective(&self) -> bool {
        if !self.phi_constant || self.class_count != self.target_vertices {
            return false;
        }
        let mut hit = vec![false; self.target_vertices];
        self.canonical.iter().all(|&v| !core::mem::replace(&mut hit[v], true))
    }
}

/// Builds the Borel quotient at `(i, j)` by orbit enumeration and checks
/// that `Φ` descends to it.
pub fn borel_quotient(tower: &TowerSpec, covers: &TowerCover, i: usize, j: usize) -> Result<BorelQuotient> {
    check_pair(tower, i, j)?;
    if let Some(level) = tower.dense_leaf_check().first_failure() {
        return Err(Error::NotDense { level });
    }
    let (gi, gj) = (tower.level(i), tower.level(j));
    let leaf = covers.level(j);
    let n_leaf = leaf.vertex_count();
    let total = gi.order() * n_leaf;
    let q: Vec<Elem> = gj.elements().map(|g| tower.project(g, j, i)).collect::<Result<_>>()?;

    let mut class_of = vec![usize::MAX; total];
    let mut canonical = Vec::new();
    let mut phi_constant = true;
    for start in 0..total {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class = canonical.len();
        let (u, y) = (start / n_leaf, start % n_leaf);
        let (v, g) = leaf.split(y);
        let image = phi_map(tower, covers, i, j, u, y)?;
        for gamma in gj.elements() {
            // γ·(u, (v, g)) = (u·q(γ), (v, γ⁻¹g))
            let u2 = gi.mul(u, q[gamma]);
            let y2 = leaf.vertex(v, gj.mul(gj.inv(gamma), g));
            let idx = u2 * n_leaf + y2;
            class_of[idx] = class;
            if phi_map(tower, covers, i, j, u2, y2)? != image {
                phi_constant = false;
            }
        }
        canonical.push(image);
    }
    Ok(BorelQuotient {
        lower: i,
        upper: j,
        class_count: canonical.len(),
        class_of,
        canonical,
        phi_constant,
        leaf_vertices: n_leaf,
        target_vertices: covers.level(i).vertex_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::BaseGraph;
    use crate::groups::FiniteGroup;

    fn wedge_tower(depth: usize) -> TowerSpec {
        let levels: Vec<FiniteGroup> = (1..=depth as u32)
            .map(|k| {
                let c = FiniteGroup::cyclic(1 << k);
                FiniteGroup::direct_product(&c, &c)
            })
            .collect();
        let bonds = (1..depth)
            .map(|k| {
                let (lo, hi) = (1usize << k, 1usize << (k + 1));
                (0..hi * hi).map(|x| (x / hi % lo) * lo + x % hi % lo).collect()
            })
            .collect();
        let images = (1..=depth as u32).map(|k| vec![1 << k, 1]).collect();
        TowerSpec::new(BaseGraph::bouquet(2), levels, bonds, images).unwrap()
    }

    /// Wedge tower with a nonabelian top: `S₃ → Z/2` (sign), `a ↦ (0 1)`, `b ↦ (1 2)`.
    fn sign_tower() -> TowerSpec {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let sign: Vec<usize> = perms
            .iter()
            .map(|p| (0..3).flat_map(|x| (x + 1..3).map(move |y| (x, y))).filter(|&(x, y)| p[x] > p[y]).count() % 2)
            .collect();
        let t01 = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        let t12 = perms.iter().position(|p| p == &[0, 2, 1]).unwrap();
        TowerSpec::new(
            BaseGraph::bouquet(2),
            vec![FiniteGroup::cyclic(2), s3],
            vec![sign],
            vec![vec![1, 1], vec![t01, t12]],
        )
        .unwrap()
    }

    #[test]
    fn phi_examples() {
        let t = TowerSpec::solenoid(2, 2);
        let covers = t.build_covers().unwrap();
        let y = covers.level(1).vertex(0, 3);
        assert_eq!(phi_map(&t, &covers, 0, 1, 1, y).unwrap(), covers.level(0).vertex(0, 0));
        for y in 0..covers.level(1).vertex_count() {
            assert_eq!(phi_map(&t, &covers, 1, 1, 0, y).unwrap(), y);
        }
        assert_eq!(phi_map(&t, &covers, 1, 0, 0, 0).unwrap_err(), Error::LevelOrder { lower: 1, upper: 0 });
    }

    #[test]
    fn phi_is_invariant_under_the_relation() {
        let t = sign_tower();
        let covers = t.build_covers().unwrap();
        let (gi, gj) = (t.level(0), t.level(1));
        let leaf = covers.level(1);
        for u in gi.elements() {
            for y in 0..leaf.vertex_count() {
                let (v, g) = leaf.split(y);
                for gamma in gj.elements() {
                    let lhs = phi_map(&t, &covers, 0, 1, gi.mul(u, t.project(gamma, 1, 0).unwrap()), y).unwrap();
                    let rhs = phi_map(&t, &covers, 0, 1, u, leaf.vertex(v, gj.mul(gamma, g))).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn phi_agrees_with_lifting_every_representative_path() {
        for t in [sign_tower(), wedge_tower(2)] {
            let covers = t.build_covers().unwrap();
            for j in 0..t.depth() {
                for i in 0..=j {
                    for y in 0..covers.level(j).vertex_count() {
                        let paths = paths_to_leaf_vertex(&t, &covers, j, y).unwrap();
                        assert!(paths.len() >= 3);
                        for u in t.level(i).elements() {
                            let expected = phi_map(&t, &covers, i, j, u, y).unwrap();
                            for p in &paths {
                                assert_eq!(phi_map_by_lifting(&t, &covers, i, j, u, y, p).unwrap(), expected);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_cardinalities() {
        let t = TowerSpec::solenoid(2, 2);
        let covers = t.build_covers().unwrap();
        let q = borel_quotient(&t, &covers, 0, 1).unwrap();
        assert_eq!(q.class_count(), 2 * 4 / 4);
        assert!(q.is_bijective());
        let q = borel_quotient(&t, &covers, 1, 1).unwrap();
        assert_eq!(q.class_count(), 4);
        assert!(q.is_bijective());

        let t = wedge_tower(2);
        let covers = t.build_covers().unwrap();
        let q = borel_quotient(&t, &covers, 0, 1).unwrap();
        assert_eq!(q.class_count(), 4 * 16 / 16);
        assert!(q.is_bijective());
    }

    #[test]
    fn quotient_classes_are_orbits() {
        let t = sign_tower();
        let covers = t.build_covers().unwrap();
        let q = borel_quotient(&t, &covers, 0, 1).unwrap();
        assert!(q.is_bijective());
        // oracle: union of pairs related by (uγ, ŷ) ~ (u, γŷ), by brute force
        let (gi, gj) = (t.level(0), t.level(1));
        let leaf = covers.level(1);
        for u in gi.elements() {
            for y in 0..leaf.vertex_count() {
                let (v, g) = leaf.split(y);
                for gamma in gj.elements() {
                    let ug = gi.mul(u, t.project(gamma, 1, 0).unwrap());
                    assert_eq!(q.class_of(ug, y), q.class_of(u, leaf.vertex(v, gj.mul(gamma, g))));
                }
            }
        }
    }

    #[test]
    fn quotient_rejects_bad_input() {
        let t = TowerSpec::solenoid(2, 2);
        let covers = t.build_covers().unwrap();
        assert!(matches!(borel_quotient(&t, &covers, 1, 0), Err(Error::LevelOrder { .. })));
        let levels = vec![FiniteGroup::trivial(), FiniteGroup::cyclic(4)];
        let t = TowerSpec::new(BaseGraph::circle(), levels, vec![vec![0; 4]], vec![vec![0], vec![2]]).unwrap();
        let covers = t.build_covers().unwrap();
        assert_eq!(borel_quotient(&t, &covers, 0, 1).unwrap_err(), Error::NotDense { level: 1 });
    }
}
