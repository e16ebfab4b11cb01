use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::covers::{CoverGraph, CoverSpec};
use crate::groups::{Elem, FiniteGroup};
use crate::tower::TowerSpec;
use crate::{Error, Result};

/// Fibres up to this size are matched by exhaustive search; larger ones
/// only through the canonical map.
pub const EXHAUSTIVE_FIBRE_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMethod {
    /// Every fibre bijection commuting with monodromy was tried.
    Exhaustive,
    /// Only the map induced by the construction was checked.
    Canonical,
}

/// A vertex bijection between two covers of the same base that commutes
/// with the projections and carries lifted darts to lifted darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverIsomorphism {
    pub vertex_map: Vec<usize>,
    pub method: IsoMethod,
    /// Number of fibre bijections commuting with monodromy that were found;
    /// only counted by the exhaustive search.
    pub candidates: usize,
}

/// The extension of a fibre map `f` to vertices, `(v, c) ↦ (v, f(c))`,
/// checked against both graphs.
fn extend_and_check(a: &CoverSpec, ga: &CoverGraph, gb: &CoverGraph, fibre_map: &[usize]) -> Option<Vec<usize>> {
    let base = a.base();
    if ga.vertex_count() != gb.vertex_count() {
        return None;
    }
    let mut hit = vec![false; gb.sheets()];
    if fibre_map.len() != ga.sheets()
        || !fibre_map.iter().all(|&c| c < gb.sheets() && !core::mem::replace(&mut hit[c], true))
    {
        return None;
    }
    let vertex_map: Vec<usize> = (0..ga.vertex_count())
        .map(|x| {
            let (v, c) = ga.split(x);
            gb.vertex(v, fibre_map[c])
        })
        .collect();
    for d in ga.darts() {
        let s = vertex_map[d.source];
        let image = gb.lift_dart(s, d.base_dart)?;
        if gb.dart(image).target != vertex_map[d.target] || gb.project(s) != base.dart(d.base_dart).source {
            return None;
        }
    }
    Some(vertex_map)
}

/// Propagates `f(base) = target` along generator monodromy. Returns the
/// fibre map if it is consistent and total.
fn propagate(a: &CoverSpec, b: &CoverSpec, target: usize) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.fibre_size()];
    let start = a.base_point().0;
    map[start] = target;
    let mut queue = VecDeque::from([start]);
    let (ga, gb) = (a.group(), b.group());
    while let Some(x) = queue.pop_front() {
        for (&ia, &ib) in a.gen_images().iter().zip(b.gen_images()) {
            let next = a.point_of(ga.mul(a.representative(crate::covers::FibrePoint(x)), ia)).0;
            let image = b.point_of(gb.mul(b.representative(crate::covers::FibrePoint(map[x])), ib)).0;
            if map[next] == usize::MAX {
                map[next] = image;
                queue.push_back(next);
            } else if map[next] != image {
                return None;
            }
        }
    }
    map.iter().all(|&c| c != usize::MAX).then_some(map)
}

/// Decides whether two connected covers of the same base are isomorphic.
///
/// Up to `limit` sheets, every choice of image for the base fibre point is
/// propagated along monodromy and checked; beyond it only the
/// base-point-preserving map is tried. `canonical` overrides that map with
/// an explicit fibre bijection.
pub fn cover_isomorphism(
    a: &CoverSpec,
    b: &CoverSpec,
    limit: usize,
    canonical: Option<&[usize]>,
) -> Option<CoverIsomorphism> {
    if a.base() != b.base() || a.gen_images().len() != b.gen_images().len() || a.fibre_size() != b.fibre_size() {
        return None;
    }
    let (ga, gb) = (a.build(), b.build());
    if a.fibre_size() <= limit {
        let mut found = None;
        let mut candidates = 0;
        for target in 0..b.fibre_size() {
            if let Some(map) = propagate(a, b, target) {
                if let Some(vertex_map) = extend_and_check(a, &ga, &gb, &map) {
                    candidates += 1;
                    found.get_or_insert(vertex_map);
                }
            }
        }
        return found.map(|vertex_map| CoverIsomorphism { vertex_map, method: IsoMethod::Exhaustive, candidates });
    }
    let map = match canonical {
        Some(m) => m.to_vec(),
        None => propagate(a, b, b.base_point().0)?,
    };
    extend_and_check(a, &ga, &gb, &map).map(|vertex_map| CoverIsomorphism {
        vertex_map,
        method: IsoMethod::Canonical,
        candidates: 1,
    })
}

/// The tower rebuilt from fibre data alone, with a cover isomorphism to
/// the original at every level.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub tower: TowerSpec,
    /// `None` where no isomorphism was found.
    pub isomorphisms: Vec<Option<CoverIsomorphism>>,
}

impl Reconstruction {
    pub fn all_isomorphic(&self) -> bool {
        self.isomorphisms.iter().all(Option::is_some)
    }
}

/// Rebuilds each level as the cover with group `im φ_i` (a group in its
/// own right, re-indexed) and generator images `φ_i`, with the bonds
/// restricted to the images, and matches it against the original level.
pub fn reconstruct_tower(original: &TowerSpec, limit: usize) -> Result<Reconstruction> {
    if let Some(level) = original.dense_leaf_check().first_failure() {
        return Err(Error::NotDense { level });
    }
    let mut levels = Vec::with_capacity(original.depth());
    let mut embeddings: Vec<Vec<Elem>> = Vec::with_capacity(original.depth());
    let mut images = Vec::with_capacity(original.depth());
    for i in 0..original.depth() {
        let g = original.level(i);
        let image = g.generated(original.gen_images(i));
        let (h, embedding) = g.restrict(&image, alloc::format!("im({})", g.name()));
        let local = |x: Elem| image.position(x).expect("generator images lie in the image");
        images.push(original.gen_images(i).iter().map(|&x| local(x)).collect::<Vec<_>>());
        levels.push(h);
        embeddings.push(embedding);
    }
    let mut bonds = Vec::with_capacity(original.depth().saturating_sub(1));
    for i in 0..original.depth().saturating_sub(1) {
        let lower = &embeddings[i];
        let table = embeddings[i + 1]
            .iter()
            .map(|&x| {
                let y = original.bond(i).apply(x);
                lower.binary_search(&y).map_err(|_| Error::Inconsistent("bond leaves the image"))
            })
            .collect::<Result<Vec<_>>>()?;
        bonds.push(table);
    }
    let tower = TowerSpec::new(original.base().clone(), levels, bonds, images)?;
    let isomorphisms = (0..tower.depth())
        .map(|i| {
            let rebuilt = tower.cover_spec(i);
            let target = original.cover_spec(i);
            // sheets of the rebuilt cover are image elements; embed them
            let canonical: Vec<usize> = embeddings[i].iter().map(|&x| target.point_of(x).0).collect();
            cover_isomorphism(&rebuilt, &target, limit, Some(&canonical))
        })
        .collect();
    Ok(Reconstruction { tower, isomorphisms })
}

/// `G` with its elements permuted by `relabel`, plus the matching generator
/// images. Used to produce isomorphic but differently indexed towers.
pub fn relabel_group(group: &FiniteGroup, relabel: &[Elem], images: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
    let h = group.relabeled(alloc::format!("{}'", group.name()), relabel)?;
    Ok((h, images.iter().map(|&x| relabel[x]).collect()))
}
