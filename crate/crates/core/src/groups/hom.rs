use alloc::vec::Vec;

use super::{Elem, FiniteGroup, Subgroup};
use crate::{Error, Result};

/// A homomorphism between two finite groups, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image: Vec<Elem>,
    target_order: usize,
    target_identity: Elem,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, image: Vec<Elem>) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::ImageCountMismatch { expected: source.order(), found: image.len() });
        }
        for &y in &image {
            target.check_element(y)?;
        }
        if image[source.identity()] != target.identity() {
            let e = source.identity();
            return Err(Error::NotAHomomorphism { a: e, b: e });
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { image, target_order: target.order(), target_identity: target.identity() })
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHom { image: group.elements().collect(), target_order: group.order(), target_identity: group.identity() }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.image
    }

    pub fn source_order(&self) -> usize {
        self.image.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(
            (0..self.image.len()).filter(|&x| self.image[x] == self.target_identity).collect(),
        )
    }

    pub fn image(&self) -> Subgroup {
        let mut hit = alloc::vec![false; self.target_order];
        for &y in &self.image {
            hit[y] = true;
        }
        Subgroup::from_sorted_unchecked((0..self.target_order).filter(|&y| hit[y]).collect())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target_order
    }

    /// `self` after `first`: `x ↦ self(first(x))`.
    pub fn after(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            image: first.image.iter().map(|&y| self.image[y]).collect(),
            target_order: self.target_order,
            target_identity: self.target_identity,
        }
    }
}
