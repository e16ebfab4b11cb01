use alloc::format;
use alloc::vec::Vec;

use super::{Elem, FiniteGroup, GroupHom};
use crate::{Error, Result};

/// A subgroup, stored as the sorted list of its element indices.
///
/// The parent group is not stored; every operation that needs it takes it
/// as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    /// Checks that `elements` is a subgroup of `group`. Closure is verified,
    /// never completed.
    pub fn new(group: &FiniteGroup, elements: &[Elem]) -> Result<Self> {
        for &x in elements {
            group.check_element(x)?;
        }
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let subgroup = Subgroup { elements: sorted };
        let id = group.identity();
        if !subgroup.contains(id) {
            return Err(Error::NotASubgroup { a: id, b: id, inverse: false });
        }
        for a in subgroup.iter() {
            if !subgroup.contains(group.inv(a)) {
                return Err(Error::NotASubgroup { a, b: a, inverse: true });
            }
            for b in subgroup.iter() {
                if !subgroup.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup { a, b, inverse: false });
                }
            }
        }
        Ok(subgroup)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup { elements: alloc::vec![group.identity()] }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup { elements: group.elements().collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: Elem) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.elements
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.len()
    }
}

/// The right cosets `Kx` of a subgroup, numbered in ascending order of
/// their minimal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    coset_of: Vec<usize>,
    representatives: Vec<Elem>,
}

impl CosetTable {
    pub fn right(group: &FiniteGroup, k: &Subgroup) -> Self {
        let mut coset_of = alloc::vec![usize::MAX; group.order()];
        let mut representatives = Vec::new();
        // scanning in ascending order makes the first member seen the minimum
        for x in group.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(x);
            for h in k.iter() {
                coset_of[group.mul(h, x)] = id;
            }
        }
        CosetTable { coset_of, representatives }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn coset_of(&self, x: Elem) -> usize {
        self.coset_of[x]
    }

    /// The minimal element of coset `c`.
    pub fn representative(&self, c: usize) -> Elem {
        self.representatives[c]
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }
}

/// `G/N` together with the projection `G → G/N`.
///
/// Cosets are numbered by ascending minimal element, which is also the
/// numbering [`CosetTable::right`] uses.
pub fn quotient_group(group: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if let Some((conjugator, element)) = group.normality_witness(n) {
        return Err(Error::NotNormal { conjugator, element });
    }
    let cosets = CosetTable::right(group, n);
    let reps = cosets.representatives();
    let rows: Vec<Vec<Elem>> =
        reps.iter().map(|&a| reps.iter().map(|&b| cosets.coset_of(group.mul(a, b))).collect()).collect();
    let quotient = FiniteGroup::from_table(format!("{}/N{}", group.name(), n.len()), &rows)
        .map_err(|_| Error::Inconsistent("quotient of a group by a normal subgroup"))?;
    let projection = GroupHom::new(group, &quotient, group.elements().map(|x| cosets.coset_of(x)).collect())?;
    Ok((quotient, projection))
}
