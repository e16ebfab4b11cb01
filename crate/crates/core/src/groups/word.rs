use alloc::vec::Vec;

use super::{Elem, FiniteGroup};
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group on generators `0, 1, …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(generator: usize) -> Self {
        Word { letters: alloc::vec![Letter::new(generator, false)] }
    }

    /// Free reduction. A single stack pass cancels every adjacent inverse
    /// pair, including the ones exposed by earlier cancellations.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            if stack.last() == Some(&letter.inverted()) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        Word { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn pow(&self, k: usize) -> Word {
        (0..k).fold(Word::empty(), |acc, _| acc.concat(self))
    }

    /// The largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// The product of the images (or their inverses) in reading order; the
    /// empty word evaluates to the identity.
    pub fn evaluate(&self, group: &FiniteGroup, images: &[Elem]) -> Result<Elem> {
        evaluate_letters(&self.letters, group, images)
    }
}

/// [`Word::evaluate`] on a letter sequence that need not be reduced.
pub(crate) fn evaluate_letters(letters: &[Letter], group: &FiniteGroup, images: &[Elem]) -> Result<Elem> {
    let mut acc = group.identity();
    for l in letters {
        let &g = images.get(l.generator).ok_or(Error::UnknownGenerator { generator: l.generator })?;
        acc = group.mul(acc, if l.inverse { group.inv(g) } else { g });
    }
    Ok(acc)
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use proptest::prelude::*;

    const A: Letter = Letter { generator: 0, inverse: false };
    const A_INV: Letter = Letter { generator: 0, inverse: true };
    const B: Letter = Letter { generator: 1, inverse: false };
    const B_INV: Letter = Letter { generator: 1, inverse: true };

    #[test]
    fn reduction_examples() {
        assert_eq!(Word::reduce([A, A_INV, B]).letters(), &[B]);
        assert!(Word::reduce([]).is_empty());
        assert_eq!(Word::reduce([A, B, B_INV, A]).letters(), &[A, A]);
        assert!(Word::reduce([A, B, B_INV, A_INV]).is_empty());
    }

    #[test]
    fn evaluation_examples() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(Word::reduce([A, B_INV]).evaluate(&z4, &[1, 2]).unwrap(), 3);
        assert_eq!(Word::empty().evaluate(&z4, &[1, 2]).unwrap(), 0);
        let err = Word::generator(2).evaluate(&z4, &[1, 2]).unwrap_err();
        assert_eq!(err, Error::UnknownGenerator { generator: 2 });
    }

    #[test]
    fn evaluation_in_s3_uses_left_to_right_composition() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let a = perms.iter().position(|p| p == &[1, 0, 2]).unwrap();
        let b = perms.iter().position(|p| p == &[0, 2, 1]).unwrap();
        let ab = Word::reduce([A, B]).evaluate(&s3, &[a, b]).unwrap();
        // (0 1) first, then (1 2)
        let expected: Vec<usize> = perms[a].iter().map(|&i| perms[b][i]).collect();
        assert_eq!(perms[ab], expected);
        assert_eq!(perms[ab], [2, 0, 1]);
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..3, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinking(ls in letters()) {
            let w = Word::reduce(ls.clone());
            prop_assert!(w.len() <= ls.len());
            prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
            prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverted()));
        }

        #[test]
        fn evaluation_ignores_reduction(ls in letters()) {
            let (s3, _) = FiniteGroup::symmetric(3);
            let images = [2, 1, 3];
            let raw = evaluate_letters(&ls, &s3, &images).unwrap();
            prop_assert_eq!(Word::reduce(ls).evaluate(&s3, &images).unwrap(), raw);
        }

        #[test]
        fn inverse_cancels(ls in letters()) {
            let w = Word::reduce(ls);
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }
    }
}
