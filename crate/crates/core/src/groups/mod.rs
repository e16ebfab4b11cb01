//! Finite groups given by full multiplication tables, plus free-group words.
//!
//! Elements are plain indices `0..order`. Permutation groups follow the
//! left-to-right convention: `p · q` applies `p` first, then `q`, so
//! `(p · q)(i) = q(p(i))`.

mod hom;
mod subgroup;
mod word;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::{Error, Result};

pub use hom::GroupHom;
pub use subgroup::{quotient_group, CosetTable, Subgroup};
pub use word::{Letter, Word};

/// An element of a [`FiniteGroup`], as an index into its table.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    // row-major, mult[a * order + b] = a·b
    mult: Vec<Elem>,
    identity: Elem,
    inv: Vec<Elem>,
}

impl FiniteGroup {
    /// Validates a multiplication table and computes identity and inverses.
    ///
    /// Associativity is checked with Light's test over a generating set
    /// picked greedily from the table, which costs `O(n² log n)` instead of
    /// the `O(n³)` triple scan.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<Elem>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::BadTable { row: 0, col: 0 });
        }
        let mut mult = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::BadTable { row: r, col: row.len().min(order) });
            }
            for (c, &x) in row.iter().enumerate() {
                if x >= order {
                    return Err(Error::BadTable { row: r, col: c });
                }
                mult.push(x);
            }
        }
        Self::from_flat(name.into(), order, mult)
    }

    fn from_flat(name: String, order: usize, mult: Vec<Elem>) -> Result<Self> {
        let at = |a: usize, b: usize| mult[a * order + b];
        let identity =
            (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x)).ok_or(Error::NoIdentity)?;
        let mut inv = Vec::with_capacity(order);
        for g in 0..order {
            let h = (0..order)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(Error::NoInverse { element: g })?;
            inv.push(h);
        }
        let group = FiniteGroup { name, order, mult, identity, inv };
        group.check_associative()?;
        Ok(group)
    }

    /// Light's associativity test: the set of `g` with `(xg)y = x(gy)` for
    /// all `x, y` is closed under products, so it suffices to test a set of
    /// elements generating the whole table.
    fn check_associative(&self) -> Result<()> {
        let mut generators = Vec::new();
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        for candidate in 0..self.order {
            if reached[candidate] {
                continue;
            }
            generators.push(candidate);
            // left-nested products of generators
            let mut queue: VecDeque<Elem> = (0..self.order).filter(|&x| reached[x]).collect();
            queue.push_back(candidate);
            reached[candidate] = true;
            while let Some(x) = queue.pop_front() {
                for &g in &generators {
                    let y = self.mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        for &g in &generators {
            for x in 0..self.order {
                let xg = self.mul(x, g);
                for y in 0..self.order {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(Error::NotAssociative { a: x, b: g, c: y });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs every axiom check on an already constructed group.
    pub fn check_axioms(&self) -> Result<()> {
        for x in 0..self.order {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::NoIdentity);
            }
            if self.mul(x, self.inv[x]) != self.identity || self.mul(self.inv[x], x) != self.identity {
                return Err(Error::NoInverse { element: x });
            }
        }
        self.check_associative()
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` under addition; element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            mult.extend((0..n).map(|b| (a + b) % n));
        }
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { name: format!("Z{n}"), order: n, mult, identity: 0, inv }
    }

    /// `G × H` with element `(g, h)` stored at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let mut mult = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (ga, ha) = (a / n, a % n);
                let (gb, hb) = (b / n, b % n);
                mult.push(g.mul(ga, gb) * n + h.mul(ha, hb));
            }
        }
        let inv = (0..order).map(|a| g.inv(a / n) * n + h.inv(a % n)).collect();
        FiniteGroup { name: format!("{}x{}", g.name, h.name), order, mult, identity: g.identity * n + h.identity, inv }
    }

    /// The permutation group generated by `generators`, each given as the
    /// image list of `0..degree`.
    ///
    /// Elements are indexed in lexicographic order of their image lists, so
    /// the identity is element 0. Returns the group together with that list
    /// of permutations.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        for (i, p) in generators.iter().enumerate() {
            if !is_permutation(p, degree) {
                return Err(Error::BadPermutation { index: i });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut seen = BTreeMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(&p, g);
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_keys().collect();
        let index: BTreeMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let order = perms.len();
        let mut mult = Vec::with_capacity(order * order);
        for p in &perms {
            for q in &perms {
                mult.push(index[compose(p, q).as_slice()]);
            }
        }
        let group = Self::from_flat(name.into(), order, mult)?;
        Ok((group, perms))
    }

    /// The full symmetric group on `degree` points, lexicographically indexed.
    pub fn symmetric(degree: usize) -> (Self, Vec<Vec<usize>>) {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..degree).map(|i| (i + 1) % degree).collect());
        }
        Self::from_permutations(format!("S{degree}"), degree, &gens).expect("transposition and cycle are permutations")
    }

    /// Re-indexes the elements: element `x` of `self` becomes `relabel[x]`.
    pub fn relabeled(&self, name: impl Into<String>, relabel: &[Elem]) -> Result<Self> {
        if !is_permutation(relabel, self.order) {
            return Err(Error::BadPermutation { index: 0 });
        }
        let n = self.order;
        let mut mult = vec![0; n * n];
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[relabel[a]] = relabel[self.inv(a)];
            for b in 0..n {
                mult[relabel[a] * n + relabel[b]] = relabel[self.mul(a, b)];
            }
        }
        Ok(FiniteGroup { name: name.into(), order: n, mult, identity: relabel[self.identity], inv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.order
    }

    pub fn check_element(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { element: a, order: self.order })
        }
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.mult[a * self.order..(a + 1) * self.order]
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `{x : gx = xg}`, sorted.
    pub fn centralizer(&self, g: Elem) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.elements().filter(|&x| self.commutes(g, x)).collect())
    }

    /// `{g : gKg⁻¹ = K}`, sorted.
    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        Subgroup::from_sorted_unchecked(
            self.elements().filter(|&g| k.iter().all(|x| k.contains(self.conjugate(g, x)))).collect(),
        )
    }

    /// `gKg⁻¹ = K` for every `g`.
    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.normality_witness(k).is_none()
    }

    /// A pair `(g, x)` with `x ∈ K` and `gxg⁻¹ ∉ K`, if one exists.
    pub fn normality_witness(&self, k: &Subgroup) -> Option<(Elem, Elem)> {
        self.elements().flat_map(|g| k.iter().map(move |x| (g, x))).find(|&(g, x)| !k.contains(self.conjugate(g, x)))
    }

    /// The subgroup generated by `generators`.
    pub fn generated(&self, generators: &[Elem]) -> Subgroup {
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_sorted_unchecked(self.elements().filter(|&x| reached[x]).collect())
    }

    /// `subgroup` as a group in its own right. Element `i` of the result is
    /// element `embedding[i]` of `self`; the embedding is ascending.
    pub fn restrict(&self, subgroup: &Subgroup, name: impl Into<String>) -> (Self, Vec<Elem>) {
        let embedding: Vec<Elem> = subgroup.iter().collect();
        let local = |x: Elem| subgroup.position(x).expect("subgroup closed under products");
        let n = embedding.len();
        let mut mult = Vec::with_capacity(n * n);
        for &a in &embedding {
            for &b in &embedding {
                mult.push(local(self.mul(a, b)));
            }
        }
        let inv = embedding.iter().map(|&a| local(self.inv(a))).collect();
        let group = FiniteGroup { name: name.into(), order: n, mult, identity: local(self.identity), inv };
        (group, embedding)
    }
}

pub(crate) fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    p.iter().all(|&x| x < degree && !core::mem::replace(&mut seen[x], true))
}

/// Left-to-right composition: apply `p`, then `q`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}
