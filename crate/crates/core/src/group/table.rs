//! Explicit element lists for groups of moderate order.
//!
//! An element is stored only through its base image, which determines it.
//! Each element also records its parent in a breadth-first spanning tree of the
//! Cayley graph, so the image of any point can be recovered by walking the
//! path back to the identity. This keeps memory at `O(|G| * |base|)` even
//! when the group acts on thousands of points.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::PermGroup;
use crate::perm::{lcm, Permutation, Point};
use crate::Error;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct ElementTable {
    degree: usize,
    base: Vec<Point>,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    keys: Vec<Point>,
    index: BTreeMap<Vec<Point>, u32>,
    parent: Vec<u32>,
    via: Vec<u32>,
}

/// A subgroup of an [`ElementTable`], as a set of element indices. Two
/// subgroups are equal when they have the same elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u64>,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn trivial(size: usize) -> Self {
        let mut members = alloc::vec![0u64; size.div_ceil(64)];
        members[0] |= 1;
        Subgroup {
            members,
            elements: alloc::vec![0],
            generators: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        if self.contains(i) {
            return false;
        }
        self.members[i / 64] |= 1 << (i % 64);
        self.elements.push(i as u32);
        true
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().map(|&i| i as usize)
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().map(|&i| i as usize)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(a, b)| a & !b == 0)
    }
}

impl ElementTable {
    /// Lists all elements of `group`, failing if its order exceeds `limit`.
    pub fn new(group: &PermGroup, limit: u128) -> Result<Self, Error> {
        let order = group.order();
        if order > limit {
            return Err(Error::OrderBoundExceeded {
                order,
                bound: limit,
            });
        }
        let base = group.base();
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let gens_inv = gens.iter().map(|g| g.inverse()).collect();
        let b = base.len();
        let mut table = ElementTable {
            degree: group.degree(),
            base: base.clone(),
            gens,
            gens_inv,
            keys: base.clone(),
            index: BTreeMap::new(),
            parent: alloc::vec![NONE],
            via: alloc::vec![NONE],
        };
        table.index.insert(base, 0);
        let mut i = 0;
        while i < table.parent.len() {
            for k in 0..table.gens.len() {
                let key: Vec<Point> = table.keys[i * b..(i + 1) * b]
                    .iter()
                    .map(|&x| table.gens[k].image(x))
                    .collect();
                if !table.index.contains_key(&key) {
                    let n = table.parent.len() as u32;
                    table.keys.extend_from_slice(&key);
                    table.index.insert(key, n);
                    table.parent.push(i as u32);
                    table.via.push(k as u32);
                }
            }
            i += 1;
        }
        if table.len() as u128 != order {
            return Err(Error::AssertionFailed(alloc::format!(
                "enumerated {} elements, expected {}",
                table.len(),
                order
            )));
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    fn key(&self, i: usize) -> &[Point] {
        let b = self.base.len();
        &self.keys[i * b..(i + 1) * b]
    }

    fn lookup(&self, key: &[Point]) -> usize {
        *self
            .index
            .get(key)
            .expect("base image of a group element is listed") as usize
    }

    /// Index of the element with the given base image, if any.
    pub fn find(&self, x: &Permutation) -> Option<usize> {
        if x.degree() != self.degree {
            return None;
        }
        let key: Vec<Point> = self.base.iter().map(|&b| x.image(b)).collect();
        let i = *self.index.get(&key)? as usize;
        (self.materialize(i) == *x).then_some(i)
    }

    /// Index of the `k`-th generator.
    pub fn generator(&self, k: usize) -> usize {
        let key: Vec<Point> = self.base.iter().map(|&b| self.gens[k].image(b)).collect();
        self.lookup(&key)
    }

    /// Image of `pt` under element `i`.
    pub fn eval(&self, i: usize, pt: Point) -> Point {
        let mut path = Vec::new();
        let mut j = i;
        while self.parent[j] != NONE {
            path.push(self.via[j] as usize);
            j = self.parent[j] as usize;
        }
        path.iter()
            .rev()
            .fold(pt, |x, &k| self.gens[k].image(x))
    }

    /// Image of `pt` under the inverse of element `i`.
    pub fn eval_inverse(&self, i: usize, pt: Point) -> Point {
        let mut x = pt;
        let mut j = i;
        while self.parent[j] != NONE {
            x = self.gens_inv[self.via[j] as usize].image(x);
            j = self.parent[j] as usize;
        }
        x
    }

    /// Index of the product `x_i x_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let key: Vec<Point> = self.key(i).iter().map(|&x| self.eval(j, x)).collect();
        self.lookup(&key)
    }

    pub fn inverse(&self, i: usize) -> usize {
        let key: Vec<Point> = self.base.iter().map(|&b| self.eval_inverse(i, b)).collect();
        self.lookup(&key)
    }

    /// Index of `x_j^-1 x_i x_j`.
    pub fn conjugate(&self, i: usize, j: usize) -> usize {
        let key: Vec<Point> = self
            .base
            .iter()
            .map(|&b| self.eval(j, self.eval(i, self.eval_inverse(j, b))))
            .collect();
        self.lookup(&key)
    }

    /// Index of `g_k^-1 x_i g_k` for the `k`-th generator.
    pub fn conjugate_by_generator(&self, i: usize, k: usize) -> usize {
        let key: Vec<Point> = self
            .base
            .iter()
            .map(|&b| self.gens[k].image(self.eval(i, self.gens_inv[k].image(b))))
            .collect();
        self.lookup(&key)
    }

    pub fn element_order(&self, i: usize) -> u128 {
        let mut n = 1u128;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// The element as a permutation of the full domain.
    pub fn materialize(&self, i: usize) -> Permutation {
        let mut path = Vec::new();
        let mut j = i;
        while self.parent[j] != NONE {
            path.push(self.via[j] as usize);
            j = self.parent[j] as usize;
        }
        let mut x = Permutation::identity(self.degree);
        for &k in path.iter().rev() {
            x.mul_assign_unchecked(&self.gens[k]);
        }
        x
    }

    /// Conjugacy classes, each listed with its smallest index first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.len()];
        let mut classes = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut class = alloc::vec![i];
            let mut c = 0;
            while c < class.len() {
                for k in 0..self.gens.len() {
                    let y = self.conjugate_by_generator(class[c], k);
                    if !seen[y] {
                        seen[y] = true;
                        class.push(y);
                    }
                }
                c += 1;
            }
            classes.push(class);
        }
        classes
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut s = Subgroup::trivial(self.len());
        for &g in gens {
            self.add_generator(&mut s, g);
        }
        s
    }

    /// Adds `g` to `s` and closes under multiplication. Returns false if `g`
    /// was already a member.
    fn add_generator(&self, s: &mut Subgroup, g: usize) -> bool {
        if s.contains(g) {
            return false;
        }
        s.generators.push(g as u32);
        let gens: Vec<usize> = s.generators().collect();
        s.elements.clear();
        s.members.iter_mut().for_each(|w| *w = 0);
        s.insert(0);
        let mut i = 0;
        while i < s.elements.len() {
            let x = s.elements[i] as usize;
            for &h in &gens {
                let y = self.mul(x, h);
                s.insert(y);
            }
            i += 1;
        }
        true
    }

    /// Smallest subgroup containing `seeds` and normalized by all generators.
    pub fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut s = Subgroup::trivial(self.len());
        let mut queue: Vec<usize> = seeds.to_vec();
        while let Some(x) = queue.pop() {
            if self.add_generator(&mut s, x) {
                for k in 0..self.gens.len() {
                    queue.push(self.conjugate_by_generator(x, k));
                }
            }
        }
        s
    }

    /// Whether `s` is normalized by all generators of the table's group.
    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.generators().all(|x| {
            (0..self.gens.len()).all(|k| s.contains(self.conjugate_by_generator(x, k)))
        })
    }

    pub fn is_abelian(&self, s: &Subgroup) -> bool {
        let g: Vec<usize> = s.generators().collect();
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.mul(g[i], g[j]) == self.mul(g[j], g[i])))
    }

    /// The subgroup as a permutation group on the table's domain.
    pub fn to_group(&self, s: &Subgroup) -> PermGroup {
        let gens = s.generators().map(|i| self.materialize(i)).collect();
        PermGroup::new(self.degree, gens)
            .expect("materialized elements share the degree")
            .with_order_upper_bound(s.order() as u128)
    }

    /// Inclusion-minimal nontrivial normal subgroups.
    ///
    /// Every minimal normal subgroup is the normal closure of an element of
    /// prime order, so it suffices to close one representative per class.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut closures: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            let x = class[0];
            if !is_prime(self.element_order(x)) {
                continue;
            }
            let n = self.normal_closure(&[x]);
            if !closures.iter().any(|c| *c == n) {
                closures.push(n);
            }
        }
        let minimal: Vec<Subgroup> = closures
            .iter()
            .filter(|n| {
                !closures
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subset_of(n))
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by_key(|m| (m.order(), m.elements.iter().min().copied()));
        minimal
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u128 {
        (0..self.len()).fold(1, |acc, i| lcm(acc, self.element_order(i)))
    }
}

impl PartialEq for ElementTable {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys && self.base == other.base
    }
}

pub(crate) fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
