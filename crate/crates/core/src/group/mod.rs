//! Finite permutation groups given by generators.

mod chain;
mod table;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::perm::{check_degree, Permutation, Point};
use crate::Error;

use chain::StabChain;
pub use table::{ElementTable, Subgroup};

/// Largest subgroup for which core-freeness is decided by element enumeration.
pub const CORE_FREE_LIMIT: u128 = 64;

/// A permutation group with a lazily computed base and strong generating set.
///
/// The stabilizer chain is computed on first use and cached. Values are `Send`
/// but not `Sync`; clone a group to use it from several threads.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<Point>,
    order_bound: Option<u128>,
    chain: OnceCell<StabChain>,
}

/// An orbit with, for each point, a group element carrying the seed to it.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub transversal: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, Error> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &generators {
            check_degree(degree, g.degree())?;
        }
        Ok(PermGroup {
            degree,
            generators,
            base_prefix: Vec::new(),
            order_bound: None,
            chain: OnceCell::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// Declares an upper bound on the order, known from the way the group was
    /// built. Schreier-Sims stops as soon as the basic orbits account for it.
    /// A bound below the true order gives wrong answers.
    pub fn with_order_upper_bound(mut self, bound: u128) -> Self {
        self.order_bound = Some(bound);
        self.chain = OnceCell::new();
        self
    }

    /// Requests that the base starts with the given points.
    pub fn with_base_prefix(mut self, points: &[Point]) -> Self {
        self.base_prefix = points.to_vec();
        self.chain = OnceCell::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let mut c = StabChain::new(self.degree, &self.base_prefix, self.order_bound);
            c.extend(&self.generators);
            c
        })
    }

    /// Forces construction of the stabilizer chain.
    pub fn schreier_sims(&self) {
        let _ = self.chain();
    }

    pub fn base(&self) -> Vec<Point> {
        self.chain().base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.chain().strong
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool, Error> {
        check_degree(self.degree, x.degree())?;
        Ok(self.chain().contains(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &Permutation) -> bool {
        self.chain().contains(x)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn orbit(&self, point: Point) -> Result<Vec<Point>, Error> {
        self.check_point(point)?;
        Ok(self.orbit_points(point))
    }

    fn orbit_points(&self, point: Point) -> Vec<Point> {
        let mut seen = alloc::vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = alloc::vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Orbit of `point` with explicit transversal elements.
    pub fn orbit_with_transversal(&self, point: Point) -> Result<Orbit, Error> {
        self.check_point(point)?;
        let mut seen = alloc::vec![usize::MAX; self.degree];
        seen[point as usize] = 0;
        let mut points = alloc::vec![point];
        let mut transversal = alloc::vec![self.identity()];
        let mut i = 0;
        while i < points.len() {
            let x = points[i];
            for g in &self.generators {
                let y = g.image(x);
                if seen[y as usize] == usize::MAX {
                    seen[y as usize] = points.len();
                    points.push(y);
                    transversal.push(&transversal[i] * g);
                }
            }
            i += 1;
        }
        Ok(Orbit {
            points,
            transversal,
        })
    }

    /// All orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        let mut seen = alloc::vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orb = self.orbit_points(x as Point);
            for &y in &orb {
                seen[y as usize] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_points(0).len() == self.degree
    }

    fn check_point(&self, point: Point) -> Result<(), Error> {
        if point as usize >= self.degree {
            Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[Point]) -> Result<PermGroup, Error> {
        for &p in points {
            self.check_point(p)?;
        }
        let order = self.order();
        let rebased = PermGroup::new(self.degree, self.generators.clone())?
            .with_base_prefix(points)
            .with_order_upper_bound(order);
        let chain = rebased.chain();
        let depth = chain
            .levels
            .iter()
            .take_while(|l| points.contains(&l.base_point))
            .count();
        let stab_order = chain.stabilizer_order(depth);
        Ok(
            PermGroup::new(self.degree, chain.stabilizer_generators(depth))?
                .with_order_upper_bound(stab_order),
        )
    }

    /// Orders of the pointwise stabilizers of the prefixes `points[..=i]`.
    pub fn stabilizer_chain_orders(&self, points: &[Point]) -> Result<Vec<u128>, Error> {
        let mut out = Vec::with_capacity(points.len());
        for i in 0..points.len() {
            out.push(self.pointwise_stabilizer(&points[..=i])?.order());
        }
        Ok(out)
    }

    /// Whether every generator of `sub` lies in `self`.
    pub fn is_supergroup_of(&self, sub: &PermGroup) -> Result<bool, Error> {
        check_degree(self.degree, sub.degree)?;
        Ok(sub.generators.iter().all(|g| self.contains_unchecked(g)))
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normalized_by(&self, g: &PermGroup) -> Result<bool, Error> {
        check_degree(self.degree, g.degree)?;
        Ok(self.generators.iter().all(|n| {
            g.generators
                .iter()
                .all(|x| self.contains_unchecked(&n.conjugate_unchecked(x)))
        }))
    }

    /// Smallest subgroup containing `seeds` that is closed under conjugation by
    /// the generators of `self`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, Error> {
        for s in seeds {
            check_degree(self.degree, s.degree())?;
        }
        let mut chain = StabChain::new(self.degree, &[], self.order_bound);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: VecDeque<Permutation> = seeds.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if x.is_identity() || chain.contains(&x) {
                continue;
            }
            chain.extend(core::slice::from_ref(&x));
            for g in &self.generators {
                queue.push_back(x.conjugate_unchecked(g));
            }
            gens.push(x);
        }
        let order = chain.order();
        let mut out = PermGroup::new(self.degree, gens)?.with_order_upper_bound(order);
        out.chain = OnceCell::from(chain);
        Ok(out)
    }

    /// Whether `sub` contains no nontrivial normal subgroup of `self`.
    ///
    /// Decided by checking, for every nontrivial element of `sub`, whether its
    /// whole conjugacy class stays inside `sub`. Only for `|sub| <= 64`.
    pub fn is_core_free(&self, sub: &PermGroup) -> Result<bool, Error> {
        if !self.is_supergroup_of(sub)? {
            return Err(Error::NotASubgroup);
        }
        let elements = sub.elements(CORE_FREE_LIMIT)?;
        let members: BTreeSet<&Permutation> = elements.iter().collect();
        for v in &elements {
            if v.is_identity() {
                continue;
            }
            if self.class_within(v, &members) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the conjugacy class of `v` lies inside `members`.
    fn class_within(&self, v: &Permutation, members: &BTreeSet<&Permutation>) -> bool {
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let mut queue = alloc::vec![v.clone()];
        seen.insert(v.clone());
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let c = x.conjugate_unchecked(g);
                if !members.contains(&c) {
                    return false;
                }
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        true
    }

    /// The group generated by the conjugates of the generators by `x`.
    pub fn conjugate_group(&self, x: &Permutation) -> Result<PermGroup, Error> {
        check_degree(self.degree, x.degree())?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_unchecked(x))
            .collect();
        let mut out = PermGroup::new(self.degree, gens)?;
        out.order_bound = self.order_bound;
        Ok(out)
    }

    /// All elements, in breadth-first order over the generators, provided the
    /// order is at most `limit`.
    pub fn elements(&self, limit: u128) -> Result<Vec<Permutation>, Error> {
        let order = self.order();
        if order > limit {
            return Err(Error::OrderBoundExceeded {
                order,
                bound: limit,
            });
        }
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut out = alloc::vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let y = &out[i] * g;
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            i += 1;
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// The group induced on the union of the given invariant ranges.
    pub fn restrict_to_ranges(&self, ranges: &[(usize, usize)]) -> Result<PermGroup, Error> {
        let degree: usize = ranges.iter().map(|r| r.1).sum();
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict_to_ranges(ranges))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    /// Adds generators, discarding the cached chain and any order bound.
    pub fn with_extra_generators(&self, extra: &[Permutation]) -> Result<PermGroup, Error> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Whether all generators commute pairwise.
    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| &g[i] * &g[j] == &g[j] * &g[i]))
    }
}

/// Places `coords[i]` on block `i` and then moves blocks by `top`:
/// the point `(i, x)` goes to `(top(i), coords[i](x))`. Block `i` is
/// `i*d..(i+1)*d` where `d` is the common coordinate degree.
pub fn wreath_element(coords: &[Permutation], top: &Permutation) -> Result<Permutation, Error> {
    let k = coords.len();
    check_degree(k, top.degree())?;
    let d = coords.first().map(|c| c.degree()).ok_or(Error::EmptyDomain)?;
    let mut images = Vec::with_capacity(k * d);
    for (i, c) in coords.iter().enumerate() {
        check_degree(d, c.degree())?;
        let target = top.image(i as Point) as usize * d;
        images.extend(c.images().iter().map(|&x| (target + x as usize) as Point));
    }
    Ok(Permutation::from_images_unchecked(images))
}

/// Splits a permutation that permutes the blocks `i*d..(i+1)*d` into its
/// coordinates and top permutation, the inverse of [`wreath_element`].
pub fn wreath_decompose(x: &Permutation, d: usize) -> Result<(Vec<Permutation>, Permutation), Error> {
    if d == 0 || x.degree() % d != 0 {
        return Err(Error::InconsistentBlocks);
    }
    let k = x.degree() / d;
    let mut coords = Vec::with_capacity(k);
    let mut top = Vec::with_capacity(k);
    for i in 0..k {
        let target = x.image((i * d) as Point) as usize / d;
        let mut imgs = Vec::with_capacity(d);
        for p in 0..d {
            let y = x.image((i * d + p) as Point) as usize;
            if y / d != target {
                return Err(Error::InconsistentBlocks);
            }
            imgs.push((y - target * d) as Point);
        }
        coords.push(Permutation::from_images(imgs)?);
        top.push(target as Point);
    }
    Ok((coords, Permutation::from_images(top)?))
}

/// The subgroup of `t wr S_k` generated by `t` acting in each of the `k`
/// blocks together with the block permutations `top`.
pub fn direct_power_with_top(t: &PermGroup, k: usize, top: &[Permutation]) -> Result<PermGroup, Error> {
    if k == 0 {
        return Err(Error::EmptyDomain);
    }
    for s in top {
        if s.degree() != k {
            return Err(Error::MalformedTop {
                expected: k,
                found: s.degree(),
            });
        }
    }
    let d = t.degree();
    let id = Permutation::identity(d);
    let top_id = Permutation::identity(k);
    let mut gens = Vec::new();
    for i in 0..k {
        for g in t.generators() {
            let mut coords = alloc::vec![id.clone(); k];
            coords[i] = g.clone();
            gens.push(wreath_element(&coords, &top_id)?);
        }
    }
    for s in top {
        if !s.is_identity() {
            gens.push(wreath_element(&alloc::vec![id.clone(); k], s)?);
        }
    }
    PermGroup::new(k * d, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| p(n, s)).collect()).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order(), 1);
        assert_eq!(g.orbit(3).unwrap(), alloc::vec![3]);
        assert!(g.contains(&Permutation::identity(5)).unwrap());
    }

    #[test]
    fn cyclic_orbit_and_order() {
        let g = grp(5, &["(0 1 2 3 4)"]);
        let mut o = g.orbit(0).unwrap();
        o.sort();
        assert_eq!(o, alloc::vec![0, 1, 2, 3, 4]);
        assert_eq!(g.order(), 5);
    }

    #[test]
    fn sym4_order() {
        assert_eq!(grp(4, &["(0 1)", "(0 1 2 3)"]).order(), 24);
    }

    #[test]
    fn alt5_membership() {
        let a5 = grp(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        assert_eq!(a5.order(), 60);
        assert!(!a5.contains(&p(5, "(0 1)")).unwrap());
        assert!(a5.contains(&p(5, "(0 1)(2 3)")).unwrap());
        assert!(a5.contains(&Permutation::identity(5)).unwrap());
        assert!(a5.contains(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn base_is_deterministic() {
        let g = grp(8, &["(0 1 2 3 4 5 6 7)", "(1 7)(2 6)(3 5)"]);
        assert_eq!(g.base(), g.clone().with_order_upper_bound(1000).base());
        let h = grp(8, &["(0 1 2 3 4 5 6 7)", "(1 7)(2 6)(3 5)"]);
        assert_eq!(g.base(), h.base());
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let a3 = s3.normal_closure(&[p(3, "(0 1 2)")]).unwrap();
        assert_eq!(a3.order(), 3);
        let triv = s3.normal_closure(&[Permutation::identity(3)]).unwrap();
        assert_eq!(triv.order(), 1);
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        assert_eq!(s4.normal_closure(&[p(4, "(0 1)(2 3)")]).unwrap().order(), 4);
        assert_eq!(s4.normal_closure(&[p(4, "(0 1)")]).unwrap().order(), 24);
    }

    #[test]
    fn core_freeness() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        assert!(s4.is_core_free(&PermGroup::trivial(4)).unwrap());
        let a4 = grp(4, &["(0 1 2)", "(1 2 3)"]);
        assert!(!s4.is_core_free(&a4).unwrap_or(true) || a4.order() > CORE_FREE_LIMIT);
        let klein = grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert!(!s4.is_core_free(&klein).unwrap());
        assert!(s4.is_core_free(&grp(4, &["(0 1)"])).unwrap());
        assert!(matches!(
            grp(4, &["(0 1)"]).is_core_free(&s4),
            Err(Error::NotASubgroup)
        ));
    }

    #[test]
    fn alt4_in_sym4_is_not_core_free() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let a4 = grp(4, &["(0 1 2)", "(1 2 3)"]);
        assert_eq!(s4.is_core_free(&a4), Ok(false));
    }

    #[test]
    fn conjugate_group_preserves_order() {
        let g = grp(5, &["(0 1 2)", "(0 1)(3 4)"]);
        let c = p(5, "(0 4 2)");
        assert_eq!(g.conjugate_group(&c).unwrap().order(), g.order());
        let same = g.conjugate_group(&Permutation::identity(5)).unwrap();
        assert_eq!(same.generators(), g.generators());
    }

    #[test]
    fn wreath_power_of_s3() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let w = direct_power_with_top(&s3, 2, &[p(2, "(0 1)")]).unwrap();
        assert_eq!(w.degree(), 6);
        assert_eq!(w.order(), 72);
        let same = direct_power_with_top(&s3, 1, &[Permutation::identity(1)]).unwrap();
        assert_eq!(same.order(), 6);
        assert!(matches!(
            direct_power_with_top(&s3, 2, &[p(3, "(0 1)")]),
            Err(Error::MalformedTop { .. })
        ));
    }

    #[test]
    fn wreath_element_round_trip() {
        let c = [p(3, "(0 1)"), p(3, "(0 1 2)")];
        let x = wreath_element(&c, &p(2, "(0 1)")).unwrap();
        assert_eq!(x.image(0), 4);
        let (coords, top) = wreath_decompose(&x, 3).unwrap();
        assert_eq!(coords, c.to_vec());
        assert_eq!(top, p(2, "(0 1)"));
    }

    #[test]
    fn stabilizer_chain_of_psl27() {
        let (t, _) = zoo::psl2_on_projective_line(7).unwrap();
        let orders = t.stabilizer_chain_orders(&[0, 1, 2]).unwrap();
        assert_eq!(orders, alloc::vec![21, 3, 1]);
    }
}
