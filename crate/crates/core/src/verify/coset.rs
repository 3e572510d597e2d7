//! Conditions on coset-graph data, the diagonal group `Diag_phi(H x H)`,
//! neighbour sets and the certificate for large instances.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::oriented::{check_oriented, OrientedPair};
use crate::graph::{build_coset_graph, CosetGraphSpec, Graph};
use crate::group::{wreath_decompose, wreath_element, ElementTable, PermGroup, CORE_FREE_LIMIT};
use crate::perm::{Permutation, Point};
use crate::zoo::{self, WreathData};
use crate::Error;

/// The four clauses required of `(G, S, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition1 {
    pub core_free: bool,
    pub inverse_not_in_double_coset: bool,
    /// `|S : S cap S^g| = 2`.
    pub index_two: bool,
    pub generates: bool,
}

impl Condition1 {
    pub fn holds(&self) -> bool {
        self.core_free && self.inverse_not_in_double_coset && self.index_two && self.generates
    }
}

/// Checks `S` core-free in `G`, `g^-1` not in `SgS`, `|S : S cap S^g| = 2`
/// and `<S, g> = G`, each on its own.
pub fn check_condition1(spec: &CosetGraphSpec) -> Result<Condition1, Error> {
    let s = spec.subgroup.elements(CORE_FREE_LIMIT).map_err(|_| Error::SubgroupTooLarge {
        order: spec.subgroup.order(),
        limit: CORE_FREE_LIMIT,
    })?;
    let g = &spec.g;
    let g_inv = g.inverse();
    let core_free = spec.group.is_core_free(&spec.subgroup)?;
    let inverse_not_in_double_coset = !s.iter().any(|a| s.iter().any(|b| &(a * g) * b == g_inv));
    let s_set: BTreeSet<&Permutation> = s.iter().collect();
    let meet = s
        .iter()
        .filter(|x| s_set.contains(&x.conjugate_unchecked(&g_inv)))
        .count();
    let index_two = meet * 2 == s.len();
    let mut gens = spec.subgroup.generators().to_vec();
    gens.push(g.clone());
    let generated = PermGroup::new(spec.group.degree(), gens)?.with_order_upper_bound(spec.group.order());
    let generates = spec.group.contains(g)? && generated.order() == spec.group.order();
    Ok(Condition1 {
        core_free,
        inverse_not_in_double_coset,
        index_two,
        generates,
    })
}

/// The four clauses required of `(H, V, y, phi)`, with `V cap V^phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition2 {
    pub core_free: bool,
    /// `y` is not in `V V^phi`.
    pub y_not_in_product: bool,
    /// `|V : V cap V^phi| = 2`.
    pub index_two: bool,
    /// `<V, y> = H`.
    pub generates: bool,
    pub v_order: u128,
    pub intersection: Vec<Permutation>,
    pub generated_order: u128,
}

impl Condition2 {
    pub fn holds(&self) -> bool {
        self.core_free && self.y_not_in_product && self.index_two && self.generates
    }
}

/// Checks `V` core-free in `H`, `y` not in `VV^phi`, `|V : V cap V^phi| = 2`
/// and `<V, y> = H`. The automorphism `phi` is conjugation by `phi_tilde`,
/// which must normalize `H`.
pub fn check_condition2(
    h: &PermGroup,
    v: &PermGroup,
    y: &Permutation,
    phi_tilde: &Permutation,
) -> Result<Condition2, Error> {
    if !h
        .generators()
        .iter()
        .all(|x| h.contains_unchecked(&x.conjugate_unchecked(phi_tilde)))
    {
        return Err(Error::NotNormalizing);
    }
    let elements = v.elements(CORE_FREE_LIMIT)?;
    let core_free = h.is_core_free(v)?;
    let phi_inv = phi_tilde.inverse();
    let v_phi: Vec<Permutation> = elements.iter().map(|x| x.conjugate_unchecked(phi_tilde)).collect();
    let y_not_in_product = !elements.iter().any(|a| v_phi.iter().any(|b| &(a * b) == y));
    let v_set: BTreeSet<&Permutation> = elements.iter().collect();
    // x lies in V^phi iff x^(phi^-1) lies in V.
    let intersection: Vec<Permutation> = elements
        .iter()
        .filter(|x| v_set.contains(&x.conjugate_unchecked(&phi_inv)))
        .cloned()
        .collect();
    let index_two = intersection.len() * 2 == elements.len();
    let mut gens = v.generators().to_vec();
    gens.push(y.clone());
    let generated = PermGroup::new(h.degree(), gens)?.with_order_upper_bound(h.order());
    let generated_order = generated.order();
    let generates = h.contains(y)? && generated_order == h.order();
    Ok(Condition2 {
        core_free,
        y_not_in_product,
        index_two,
        generates,
        v_order: elements.len() as u128,
        intersection,
        generated_order,
    })
}

/// Projection orders of a subgroup of `T^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectReport {
    pub single: Vec<u128>,
    pub pairwise: Vec<((usize, usize), u128)>,
    pub full: bool,
}

/// Whether a subgroup of `T^k`, `T` nonabelian simple of order `t_order`,
/// is all of `T^k`. A subdirect subgroup of such a power is a product of
/// diagonals, so it is everything once all projections onto one and onto
/// two factors are onto.
pub fn subdirect_full(sub: &PermGroup, k: usize, block_degree: usize, t_order: u128) -> Result<SubdirectReport, Error> {
    if sub.degree() != k * block_degree {
        return Err(Error::InconsistentBlocks);
    }
    for g in sub.generators() {
        let (_, top) = wreath_decompose(g, block_degree)?;
        if !top.is_identity() {
            return Err(Error::InconsistentBlocks);
        }
    }
    let range = |i: usize| (i * block_degree, block_degree);
    let single = (0..k)
        .map(|i| {
            sub.restrict_to_ranges(&[range(i)])
                .map(|g| g.with_order_upper_bound(t_order).order())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairwise = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let g = sub
                .restrict_to_ranges(&[range(i), range(j)])?
                .with_order_upper_bound(t_order * t_order);
            pairwise.push(((i, j), g.order()));
        }
    }
    let full = single.iter().all(|&o| o == t_order) && pairwise.iter().all(|&(_, o)| o == t_order * t_order);
    Ok(SubdirectReport {
        single,
        pairwise,
        full,
    })
}

/// `G = <Diag_phi(H x H), g>` on two blocks of `n` points, with
/// `S = Diag_phi(V x V)` and `g = (y, 1)` followed by the block swap.
#[derive(Clone, Debug)]
pub struct DiagData {
    pub group: PermGroup,
    pub g_plus: PermGroup,
    pub s: PermGroup,
    pub g: Permutation,
}

/// `(x, x^phi)` on `2n` points.
fn diag_element(x: &Permutation, phi_tilde: &Permutation) -> Permutation {
    let n = x.degree();
    let xp = x.conjugate_unchecked(phi_tilde);
    let images = (0..n)
        .map(|i| x.image(i as Point))
        .chain((0..n).map(|i| n as Point + xp.image(i as Point)))
        .collect();
    Permutation::from_images(images).expect("two bijections on disjoint blocks")
}

/// Builds `G`, `G+`, `S` and `g` from `H`, `phi`, `y` and `V`. Requires
/// `y != 1` in `H`, `phi_tilde` normalizing `H`, and `phi^2` equal to
/// conjugation by `y` on `H`.
pub fn diag_subgroup(h: &PermGroup, phi_tilde: &Permutation, y: &Permutation, v: &PermGroup) -> Result<DiagData, Error> {
    let n = h.degree();
    if y.is_identity() {
        return Err(Error::IdentityY);
    }
    if !h.contains(y)? || !h.is_supergroup_of(v)? {
        return Err(Error::NotASubgroup);
    }
    let phi2 = phi_tilde.pow(2);
    for x in h.generators() {
        if !h.contains(&x.conjugate(phi_tilde)?)? {
            return Err(Error::NotNormalizing);
        }
        if x.conjugate_unchecked(&phi2) != x.conjugate_unchecked(y) {
            return Err(Error::PhiSquaredNotInner);
        }
    }
    let h_order = h.order();
    let g_plus = PermGroup::new(
        2 * n,
        h.generators().iter().map(|x| diag_element(x, phi_tilde)).collect(),
    )?
    .with_order_upper_bound(h_order);
    let s = PermGroup::new(
        2 * n,
        v.generators().iter().map(|x| diag_element(x, phi_tilde)).collect(),
    )?
    .with_order_upper_bound(v.order());
    let swap = Permutation::from_images(alloc::vec![1, 0])?;
    let g = wreath_element(&[y.clone(), Permutation::identity(n)], &swap)?;
    let g2 = g.pow(2);
    if g2 != wreath_element(&[y.clone(), y.clone()], &Permutation::identity(2))? || !g_plus.contains(&g2)? {
        return Err(Error::AssertionFailed(String::from("g^2 is not (y, y) in G+")));
    }
    if !g_plus.is_normalized_by(&PermGroup::new(2 * n, alloc::vec![g.clone()])?)? {
        return Err(Error::AssertionFailed(String::from("g does not normalize G+")));
    }
    let mut gens = g_plus.generators().to_vec();
    gens.push(g.clone());
    let group = PermGroup::new(2 * n, gens)?.with_order_upper_bound(2 * h_order);
    if group.order() != 2 * h_order || g_plus.order() != h_order {
        return Err(Error::AssertionFailed(format!(
            "|G| = {}, expected {}",
            group.order(),
            2 * h_order
        )));
    }
    Ok(DiagData {
        group,
        g_plus,
        s,
        g,
    })
}

/// A small coset-graph instance realised on the `2n` points of a
/// [`DiagData`], with `V = H_u` so that `S` is the stabilizer of `u_0`.
#[derive(Clone, Debug)]
pub struct PointCosetInstance {
    pub h: PermGroup,
    pub phi_tilde: Permutation,
    pub y: Permutation,
    pub u: Point,
    pub diag: DiagData,
    pub pair: OrientedPair,
}

/// Builds `Cos(G, G_(u_0), g)` and transfers it to the points via
/// `Sx -> u_0^x`. `H` must be transitive.
pub fn point_coset_instance(h: &PermGroup, phi_tilde: &Permutation, y: &Permutation, u: Point) -> Result<PointCosetInstance, Error> {
    let n = h.degree();
    let v = h.pointwise_stabilizer(&[u])?;
    let diag = diag_subgroup(h, phi_tilde, y, &v)?;
    let spec = CosetGraphSpec {
        group: diag.group.clone(),
        subgroup: diag.s.clone(),
        g: diag.g.clone(),
        index_bound: 2 * n,
    };
    let cosets = build_coset_graph(&spec)?;
    if cosets.graph.vertex_count() != 2 * n {
        return Err(Error::NotBiquasiprimitive);
    }
    let point: Vec<u32> = cosets.representatives.iter().map(|r| r.image(u)).collect();
    let edges: Vec<(u32, u32)> = cosets
        .graph
        .edges()
        .map(|(a, b)| (point[a as usize], point[b as usize]))
        .collect();
    let graph = Graph::from_edges(2 * n, &edges)?;
    let pair = OrientedPair::new(graph, diag.group.clone())?;
    Ok(PointCosetInstance {
        h: h.clone(),
        phi_tilde: phi_tilde.clone(),
        y: y.clone(),
        u,
        diag,
        pair,
    })
}

/// Computed and predicted in- and out-neighbours of `alpha = u_0` and
/// `gamma = u_1`, as sorted point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourSets {
    pub z: Permutation,
    pub computed: [Vec<u32>; 4],
    pub predicted: [Vec<u32>; 4],
    pub part_a: bool,
    pub part_b: bool,
}

impl NeighbourSets {
    pub fn holds(&self) -> bool {
        self.part_a && self.part_b
    }
}

/// Compares the neighbour sets of `u_0` and `u_1` with the formulas in
/// terms of `u`, `y` and `z`, where `(z^(phi^-1), z)` is an element of
/// `G_(u_0)` moving all four neighbours of `u_0`. The orientation is the arc
/// orbit containing `u_0^g -> u_0`; `reversed` uses the other one. Points
/// `v_0` and `v_1` are `v` and `n + v`.
pub fn verify_neighbour_sets(
    inst: &PointCosetInstance,
    z: Option<&Permutation>,
    reversed: bool,
) -> Result<NeighbourSets, Error> {
    let n = inst.h.degree();
    let u = inst.u;
    let alpha = u as usize;
    let report = check_oriented(&inst.pair)?;
    let mut orientation = report.orientation.ok_or(Error::NotOriented)?;
    let beta = inst.diag.g.image(u) as usize;
    if orientation.is_forward(beta, alpha) != Some(true) {
        orientation = orientation.reversed();
    }
    if reversed {
        orientation = orientation.reversed();
    }
    let around = inst.pair.graph.neighbours(alpha);
    let fixed_point_free = |x: &Permutation| x.image(u) == u && around.iter().all(|&w| x.image(w) != w);
    let element = match z {
        Some(x) => {
            if !inst.diag.group.contains(x)? || !fixed_point_free(x) {
                return Err(Error::NoFixedPointFreeElement);
            }
            x.clone()
        }
        None => inst
            .diag
            .s
            .elements(CORE_FREE_LIMIT)?
            .into_iter()
            .find(|x| fixed_point_free(x))
            .ok_or(Error::NoFixedPointFreeElement)?,
    };
    let z = element.restrict(n, n)?;
    let y = &inst.y;
    let y_inv = y.inverse();
    let at = |x: &Permutation, side: u32| side * n as u32 + x.image(u);
    let sorted = |mut v: Vec<u32>| {
        v.sort_unstable();
        v
    };
    let id = Permutation::identity(n);
    let predicted = [
        sorted(alloc::vec![at(y, 1), at(&(y * &z), 1)]),
        sorted(alloc::vec![at(&id, 1), at(&z, 1)]),
        sorted(alloc::vec![at(&id, 0), at(&(&(y * &z) * &y_inv), 0)]),
        sorted(alloc::vec![at(&y_inv, 0), at(&(&z * &y_inv), 0)]),
    ];
    let gamma = n + alpha;
    let computed = [
        sorted(orientation.in_neighbours(alpha)),
        sorted(orientation.out_neighbours(alpha)),
        sorted(orientation.in_neighbours(gamma)),
        sorted(orientation.out_neighbours(gamma)),
    ];
    let part_a = computed[0] == predicted[0] && computed[1] == predicted[1];
    let part_b = computed[2] == predicted[2] && computed[3] == predicted[3];
    Ok(NeighbourSets {
        z,
        computed,
        predicted,
        part_a,
        part_b,
    })
}

/// Searches dihedral groups of degree `3..=max_degree` for a point coset
/// instance in OG(4): `phi` is conjugation by some `c` normalizing `H` with
/// `y = c^2` a nontrivial element of `H`.
pub fn find_neighbour_instance(max_degree: usize) -> Result<Option<PointCosetInstance>, Error> {
    for n in 3..=max_degree {
        let h = zoo::dihedral(n);
        let h_elements = h.elements(2 * n as u128)?;
        let h_set: BTreeSet<&Permutation> = h_elements.iter().collect();
        for c in zoo::symmetric(n).elements(5040)? {
            let y = c.pow(2);
            if y.is_identity() || !h_set.contains(&y) {
                continue;
            }
            if !h.generators().iter().all(|x| h_set.contains(&x.conjugate_unchecked(&c))) {
                continue;
            }
            for u in 0..n as Point {
                let inst = match point_coset_instance(&h, &c, &y, u) {
                    Ok(inst) => inst,
                    Err(Error::NotBiquasiprimitive | Error::AssertionFailed(_)) => continue,
                    Err(e) => return Err(e),
                };
                if inst.pair.graph.regular_degree() != Some(4) || !inst.pair.graph.is_connected() {
                    continue;
                }
                if check_oriented(&inst.pair)?.is_in_og4 {
                    return Ok(Some(inst));
                }
            }
        }
    }
    Ok(None)
}

/// Hypotheses of the certificate that a coset-graph family is basic of
/// biquasiprimitive type with socle `T^k`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub t_simple: bool,
    pub h_order: u128,
    pub expected_h_order: u128,
    /// Orbits of `H` on the `k` simple factors.
    pub block_orbits: Vec<Vec<usize>>,
    /// `phi~` swaps the two orbits when there are two.
    pub orbits_swapped: bool,
    /// `<H, phi~>` is transitive on the factors.
    pub transitive_with_phi: bool,
    pub case: Option<super::SocleCase>,
    pub k: usize,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.t_simple && self.h_order == self.expected_h_order && self.transitive_with_phi && self.case.is_some()
    }
}

/// Checks `|H| = |T|^k |V|`, that `T` is simple, and how `H` and `phi~`
/// permute the simple factors of `T^k`: one orbit of `H` gives a unique
/// minimal normal subgroup of `G+`, two orbits swapped by `phi~` give two.
pub fn biquasiprimitive_certificate(data: &WreathData, order_bound: u128) -> Result<Certificate, Error> {
    let d = data.block_degree();
    let k = data.k;
    let t_order = data.t_order();
    let t_simple = {
        let table = ElementTable::new(&data.t.group, order_bound)?;
        table
            .conjugacy_classes()
            .iter()
            .filter(|c| !c.contains(&0))
            .all(|c| table.normal_closure(&[c[0]]).order() == table.len())
            && table.len() > 1
            && !data.t.group.is_abelian()
    };
    let h_order = data.h.order();
    let expected_h_order = t_order.pow(k as u32) * data.v.order();
    let tops = data
        .h
        .generators()
        .iter()
        .map(|x| wreath_decompose(x, d).map(|(_, top)| top))
        .collect::<Result<Vec<_>, _>>()?;
    let top_group = PermGroup::new(k, tops.clone())?;
    let block_orbits: Vec<Vec<usize>> = top_group
        .orbits()
        .into_iter()
        .map(|o| o.into_iter().map(|x| x as usize).collect())
        .collect();
    let (_, phi_top) = wreath_decompose(&data.phi, d)?;
    let orbits_swapped = block_orbits.len() == 2 && {
        let image: BTreeSet<usize> = block_orbits[0].iter().map(|&i| phi_top.image(i as Point) as usize).collect();
        image == block_orbits[1].iter().copied().collect()
    };
    let mut with_phi = tops;
    with_phi.push(phi_top);
    let transitive_with_phi = PermGroup::new(k, with_phi)?.is_transitive();
    let case = match block_orbits.len() {
        1 => Some(super::SocleCase::B),
        2 if orbits_swapped && block_orbits[0].len() == block_orbits[1].len() => Some(super::SocleCase::C),
        _ => None,
    };
    Ok(Certificate {
        t_simple,
        h_order,
        expected_h_order,
        block_orbits,
        orbits_swapped,
        transitive_with_phi,
        case,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn diag_over_sym3_with_inner_automorphism() {
        let h = zoo::symmetric(3);
        let c = p(3, "(0 1 2)");
        let y = c.pow(2);
        let v = PermGroup::trivial(3);
        let d = diag_subgroup(&h, &c, &y, &v).unwrap();
        assert_eq!(d.group.order(), 12);
        assert_eq!(d.group.degree(), 6);
        assert_eq!(d.g_plus.order(), 6);
    }

    #[test]
    fn diag_guards() {
        let h = zoo::symmetric(3);
        let id = Permutation::identity(3);
        let v = PermGroup::trivial(3);
        assert_eq!(diag_subgroup(&h, &id, &id, &v).unwrap_err(), Error::IdentityY);
        let c = p(3, "(0 1 2)");
        assert_eq!(
            diag_subgroup(&h, &id, &c, &v).unwrap_err(),
            Error::PhiSquaredNotInner
        );
        let c5 = zoo::cyclic(5);
        let not_normalizing = p(5, "(0 1)");
        assert_eq!(
            diag_subgroup(&c5, &not_normalizing, &zoo::long_cycle(5), &PermGroup::trivial(5)).unwrap_err(),
            Error::NotNormalizing
        );
    }

    #[test]
    fn condition1_with_whole_group() {
        let s4 = zoo::symmetric(4);
        let spec = CosetGraphSpec {
            group: s4.clone(),
            subgroup: s4.clone(),
            g: p(4, "(0 1)"),
            index_bound: 10,
        };
        let c = check_condition1(&spec).unwrap();
        assert!(c.generates);
        assert!(!c.index_two);
        assert!(!c.core_free);
    }

    #[test]
    fn condition2_with_v_equal_to_h() {
        let h = zoo::symmetric(3);
        let c = check_condition2(&h, &h, &p(3, "(0 1 2)"), &Permutation::identity(3)).unwrap();
        assert!(!c.core_free);
        assert!(!c.holds());
    }

    #[test]
    fn diagonal_is_not_full() {
        let (t, _) = zoo::psl2_on_projective_line(5).unwrap();
        let gens = t.generators().iter().map(|x| wreath_element(&[x.clone(), x.clone()], &Permutation::identity(2)).unwrap()).collect();
        let diag = PermGroup::new(12, gens).unwrap();
        let r = subdirect_full(&diag, 2, 6, 60).unwrap();
        assert!(!r.full);
        assert_eq!(r.pairwise, alloc::vec![((0, 1), 60)]);
        let full = PermGroup::new(12, crate::direct_power_with_top(&t, 2, &[]).unwrap().generators().to_vec()).unwrap();
        assert!(subdirect_full(&full, 2, 6, 60).unwrap().full);
    }

    #[test]
    fn neighbour_sets_on_dihedral_toy() {
        let h = zoo::dihedral(5);
        let c = Permutation::from_images(alloc::vec![0, 2, 4, 1, 3]).unwrap();
        let y = c.pow(2);
        let inst = point_coset_instance(&h, &c, &y, 1).unwrap();
        assert_eq!(inst.diag.group.order(), 20);
        assert_eq!(inst.pair.graph.vertex_count(), 10);
        let r = check_oriented(&inst.pair).unwrap();
        assert!(r.is_in_og4);
        let sets = verify_neighbour_sets(&inst, None, false).unwrap();
        assert!(sets.holds(), "{sets:?}");
        let rev = verify_neighbour_sets(&inst, None, true).unwrap();
        assert_eq!((rev.computed[0].clone(), rev.computed[1].clone()), (sets.computed[1].clone(), sets.computed[0].clone()));
        assert!(!rev.part_a);
        assert_eq!(
            verify_neighbour_sets(&inst, Some(&Permutation::identity(10)), false).unwrap_err(),
            Error::NoFixedPointFreeElement
        );
        assert!(find_neighbour_instance(7).unwrap().is_some());
    }
}
