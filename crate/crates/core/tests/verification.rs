use std::collections::HashSet;

use og4_core::constructions::{build_family, Budgets, ExplicitInstance, FamilyId, InstanceData};
use og4_core::graph::CosetGraphSpec;
use og4_core::verify::{
    basic_type, biquasiprimitive_certificate, centralizer_order, check_condition1, check_oriented, classify_quotient,
    classify_socle_case, diag_subgroup, find_neighbour_instance, g_plus_faithful, minimal_normal_subgroups,
    normal_quotient, s_arc_report, subdirect_full, verify_neighbour_sets, BasicType, OrientedPair, QuotientClass,
    SocleCase,
};
use og4_core::zoo::{self, AltPair};
use og4_core::{direct_power_with_top, wreath_element, PermGroup, Permutation};

fn explicit(family: FamilyId, param: u64) -> ExplicitInstance {
    match build_family(family, param, &Budgets::default()).unwrap().data {
        InstanceData::Explicit(e) => e,
        InstanceData::Certificate(_) => unreachable!(),
    }
}

fn oriented(e: &ExplicitInstance) -> OrientedPair {
    let r = check_oriented(&e.pair).unwrap();
    e.pair.clone().with_orientation(r.orientation.unwrap())
}

/// Number of directed walks of `len` arcs along the orientation, by
/// explicit enumeration.
fn oriented_walks(pair: &OrientedPair, len: usize) -> usize {
    let o = pair.orientation.as_ref().unwrap();
    let mut paths: Vec<Vec<u32>> = (0..pair.graph.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..len {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap() as usize;
                o.out_neighbours(last).into_iter().map(move |w| {
                    let mut q = p.clone();
                    q.push(w);
                    q
                })
            })
            .collect();
    }
    paths.len()
}

#[test]
fn a1_at_five_is_oriented_with_regular_arcs() {
    let e = explicit(FamilyId::A1, 5);
    let r = check_oriented(&e.pair).unwrap();
    assert!(r.is_in_og4);
    assert_eq!(r.arc_orbit_count, 2);
    let pair = oriented(&e);
    let s = s_arc_report(&pair).unwrap();
    assert_eq!(oriented_walks(&pair, 0), 10);
    assert_eq!(oriented_walks(&pair, s.s), 20);
    assert_eq!(s.group_order, 20);
    assert!(s.regular && s.stabilizer_chain_ok);
}

#[test]
fn a1_at_five_normal_structure() {
    let e = explicit(FamilyId::A1, 5);
    let g = &e.pair.group;
    let minimal = minimal_normal_subgroups(g, 20000).unwrap();
    assert_eq!(minimal.iter().map(PermGroup::order).collect::<Vec<_>>(), vec![5]);
    let delta = g.generators().last().unwrap();
    let closure = g.normal_closure(&[delta.pow(2)]).unwrap();
    let elements = g.elements(20).unwrap();
    let conjugates: HashSet<Permutation> = elements
        .iter()
        .map(|x| delta.pow(2).conjugate(x).unwrap())
        .collect();
    assert!(conjugates.len() > 1);
    assert!(closure.order() > 2);
    let pair = oriented(&e);
    assert_eq!(basic_type(&pair, 20000).unwrap().kind, BasicType::Biquasiprimitive);
    for n in minimal.iter().chain([g]) {
        let q = normal_quotient(&pair, n).unwrap();
        assert!(matches!(classify_quotient(&q.graph), QuotientClass::K1 | QuotientClass::K2));
    }
    let socle = classify_socle_case(&pair, 20000).unwrap();
    assert_eq!((socle.case, socle.k), (SocleCase::A, 1));
    assert!(g_plus_faithful(&pair).unwrap());
}

#[test]
fn a2_at_three_has_elementary_socle() {
    let e = explicit(FamilyId::A2, 3);
    let pair = oriented(&e);
    let minimal = minimal_normal_subgroups(&pair.group, 20000).unwrap();
    assert_eq!(minimal.len(), 1);
    assert_eq!(minimal[0].order(), 9);
    let q = normal_quotient(&pair, &minimal[0]).unwrap();
    assert_eq!(classify_quotient(&q.graph), QuotientClass::K2);
    let socle = classify_socle_case(&pair, 20000).unwrap();
    assert_eq!((socle.case, socle.k), (SocleCase::A, 2));
}

/// With `sigma` conjugation by the involution `a`, right multiplication by
/// `a` followed by `sigma` is left multiplication by `a`, which commutes with
/// every generator. Its orbits have size 2, so the pair is not basic.
#[test]
fn b1_at_five_has_a_central_involution() {
    let e = explicit(FamilyId::B1, 5);
    let r = check_oriented(&e.pair).unwrap();
    let a = zoo::alt_with_pair(5, AltPair::Involution).unwrap();
    let (ab, ba) = (&a.a * &a.b, &a.b * &a.a);
    let side = |x: &Permutation| e.bicayley.vertex(x, 1).unwrap() as u32;
    let mut orbits: Vec<Vec<u32>> = r.stabilizer_orbits.clone();
    orbits.iter_mut().for_each(|o| o.sort_unstable());
    orbits.sort();
    let mut expected = vec![
        vec![side(&ab), side(&ba)],
        vec![side(&(&a.b.inverse() * &a.a)), side(&(&a.a * &a.b.inverse()))],
    ];
    expected.iter_mut().for_each(|o| o.sort_unstable());
    expected.sort();
    assert_eq!(orbits, expected);

    let order = e.bicayley.group_order();
    let images: Vec<u32> = (0..2 * order)
        .map(|v| {
            let x = e.bicayley.element(v % order);
            e.bicayley.vertex(&(&a.a * x), (v / order) as u8).unwrap() as u32
        })
        .collect();
    let z = Permutation::from_images(images).unwrap();
    assert!(!z.is_identity());
    assert!(e.pair.group.contains(&z).unwrap());
    assert!(e.pair.group.generators().iter().all(|g| &z * g == g * &z));

    let n_gens = &e.pair.group.generators()[..e.n.generators().len()];
    let commuting = e
        .pair
        .group
        .elements(240)
        .unwrap()
        .into_iter()
        .filter(|x| n_gens.iter().all(|g| x * g == g * x))
        .count();
    assert_eq!(centralizer_order(&e.pair.group, n_gens, 20000).unwrap(), commuting as u128);
    assert!(commuting > 1);
    assert_eq!(basic_type(&oriented(&e), 20000).unwrap().kind, BasicType::NotBasic);
}

#[test]
fn subdirect_fullness_matches_closure_counts() {
    for t in [zoo::alternating(5), zoo::psl2_on_projective_line(7).unwrap().0] {
        let d = t.degree();
        let t_order = t.order();
        let id = Permutation::identity(2);
        let diagonal: Vec<Permutation> = t
            .generators()
            .iter()
            .map(|x| wreath_element(&[x.clone(), x.clone()], &id).unwrap())
            .collect();
        let diag = PermGroup::new(2 * d, diagonal).unwrap();
        let square = direct_power_with_top(&t, 2, &[]).unwrap();
        for (g, full) in [(diag, false), (square, true)] {
            let r = subdirect_full(&g, 2, d, t_order).unwrap();
            assert_eq!(r.full, full);
            let count = g.elements(t_order * t_order).unwrap().len() as u128;
            assert_eq!(r.pairwise[0].1, count);
        }
    }
}

#[test]
fn coset_families_satisfy_condition1_and_the_certificate() {
    let shapes = [
        (zoo::b4_data(7).unwrap(), vec![4], SocleCase::B),
        (zoo::c2_data(7).unwrap(), vec![2, 2], SocleCase::C),
        (zoo::c4_data(7).unwrap(), vec![4, 4], SocleCase::C),
    ];
    for (data, orbit_sizes, case) in shapes {
        let diag = diag_subgroup(&data.h, &data.phi, &data.y, &data.v).unwrap();
        assert_eq!(diag.group.order(), 2 * data.h.order());
        let spec = CosetGraphSpec {
            group: diag.group.clone(),
            subgroup: diag.s.clone(),
            g: diag.g.clone(),
            index_bound: 0,
        };
        assert!(check_condition1(&spec).unwrap().holds());
        let cert = biquasiprimitive_certificate(&data, 20000).unwrap();
        assert!(cert.holds());
        let sizes: Vec<usize> = cert.block_orbits.iter().map(Vec::len).collect();
        assert_eq!(sizes, orbit_sizes);
        assert_eq!(cert.case, Some(case));
        assert_eq!(cert.orbits_swapped, orbit_sizes.len() == 2);
    }
}

#[test]
fn neighbour_sets_swap_under_reversal() {
    let inst = find_neighbour_instance(7).unwrap().unwrap();
    let forward = verify_neighbour_sets(&inst, None, false).unwrap();
    let backward = verify_neighbour_sets(&inst, None, true).unwrap();
    assert!(forward.holds());
    assert_eq!(forward.computed[0], backward.computed[1]);
    assert_eq!(forward.computed[1], backward.computed[0]);
}

/// In the square family the automorphism `sigma` and the side change
/// `delta` both swap coordinates, so `sigma delta` is the bare side swap,
/// which commutes with everything.
#[test]
fn b2_side_swap_is_central() {
    let e = explicit(FamilyId::B2, 5);
    let half = e.bicayley.group_order() as u32;
    let swap = Permutation::from_images((0..2 * half).map(|v| (v + half) % (2 * half)).collect()).unwrap();
    assert!(e.pair.group.contains(&swap).unwrap());
    assert!(e.pair.group.generators().iter().all(|g| &swap * g == g * &swap));
    assert_eq!(basic_type(&oriented(&e), 20000).unwrap().kind, BasicType::NotBasic);
}
