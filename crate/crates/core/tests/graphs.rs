use og4_core::graph::{build_bicayley, build_coset_graph, local_coset_neighbourhood, BiCayleySpec, CosetGraphSpec};
use og4_core::verify::{check_condition1, diag_subgroup};
use og4_core::zoo;
use og4_core::{PermGroup, Permutation};
use proptest::prelude::*;

fn pm(x: &Permutation) -> [Permutation; 2] {
    [x.clone(), x.inverse()]
}

#[test]
fn bicayley_over_z5_with_plus_minus_one_and_two() {
    let n = zoo::cyclic(5);
    let b = n.generators()[0].clone();
    let s = [pm(&b), pm(&b.pow(2))].concat();
    let bc = build_bicayley(&BiCayleySpec { group: n, r: vec![], l: vec![], s }, 100).unwrap();
    assert_eq!(bc.graph.vertex_count(), 10);
    assert_eq!(bc.graph.regular_degree(), Some(4));
    assert!(bc.graph.is_connected());
}

#[test]
fn bicayley_over_z3_squared_is_bipartite() {
    let n = zoo::cyclic_and_elementary(3, 2).unwrap();
    let s: Vec<Permutation> = n.generators().iter().flat_map(pm).collect();
    let bc = build_bicayley(&BiCayleySpec { group: n, r: vec![], l: vec![], s }, 100).unwrap();
    assert_eq!(bc.graph.vertex_count(), 18);
    assert_eq!(bc.graph.regular_degree(), Some(4));
    let parts = bc.graph.bipartition().unwrap();
    assert!((0..9).all(|v| parts[v] == parts[0]));
    assert!((9..18).all(|v| parts[v] != parts[0]));
}

/// Every `g` in Sym(4) for which `(Sym(4), <(0 1)>, g)` satisfies all four
/// clauses gives a 4-valent graph on all 12 cosets.
#[test]
fn coset_toy_in_sym4() {
    let g = zoo::symmetric(4);
    let s = PermGroup::new(4, vec![Permutation::parse_cycles(4, "(0 1)").unwrap()]).unwrap();
    let mut found = 0;
    for x in g.elements(24).unwrap() {
        let spec = CosetGraphSpec {
            group: g.clone(),
            subgroup: s.clone(),
            g: x,
            index_bound: 100,
        };
        let c = check_condition1(&spec).unwrap();
        let cos = build_coset_graph(&spec).unwrap();
        // Only the component of `S` is explored, so all 12 cosets appear
        // exactly when <S, g> = G.
        let generated = g.order() == PermGroup::new(4, [s.generators(), &[spec.g.clone()]].concat()).unwrap().order();
        assert!(cos.graph.is_connected());
        assert_eq!(cos.graph.vertex_count() == 12, generated);
        if c.holds() {
            found += 1;
            assert_eq!(cos.graph.regular_degree(), Some(4));
        }
    }
    assert!(found > 0);
}

#[test]
fn local_neighbourhoods_of_large_coset_graphs() {
    for (data, reversing) in [(zoo::b4_data(7).unwrap(), false), (zoo::c2_data(7).unwrap(), false)] {
        let diag = diag_subgroup(&data.h, &data.phi, &data.y, &data.v).unwrap();
        let spec = CosetGraphSpec {
            group: diag.group.clone(),
            subgroup: diag.s.clone(),
            g: diag.g.clone(),
            index_bound: 1000,
        };
        assert!(build_coset_graph(&spec).is_err());
        let ball = local_coset_neighbourhood(&spec, 1).unwrap();
        assert_eq!(ball.root_degree, 4);
        assert_eq!(ball.inverse_in_double_coset, reversing);
        assert_eq!(local_coset_neighbourhood(&spec, 0).unwrap().graph.vertex_count(), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// `BiCay(Z_n, {}, {}, S)` is connected exactly when `<S S^-1> = Z_n`,
    /// which for a cyclic group is `gcd(n, differences) = 1`.
    #[test]
    fn bicayley_connectivity_over_cyclic_groups(n in 3usize..20, a in 1usize..20, c in 1usize..20) {
        let z = zoo::cyclic(n);
        let b = z.generators()[0].clone();
        let s: Vec<Permutation> = [0, a % n, c % n].iter().map(|&e| b.pow(e as u64)).collect();
        let bc = build_bicayley(&BiCayleySpec { group: z, r: vec![], l: vec![], s: s.clone() }, 1000).unwrap();
        let gcd = |mut x: usize, mut y: usize| { while y != 0 { (x, y) = (y, x % y); } x };
        let g = gcd(n, gcd(a % n, c % n));
        prop_assert_eq!(bc.graph.is_connected(), g == 1);
        prop_assert!(bc.graph.bipartition().is_some());
    }
}
