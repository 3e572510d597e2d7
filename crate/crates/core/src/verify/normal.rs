//! Normal quotients, basic type and the structure of the socle.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::oriented::OrientedPair;
use crate::graph::Graph;
use crate::group::{ElementTable, PermGroup, Subgroup};
use crate::perm::{Permutation, Point};
use crate::Error;

pub const DEFAULT_ORDER_BOUND: u128 = 20_000;

/// The graph on the orbits of a normal subgroup and the induced action.
#[derive(Clone, Debug)]
pub struct NormalQuotient {
    pub graph: Graph,
    /// Orbit index of every vertex.
    pub orbit_of: Vec<u32>,
    /// Generators of `G` acting on the orbits.
    pub action: Vec<Permutation>,
}

/// Quotient of `pair` by a nontrivial normal subgroup `n` of its group.
/// Loops and repeated edges collapse.
pub fn normal_quotient(pair: &OrientedPair, n: &PermGroup) -> Result<NormalQuotient, Error> {
    if n.generators().iter().all(|x| x.is_identity()) {
        return Err(Error::TrivialSubgroup);
    }
    if !pair.group.is_supergroup_of(n)? || !n.is_normalized_by(&pair.group)? {
        return Err(Error::NotNormal);
    }
    let orbits = n.orbits();
    let mut orbit_of = alloc::vec![0u32; pair.graph.vertex_count()];
    for (i, orb) in orbits.iter().enumerate() {
        for &v in orb {
            orbit_of[v as usize] = i as u32;
        }
    }
    let edges: Vec<(u32, u32)> = pair
        .graph
        .edges()
        .map(|(u, v)| (orbit_of[u as usize], orbit_of[v as usize]))
        .filter(|(a, b)| a != b)
        .collect();
    let graph = Graph::from_edges(orbits.len(), &edges)?;
    let action = pair
        .group
        .generators()
        .iter()
        .map(|g| {
            let images = orbits
                .iter()
                .map(|orb| orbit_of[g.image(orb[0]) as usize] as Point)
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NormalQuotient {
        graph,
        orbit_of,
        action,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientClass {
    K1,
    K2,
    Cycle(usize),
    /// 4-valent, so possibly a member of OG(4) again.
    Og4Candidate,
    Other,
}

impl QuotientClass {
    /// `K1`, `K2` or a cycle.
    pub fn is_degenerate(self) -> bool {
        matches!(self, QuotientClass::K1 | QuotientClass::K2 | QuotientClass::Cycle(_))
    }
}

pub fn classify_quotient(q: &Graph) -> QuotientClass {
    let n = q.vertex_count();
    match (n, q.edge_count()) {
        (1, 0) => return QuotientClass::K1,
        (2, 1) => return QuotientClass::K2,
        _ => {}
    }
    match q.regular_degree() {
        Some(2) if n >= 3 && q.is_connected() => QuotientClass::Cycle(n),
        Some(4) => QuotientClass::Og4Candidate,
        _ => QuotientClass::Other,
    }
}

/// Minimal normal subgroups of `g`, which must have order at most
/// `order_bound`.
pub fn minimal_normal_subgroups(g: &PermGroup, order_bound: u128) -> Result<Vec<PermGroup>, Error> {
    let table = ElementTable::new(g, order_bound)?;
    Ok(table
        .minimal_normal_subgroups()
        .iter()
        .map(|m| table.to_group(m))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicType {
    Quasiprimitive,
    Biquasiprimitive,
    Cycle,
    NotBasic,
}

/// One minimal normal subgroup and the quotient it defines.
#[derive(Clone, Debug)]
pub struct QuotientSummary {
    pub order: u128,
    pub orbit_count: usize,
    pub class: QuotientClass,
}

#[derive(Clone, Debug)]
pub struct BasicTypeReport {
    pub kind: BasicType,
    pub quotients: Vec<QuotientSummary>,
}

/// Decides the basic type from the minimal normal subgroups. Every
/// nontrivial normal subgroup contains one of them, so its quotient is a
/// quotient of one of theirs, and a quotient of `K1`, `K2` or a cycle is
/// again one of those.
pub fn basic_type(pair: &OrientedPair, order_bound: u128) -> Result<BasicTypeReport, Error> {
    let mut quotients = Vec::new();
    for m in minimal_normal_subgroups(&pair.group, order_bound)? {
        let q = normal_quotient(pair, &m)?;
        quotients.push(QuotientSummary {
            order: m.order(),
            orbit_count: q.graph.vertex_count(),
            class: classify_quotient(&q.graph),
        });
    }
    let kind = if quotients.iter().any(|q| !q.class.is_degenerate()) {
        BasicType::NotBasic
    } else if quotients.iter().any(|q| matches!(q.class, QuotientClass::Cycle(_))) {
        BasicType::Cycle
    } else if quotients.iter().any(|q| q.class == QuotientClass::K2) {
        BasicType::Biquasiprimitive
    } else {
        BasicType::Quasiprimitive
    };
    Ok(BasicTypeReport { kind, quotients })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SocleCase {
    /// `T` abelian.
    A,
    /// `T` nonabelian and `N` minimal normal in `G+`.
    B,
    /// `T` nonabelian and `G+` has two minimal normal subgroups inside `N`.
    C,
}

impl SocleCase {
    pub fn letter(self) -> char {
        match self {
            SocleCase::A => 'a',
            SocleCase::B => 'b',
            SocleCase::C => 'c',
        }
    }
}

#[derive(Clone, Debug)]
pub struct SocleReport {
    pub case: SocleCase,
    pub k: usize,
    pub socle_order: u128,
    pub t_description: String,
    /// Minimal normal subgroups of `G+` contained in the socle.
    pub g_plus_minimal_in_socle: usize,
}

/// Finds `N = soc(G)`, which must be the unique minimal normal subgroup,
/// writes it as `T^k` and decides which case of the biquasiprimitive
/// structure theorem applies.
pub fn classify_socle_case(pair: &OrientedPair, order_bound: u128) -> Result<SocleReport, Error> {
    let basic = basic_type(pair, order_bound)?;
    if basic.kind != BasicType::Biquasiprimitive {
        return Err(Error::NotBiquasiprimitive);
    }
    let table = ElementTable::new(&pair.group, order_bound)?;
    let minimal = table.minimal_normal_subgroups();
    if minimal.len() != 1 {
        return Err(Error::AssertionFailed(format!(
            "{} minimal normal subgroups, expected a unique one",
            minimal.len()
        )));
    }
    let n_sub = &minimal[0];
    let n = table.to_group(n_sub);
    let socle_order = n_sub.order() as u128;

    if table.is_abelian(n_sub) {
        let (p, k) = prime_power(socle_order).ok_or_else(|| {
            Error::AssertionFailed(format!("abelian socle of order {socle_order} is not a p-group"))
        })?;
        return Ok(SocleReport {
            case: SocleCase::A,
            k,
            socle_order,
            t_description: format!("C_{p}"),
            g_plus_minimal_in_socle: 0,
        });
    }

    let n_table = ElementTable::new(&n, order_bound)?;
    let factors = n_table.minimal_normal_subgroups();
    let k = factors.len();
    let t_order = factors[0].order() as u128;
    if t_order.checked_pow(k as u32) != Some(socle_order) {
        return Err(Error::AssertionFailed(format!(
            "socle of order {socle_order} is not a product of {k} factors of order {t_order}"
        )));
    }
    let g_plus = pair.part_stabilizer()?;
    let gp_table = ElementTable::new(&g_plus, order_bound)?;
    let inside = gp_table
        .minimal_normal_subgroups()
        .iter()
        .filter(|m| inside_group(&gp_table, m, &n))
        .count();
    let case = match inside {
        1 => SocleCase::B,
        2 => SocleCase::C,
        m => {
            return Err(Error::AssertionFailed(format!(
                "G+ has {m} minimal normal subgroups inside the socle"
            )))
        }
    };
    Ok(SocleReport {
        case,
        k,
        socle_order,
        t_description: format!("nonabelian simple of order {t_order}"),
        g_plus_minimal_in_socle: inside,
    })
}

fn inside_group(table: &ElementTable, sub: &Subgroup, group: &PermGroup) -> bool {
    sub.generators()
        .all(|i| group.contains_unchecked(&table.materialize(i)))
}

/// `(p, k)` with `n = p^k`, for a prime `p`.
fn prime_power(n: u128) -> Option<(u128, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Order of the centralizer in `g` of the subgroup generated by `sub`.
pub fn centralizer_order(g: &PermGroup, sub: &[Permutation], order_bound: u128) -> Result<u128, Error> {
    let table = ElementTable::new(g, order_bound)?;
    let gens = sub
        .iter()
        .map(|x| table.find(x).ok_or(Error::NotASubgroup))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((0..table.len())
        .filter(|&i| gens.iter().all(|&j| table.conjugate(i, j) == i))
        .count() as u128)
}

/// Whether `G+` acts faithfully on the part containing vertex 0.
pub fn g_plus_faithful(pair: &OrientedPair) -> Result<bool, Error> {
    let parts = pair.bipartition.as_ref().ok_or(Error::NotBiquasiprimitive)?;
    let g_plus = pair.part_stabilizer()?;
    let part: Vec<usize> = (0..parts.len()).filter(|&v| parts[v] == parts[0]).collect();
    let mut local = alloc::vec![u32::MAX; parts.len()];
    for (i, &v) in part.iter().enumerate() {
        local[v] = i as u32;
    }
    let gens = g_plus
        .generators()
        .iter()
        .map(|g| {
            Permutation::from_images(part.iter().map(|&v| local[g.image(v as Point) as usize]).collect())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let restricted = PermGroup::new(part.len(), gens)?.with_order_upper_bound(g_plus.order());
    Ok(restricted.order() == g_plus.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn quotient_shapes() {
        assert_eq!(classify_quotient(&Graph::empty(1)), QuotientClass::K1);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(classify_quotient(&k2), QuotientClass::K2);
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(classify_quotient(&c5), QuotientClass::Cycle(5));
        let k5_edges: Vec<(u32, u32)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        assert_eq!(
            classify_quotient(&Graph::from_edges(5, &k5_edges).unwrap()),
            QuotientClass::Og4Candidate
        );
        assert_eq!(classify_quotient(&Graph::empty(3)), QuotientClass::Other);
    }

    #[test]
    fn minimal_normal_of_sym4_is_klein() {
        let mins = minimal_normal_subgroups(&zoo::symmetric(4), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        assert!(matches!(
            minimal_normal_subgroups(&zoo::symmetric(8), DEFAULT_ORDER_BOUND),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }

    #[test]
    fn centralizers() {
        let s4 = zoo::symmetric(4);
        let klein = [
            Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap(),
        ];
        assert_eq!(centralizer_order(&s4, &klein, 100).unwrap(), 4);
        assert_eq!(centralizer_order(&s4, s4.generators(), 100).unwrap(), 1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(60), None);
    }
}
