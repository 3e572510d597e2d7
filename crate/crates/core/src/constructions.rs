//! The eight families of basic biquasiprimitive pairs, one per socle shape.
//!
//! Families `A1`, `A2`, `B1`, `B2` and `C1` are bi-Cayley graphs built in
//! full. Families `B4`, `C2` and `C4` are coset graphs of groups of order
//! around `10^9` to `10^19`, verified through the hypotheses of the
//! structural argument instead.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{
    build_bicayley, build_coset_graph, local_coset_neighbourhood, BiCayley, BiCayleySpec, CosetGraphSpec,
    DEFAULT_COSET_INDEX_BOUND, DEFAULT_VERTEX_BUDGET,
};
use crate::group::PermGroup;
use crate::perm::{Permutation, Point};
use crate::verify::{
    basic_type, biquasiprimitive_certificate, centralizer_order, check_condition1, check_condition2, check_oriented, classify_socle_case,
    diag_subgroup, g_plus_faithful, s_arc_report, subdirect_full, BasicType, DiagData, OrientedPair, SocleCase, Status,
    Tier, VerificationReport, DEFAULT_ORDER_BOUND,
};
use crate::zoo::{self, AltPair, SwapCheck, WreathData};
use crate::Error;

/// Limits on the work a single instance may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub vertices: usize,
    pub coset_index: usize,
    /// Largest group order enumerated element by element.
    pub order_bound: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            vertices: DEFAULT_VERTEX_BUDGET,
            coset_index: DEFAULT_COSET_INDEX_BOUND,
            order_bound: DEFAULT_ORDER_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    A1,
    A2,
    B1,
    B2,
    B4,
    C1,
    C2,
    C4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::A1,
        FamilyId::A2,
        FamilyId::B1,
        FamilyId::B2,
        FamilyId::B4,
        FamilyId::C1,
        FamilyId::C2,
        FamilyId::C4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::A1 => "A1",
            FamilyId::A2 => "A2",
            FamilyId::B1 => "B1",
            FamilyId::B2 => "B2",
            FamilyId::B4 => "B4",
            FamilyId::C1 => "C1",
            FamilyId::C2 => "C2",
            FamilyId::C4 => "C4",
        }
    }

    /// `p` for the prime-indexed families, `n` for the alternating ones.
    pub fn parameter(self) -> char {
        match self {
            FamilyId::B1 | FamilyId::B2 | FamilyId::C1 => 'n',
            _ => 'p',
        }
    }

    /// The socle case and number of simple factors the family realises.
    pub fn expected(self) -> (SocleCase, usize) {
        match self {
            FamilyId::A1 => (SocleCase::A, 1),
            FamilyId::A2 => (SocleCase::A, 2),
            FamilyId::B1 => (SocleCase::B, 1),
            FamilyId::B2 => (SocleCase::B, 2),
            FamilyId::B4 => (SocleCase::B, 4),
            FamilyId::C1 => (SocleCase::C, 2),
            FamilyId::C2 => (SocleCase::C, 4),
            FamilyId::C4 => (SocleCase::C, 8),
        }
    }

    pub fn tier(self) -> Tier {
        match self {
            FamilyId::B4 | FamilyId::C2 | FamilyId::C4 => Tier::Certificate,
            _ => Tier::Explicit,
        }
    }

    pub fn simple_group(self) -> &'static str {
        match self {
            FamilyId::A1 | FamilyId::A2 => "Z_p",
            FamilyId::B1 | FamilyId::B2 | FamilyId::C1 => "Alt(n)",
            _ => "PSL(2,p)",
        }
    }

    pub fn method(self) -> &'static str {
        match self.tier() {
            Tier::Explicit => "bi-Cayley",
            Tier::Certificate => "coset graph",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FamilyId::A1 => "BiCay(Z_p, S = {+-1, +-q}) with x_e -> (qx)_(1-e), p = 1 mod 4",
            FamilyId::A2 => "BiCay(Z_p^2, S = {+-(1,0), +-(0,1)}) with (x,y)_e -> (y,-x)_(1-e), p = 3 mod 4",
            FamilyId::B1 => "BiCay(T, S = {ab, ba}^+-) with conjugation by the involution a",
            FamilyId::B2 => "BiCay(T^2, S = {(a,b), (b,a)}^+-) with the coordinate swap",
            FamilyId::B4 => "coset graph of <Diag_phi(H x H), g>, H = T^4 : <h1, h2>",
            FamilyId::C1 => "BiCay(T^2, S = {(a,b), (b,a)}^+-) with an automorphism inverting a and b",
            FamilyId::C2 => "coset graph of <Diag_phi(H x H), g>, H = T^4 : <h1>",
            FamilyId::C4 => "coset graph of <Diag_phi(H x H), g>, H = T^8 : <h1, h2>",
        }
    }

    /// Parameters used when none are given.
    pub fn default_params(self) -> &'static [u64] {
        match self {
            FamilyId::A1 => &[5, 13],
            FamilyId::A2 => &[3, 7],
            FamilyId::B1 | FamilyId::B2 | FamilyId::C1 => &[5],
            _ => &[7],
        }
    }

    /// Rejects parameters outside the family, naming the requirement.
    pub fn check_params(self, param: u64) -> Result<(), Error> {
        let prime = zoo::is_prime(param);
        let fail = |need: &str| Err(Error::Inadmissible(format!("{} = {param}: {need}", self.parameter())));
        match self {
            FamilyId::A1 if !(prime && param % 4 == 1) => fail("p = 1 (mod 4) required"),
            FamilyId::A2 if !(prime && param % 4 == 3) => fail("p = 3 (mod 4) required"),
            FamilyId::B1 | FamilyId::B2 | FamilyId::C1 if param < 5 || param % 2 == 0 => fail("odd n >= 5 required"),
            FamilyId::B4 | FamilyId::C2 | FamilyId::C4 if !(prime && param >= 7) => fail("prime p >= 7 required"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

/// A bi-Cayley instance with `G` generated by right multiplications and the
/// two automorphism-induced permutations.
#[derive(Clone, Debug)]
pub struct ExplicitInstance {
    pub bicayley: BiCayley,
    pub n: PermGroup,
    pub s: Vec<Permutation>,
    pub pair: OrientedPair,
    /// `|N| * |<sigma, delta>|`.
    pub expected_order: u128,
    /// Facts checked while building, as `(name, holds, evidence)`.
    pub build_checks: Vec<(String, bool, String)>,
}

/// The data of a coset-graph instance: `(H, V, y, phi~)` and the group on
/// two copies of the points of `H`.
#[derive(Clone, Debug)]
pub struct CertificateInstance {
    pub data: WreathData,
    pub diag: DiagData,
}

#[derive(Clone, Debug)]
pub enum InstanceData {
    Explicit(ExplicitInstance),
    Certificate(CertificateInstance),
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: FamilyId,
    pub param: u64,
    pub data: InstanceData,
}

impl FamilyInstance {
    pub fn expected(&self) -> (SocleCase, usize) {
        self.family.expected()
    }
}

/// `(xs, s)` for every `x` and `s`.
fn products(xs: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    for x in xs {
        for y in xs {
            out.push(x * y);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn inverse_closed(s0: &[Permutation]) -> Vec<Permutation> {
    let mut s: Vec<Permutation> = s0.to_vec();
    s.extend(s0.iter().map(|x| x.inverse()));
    s
}

/// Conjugating permutations on the points of `N`, each inducing an
/// automorphism, together with whether it also swaps the two sides.
struct BiCayleyRecipe {
    n: PermGroup,
    s: Vec<Permutation>,
    automorphisms: Vec<(Permutation, bool)>,
    build_checks: Vec<(String, bool, String)>,
}

fn build_explicit(recipe: BiCayleyRecipe, budgets: &Budgets) -> Result<ExplicitInstance, Error> {
    let BiCayleyRecipe {
        n,
        s,
        automorphisms,
        mut build_checks,
    } = recipe;
    let s_sorted = {
        let mut v = s.clone();
        v.sort();
        v
    };
    let mut distinct = s_sorted.clone();
    distinct.dedup();
    if distinct.len() != 4 {
        return Err(Error::AssertionFailed(format!("|S| = {}, expected 4", distinct.len())));
    }
    for (c, _) in &automorphisms {
        if !n.is_normalized_by(&PermGroup::new(n.degree(), alloc::vec![c.clone()])?)? {
            return Err(Error::NotNormalizing);
        }
        let mut image: Vec<Permutation> = s.iter().map(|x| x.conjugate_unchecked(c)).collect();
        image.sort();
        if image != s_sorted {
            return Err(Error::AssertionFailed(String::from("the automorphism does not fix S")));
        }
    }
    let n_order = n.order();
    let s_group = PermGroup::new(n.degree(), s.clone())?.with_order_upper_bound(n_order);
    let s2_group = PermGroup::new(n.degree(), products(&s))?.with_order_upper_bound(n_order);
    let (o1, o2) = (s_group.order(), s2_group.order());
    build_checks.push((
        String::from("S and S^2 generate N"),
        o1 == n_order && o2 == n_order,
        format!("|<S>| = {o1}, |<S^2>| = {o2}, |N| = {n_order}"),
    ));

    let bicayley = build_bicayley(
        &BiCayleySpec {
            group: n.clone(),
            r: Vec::new(),
            l: Vec::new(),
            s: s.clone(),
        },
        budgets.vertices,
    )?;
    let mut gens = n
        .generators()
        .iter()
        .map(|x| bicayley.right_multiplication(x))
        .collect::<Result<Vec<_>, _>>()?;
    let mut top_gens = Vec::new();
    for (c, swap) in &automorphisms {
        gens.push(bicayley.automorphism_action(c, *swap)?);
        // The action of c on N together with the side bit.
        let mut images: Vec<Point> = c.images().to_vec();
        let d = c.degree() as Point;
        images.push(if *swap { d + 1 } else { d });
        images.push(if *swap { d } else { d + 1 });
        top_gens.push(Permutation::from_images(images)?);
    }
    let top_order = PermGroup::new(n.degree() + 2, top_gens)?.order();
    let expected_order = n_order * top_order;
    let group = PermGroup::new(bicayley.graph.vertex_count(), gens)?;
    let pair = OrientedPair::new(bicayley.graph.clone(), group)?;
    Ok(ExplicitInstance {
        bicayley,
        n,
        s,
        pair,
        expected_order,
        build_checks,
    })
}

/// The multiplication-by-`q` map `i -> qi` on `Z_p`, which conjugates the
/// translation by 1 to the translation by `q`.
fn scaling(p: u64, q: u64) -> Permutation {
    Permutation::from_images((0..p).map(|i| ((i * q) % p) as Point).collect()).expect("q is a unit")
}

fn recipe_a1(p: u64) -> Result<BiCayleyRecipe, Error> {
    let q = (1..p).find(|q| (q * q) % p == p - 1).ok_or_else(|| {
        Error::Inadmissible(format!("p = {p}: -1 is not a square"))
    })?;
    let n = zoo::cyclic_and_elementary(p, 1)?;
    let b = zoo::long_cycle(p as usize);
    let s = [1, p - 1, q, p - q].iter().map(|&k| b.pow(k)).collect();
    Ok(BiCayleyRecipe {
        n,
        s,
        automorphisms: alloc::vec![(scaling(p, q), true)],
        build_checks: alloc::vec![(String::from("q^2 = -1 (mod p)"), true, format!("q = {q}"))],
    })
}

fn recipe_a2(p: u64) -> Result<BiCayleyRecipe, Error> {
    let n = zoo::cyclic_and_elementary(p, 2)?;
    let m = p as usize;
    let point = |x: usize, y: usize| (x % m * m + y % m) as Point;
    // (x, y) -> (y, -x)
    let l = Permutation::from_images(
        (0..m * m)
            .map(|v| point(v % m, (m - v / m) % m))
            .collect(),
    )?;
    let e1 = n.generators()[0].clone();
    let e2 = n.generators()[1].clone();
    let s = alloc::vec![e1.clone(), e1.inverse(), e2.clone(), e2.inverse()];
    Ok(BiCayleyRecipe {
        n,
        s,
        automorphisms: alloc::vec![(l, true)],
        build_checks: Vec::new(),
    })
}

fn recipe_b1(n: usize) -> Result<BiCayleyRecipe, Error> {
    let pair = zoo::alt_with_pair(n, AltPair::Involution)?;
    let (a, b) = (&pair.a, &pair.b);
    let s0 = alloc::vec![a * b, b * a];
    let disjoint = s0.iter().all(|x| !s0.contains(&x.inverse()));
    if !disjoint {
        return Err(Error::AssertionFailed(String::from("S0 meets its inverse")));
    }
    Ok(BiCayleyRecipe {
        n: pair.group.clone(),
        s: inverse_closed(&s0),
        automorphisms: alloc::vec![(a.clone(), false), (a.clone(), true)],
        build_checks: alloc::vec![(
            String::from("S0 and S0^-1 are disjoint"),
            disjoint,
            String::from("ab, ba and their inverses are four elements"),
        )],
    })
}

/// `T x T` on two blocks of `n` points, the generators `(a, b)` and `(b, a)`,
/// and the block swap.
fn square_of_alt(n: usize) -> Result<(zoo::GeneratingPair, PermGroup, [Permutation; 2], Permutation), Error> {
    let pair = zoo::alt_with_pair(n, AltPair::OddOrders)?;
    let t_order = pair.group.order();
    let power = crate::direct_power_with_top(&pair.group, 2, &[])?.with_order_upper_bound(t_order * t_order);
    let id2 = Permutation::identity(2);
    let ab = crate::wreath_element(&[pair.a.clone(), pair.b.clone()], &id2)?;
    let ba = crate::wreath_element(&[pair.b.clone(), pair.a.clone()], &id2)?;
    let swap = crate::wreath_element(
        &[Permutation::identity(n), Permutation::identity(n)],
        &Permutation::from_images(alloc::vec![1, 0])?,
    )?;
    Ok((pair, power, [ab, ba], swap))
}

fn swap_check(pair: &zoo::GeneratingPair) -> Result<(String, bool, String), Error> {
    let evidence = match zoo::check_no_swap(pair)? {
        SwapCheck::DifferentOrders => "a and b have different orders",
        SwapCheck::NoConjugator => "no permutation conjugates (a, b) to (b, a)",
        SwapCheck::Unverified => "not decided at this degree",
    };
    let decided = evidence != "not decided at this degree";
    Ok((
        String::from("no automorphism swaps a and b"),
        decided,
        String::from(evidence),
    ))
}

fn recipe_b2(n: usize) -> Result<BiCayleyRecipe, Error> {
    let (pair, power, [ab, ba], swap) = square_of_alt(n)?;
    let check = swap_check(&pair)?;
    Ok(BiCayleyRecipe {
        n: power,
        s: inverse_closed(&[ab, ba]),
        automorphisms: alloc::vec![(swap.clone(), false), (swap, true)],
        build_checks: alloc::vec![check],
    })
}

fn recipe_c1(n: usize) -> Result<BiCayleyRecipe, Error> {
    let (pair, power, [ab, ba], swap) = square_of_alt(n)?;
    let check = swap_check(&pair)?;
    let theta = zoo::find_conjugator(&[
        (pair.a.clone(), pair.a.inverse()),
        (pair.b.clone(), pair.b.inverse()),
    ])
    .ok_or(Error::ThetaNotFound)?;
    let both = crate::wreath_element(&[theta.clone(), theta.clone()], &Permutation::identity(2))?;
    Ok(BiCayleyRecipe {
        n: power,
        s: inverse_closed(&[ab, ba]),
        automorphisms: alloc::vec![(both, false), (swap, true)],
        build_checks: alloc::vec![
            check,
            (
                String::from("theta inverts a and b"),
                true,
                format!("conjugation by {theta}"),
            ),
        ],
    })
}

/// Builds one instance. Parameters are checked first.
pub fn build_family(family: FamilyId, param: u64, budgets: &Budgets) -> Result<FamilyInstance, Error> {
    family.check_params(param)?;
    let n = param as usize;
    let data = match family {
        FamilyId::A1 => InstanceData::Explicit(build_explicit(recipe_a1(param)?, budgets)?),
        FamilyId::A2 => InstanceData::Explicit(build_explicit(recipe_a2(param)?, budgets)?),
        FamilyId::B1 => InstanceData::Explicit(build_explicit(recipe_b1(n)?, budgets)?),
        FamilyId::B2 => InstanceData::Explicit(build_explicit(recipe_b2(n)?, budgets)?),
        FamilyId::C1 => InstanceData::Explicit(build_explicit(recipe_c1(n)?, budgets)?),
        FamilyId::B4 | FamilyId::C2 | FamilyId::C4 => {
            let data = match family {
                FamilyId::B4 => zoo::b4_data(param)?,
                FamilyId::C2 => zoo::c2_data(param)?,
                _ => zoo::c4_data(param)?,
            };
            let diag = diag_subgroup(&data.h, &data.phi, &data.y, &data.v)?;
            InstanceData::Certificate(CertificateInstance { data, diag })
        }
    };
    Ok(FamilyInstance { family, param, data })
}

fn params_of(inst: &FamilyInstance) -> Vec<(String, u64)> {
    alloc::vec![(inst.family.parameter().to_string(), inst.param)]
}

/// Runs the fixed check list of the instance's tier.
pub fn verify_instance(inst: &FamilyInstance, budgets: &Budgets) -> VerificationReport {
    let mut report = VerificationReport::new(inst.family.name(), params_of(inst), inst.family.tier());
    match &inst.data {
        InstanceData::Explicit(e) => verify_explicit(inst.family, e, budgets, &mut report),
        InstanceData::Certificate(c) => verify_certificate(inst.family, c, budgets, &mut report),
    }
    report
}

fn record<T>(
    report: &mut VerificationReport,
    name: &str,
    claim: &str,
    result: Result<T, Error>,
    judge: impl FnOnce(&T) -> (bool, String),
) -> Option<T> {
    match result {
        Ok(v) => {
            let (ok, evidence) = judge(&v);
            report.push(name, Status::from_bool(ok), evidence, claim);
            Some(v)
        }
        Err(e) => {
            report.push(name, Status::Fail, format!("error: {e}"), claim);
            None
        }
    }
}

fn verify_explicit(family: FamilyId, e: &ExplicitInstance, budgets: &Budgets, report: &mut VerificationReport) {
    for (name, ok, evidence) in &e.build_checks {
        report.push(name, Status::from_bool(*ok), evidence.clone(), "stated property of the generating data");
    }
    let graph = &e.pair.graph;
    report.push(
        "four_valent_connected",
        Status::from_bool(graph.regular_degree() == Some(4) && graph.is_connected()),
        format!(
            "{} vertices, {} edges, connected: {}",
            graph.vertex_count(),
            graph.edge_count(),
            graph.is_connected()
        ),
        "the graph is connected and 4-valent",
    );
    let order = e.pair.group.order();
    report.push(
        "group_order",
        Status::from_bool(order == e.expected_order),
        format!("|G| = {order}, |N| * |<sigma, delta>| = {}", e.expected_order),
        "G is N extended by the automorphisms",
    );
    let oriented = record(
        report,
        "oriented",
        "G is transitive on vertices and edges but not arcs",
        check_oriented(&e.pair),
        |r| {
            let shape: Vec<usize> = r.stabilizer_orbits.iter().map(|o| o.len()).collect();
            (
                r.is_in_og4 && r.arc_orbit_count == 2 && shape == [2, 2],
                format!(
                    "arc orbits {}, vertex-transitive {}, edge-transitive {}, stabilizer orbits on the neighbourhood {:?}",
                    r.arc_orbit_count, r.vertex_transitive, r.edge_transitive, shape
                ),
            )
        },
    );
    let pair = match oriented.and_then(|r| r.orientation) {
        Some(o) => e.pair.clone().with_orientation(o),
        None => e.pair.clone(),
    };
    record(
        report,
        "s_arcs",
        "G acts regularly on oriented s-arcs and the arc stabilizers have order 2^i",
        s_arc_report(&pair),
        |r| {
            (
                r.regular && r.stabilizer_chain_ok,
                format!(
                    "s = {}, oriented arc counts {:?}, |G| = {}, stabilizer orders {:?}",
                    r.s, r.arc_counts, r.group_order, r.stabilizer_orders
                ),
            )
        },
    );
    record(
        report,
        "normal_quotients",
        "every normal quotient is K1 or K2, and some is K2",
        basic_type(&pair, budgets.order_bound),
        |r| {
            let listed: Vec<String> = r
                .quotients
                .iter()
                .map(|q| format!("order {} -> {:?}", q.order, q.class))
                .collect();
            (r.kind == BasicType::Biquasiprimitive, format!("{:?}: {}", r.kind, listed.join(", ")))
        },
    );
    if family.expected().0 != SocleCase::A {
        let n_gens: Vec<Permutation> = e.pair.group.generators()[..e.n.generators().len()].to_vec();
        record(
            report,
            "socle_centralizer",
            "N is nonabelian and the unique minimal normal subgroup, so C_G(N) = 1",
            centralizer_order(&e.pair.group, &n_gens, budgets.order_bound),
            |&o| (o == 1, format!("|C_G(N)| = {o}")),
        );
    }
    record(
        report,
        "g_plus_faithful",
        "G+ acts faithfully on each part",
        g_plus_faithful(&pair),
        |ok| (*ok, format!("faithful: {ok}")),
    );
    let (case, k) = family.expected();
    record(
        report,
        "socle_case",
        "soc(G) = T^k in the stated case",
        classify_socle_case(&pair, budgets.order_bound),
        |r| {
            (
                r.case == case && r.k == k,
                format!(
                    "case ({}) with k = {}, |soc(G)| = {}, T {}, expected ({}) with k = {k}",
                    r.case.letter(),
                    r.k,
                    r.socle_order,
                    r.t_description,
                    case.letter()
                ),
            )
        },
    );
}

fn verify_certificate(family: FamilyId, c: &CertificateInstance, budgets: &Budgets, report: &mut VerificationReport) {
    let data = &c.data;
    let expected_tuples: &[&str] = if data.h2.is_some() { &["y", "h2", "y1", "y2"] } else { &["y", "y1"] };
    report.push(
        "transcription",
        Status::from_bool(data.matched_tuples == expected_tuples),
        format!("recomputed and matched: {}", data.matched_tuples.join(", ")),
        "the printed tuples equal their definitions",
    );
    let cond2 = record(
        report,
        "condition2",
        "V is core-free in H, y is not in VV^phi, |V : V cap V^phi| = 2 and <V, y> = H",
        check_condition2(&data.h, &data.v, &data.y, &data.phi),
        |r| {
            (
                r.holds(),
                format!(
                    "core-free {}, y not in VV^phi {}, |V| = {}, |V cap V^phi| = {}, |<V, y>| = {}",
                    r.core_free,
                    r.y_not_in_product,
                    r.v_order,
                    r.intersection.len(),
                    r.generated_order
                ),
            )
        },
    );
    if let Some(r) = &cond2 {
        match family {
            FamilyId::B4 => {
                let h2 = data.h2.as_ref().expect("two generators of V");
                let ok = r.intersection.len() == 2 && r.intersection.contains(h2);
                report.push(
                    "v_cap_v_phi",
                    Status::from_bool(ok),
                    format!("V cap V^phi has {} elements including h2: {ok}", r.intersection.len()),
                    "V cap V^phi = <h2>",
                );
            }
            FamilyId::C2 => report.push(
                "v_order",
                Status::from_bool(r.v_order == 2),
                format!("|V| = {}", r.v_order),
                "V is cyclic of order 2",
            ),
            _ => {}
        }
    }
    let d = data.block_degree();
    let t_order = data.t_order();
    let h_order = data.h.order();
    let expected_h = t_order.pow(data.k as u32) * data.v.order();
    report.push(
        "h_order",
        Status::from_bool(h_order == expected_h),
        format!("|H| = {h_order}, |T|^k |V| = {expected_h}"),
        "H = T^k : V",
    );
    let mut ys = alloc::vec![data.y.clone()];
    ys.extend(data.y_conjugates.iter().cloned());
    let names = if ys.len() == 3 { "<y, y1, y2>" } else { "<y, y1>" };
    let sub = PermGroup::new(data.h.degree(), ys)
        .map(|g| g.with_order_upper_bound(t_order.pow(data.k as u32)));
    record(
        report,
        "subdirect_full",
        "T^k is generated by y and its conjugates under V",
        sub.and_then(|g| subdirect_full(&g, data.k, d, t_order)),
        |r| {
            let pair_orders: Vec<u128> = r.pairwise.iter().map(|p| p.1).collect();
            (
                r.full,
                format!("{names}: factor orders {:?}, pairwise orders {:?}", r.single, pair_orders),
            )
        },
    );
    let cert = record(
        report,
        "certificate",
        "T is simple, H = T^k V, and H and phi~ permute the factors as required",
        biquasiprimitive_certificate(data, budgets.order_bound),
        |r| {
            (
                r.holds(),
                format!(
                    "T simple {}, H-orbits on factors {:?}, swapped by phi~ {}, <H, phi~> transitive {}",
                    r.t_simple, r.block_orbits, r.orbits_swapped, r.transitive_with_phi
                ),
            )
        },
    );
    let g_order = c.diag.group.order();
    report.push(
        "diag_group",
        Status::from_bool(g_order == 2 * h_order && c.diag.g_plus.order() == h_order),
        format!("|G| = {g_order} on {} points", c.diag.group.degree()),
        "G+ = Diag_phi(H x H) has index 2 in G",
    );
    let spec = CosetGraphSpec {
        group: c.diag.group.clone(),
        subgroup: c.diag.s.clone(),
        g: c.diag.g.clone(),
        index_bound: budgets.coset_index,
    };
    record(
        report,
        "condition1",
        "S is core-free in G, g^-1 is not in SgS, |S : S cap S^g| = 2 and <S, g> = G",
        check_condition1(&spec),
        |r| {
            (
                r.holds(),
                format!(
                    "core-free {}, g^-1 not in SgS {}, index two {}, generates {}",
                    r.core_free, r.inverse_not_in_double_coset, r.index_two, r.generates
                ),
            )
        },
    );
    record(
        report,
        "local_neighbourhood",
        "the coset S has four neighbours and g reverses no edge at it",
        local_coset_neighbourhood(&spec, 1),
        |r| {
            (
                r.root_degree == 4 && !r.inverse_in_double_coset,
                format!(
                    "root degree {}, g^-1 in SgS: {}",
                    r.root_degree, r.inverse_in_double_coset
                ),
            )
        },
    );
    let index = g_order / c.diag.s.order();
    let built = build_coset_graph(&spec);
    let (status, evidence) = match built {
        Err(Error::BudgetExceeded { needed, budget, .. }) => (
            Status::SkippedWithCertificate,
            format!("{needed} cosets exceed the bound {budget}"),
        ),
        Err(e) => (Status::Fail, format!("error: {e}")),
        Ok(g) => (
            Status::from_bool(g.graph.regular_degree() == Some(4) && g.graph.is_connected()),
            format!("{} vertices built", g.graph.vertex_count()),
        ),
    };
    report.push(
        "coset_graph",
        status,
        format!("index {index}; {evidence}"),
        "the coset graph is connected and 4-valent",
    );
    let (case, k) = family.expected();
    if let Some(r) = cert {
        let ok = r.case == Some(case) && r.k == k;
        let found = r.case.map(|c| c.letter()).unwrap_or('?');
        report.push(
            "socle_case",
            Status::from_bool(ok),
            format!("case ({found}) with k = {}, expected ({}) with k = {k}", r.k, case.letter()),
            "soc(G) = T^k in the stated case",
        );
    }
}

/// One row of the sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub family: FamilyId,
    pub param: u64,
    pub result: Result<VerificationReport, Error>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        matches!(&self.result, Ok(r) if r.passed())
    }
}

/// All families at their default parameters.
pub fn default_rows() -> Vec<(FamilyId, u64)> {
    FamilyId::ALL
        .iter()
        .flat_map(|&f| f.default_params().iter().map(move |&p| (f, p)))
        .collect()
}

pub fn run_row(family: FamilyId, param: u64, budgets: &Budgets) -> SweepRow {
    let result = build_family(family, param, budgets).map(|inst| verify_instance(&inst, budgets));
    SweepRow { family, param, result }
}

/// Builds and verifies every row in order. Failures are recorded, not raised.
pub fn table2_sweep(rows: &[(FamilyId, u64)], budgets: &Budgets) -> Vec<SweepRow> {
    rows.iter().map(|&(f, p)| run_row(f, p, budgets)).collect()
}
