//! One line per acceptance criterion. Exits nonzero on any failure that is
//! not the documented gap in the B1, B2 and C1 rows.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use og4::sweep::{self, Outcome};
use og4_core::constructions::{Budgets, FamilyId, SweepRow};
use og4_core::verify::{
    check_condition2, find_neighbour_instance, subdirect_full, verify_neighbour_sets, Status,
};
use og4_core::zoo::{self, WreathData};
use og4_core::{wreath_element, PermGroup, Permutation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Rows whose group has a nontrivial centralizer of the socle, so that the
/// pair is a normal cover and not basic. See the README.
const KNOWN_GAP: [FamilyId; 3] = [FamilyId::B1, FamilyId::B2, FamilyId::C1];

struct Line {
    number: usize,
    pass: bool,
    /// Failure confined to the known gap.
    explained: bool,
    detail: String,
}

fn rows(outcomes: &[Outcome]) -> Vec<&SweepRow> {
    outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Ran(r) => Some(r),
            Outcome::Invalid { .. } => None,
        })
        .collect()
}

fn check_passes(row: &SweepRow, name: &str) -> bool {
    matches!(&row.result, Ok(r) if r.check(name).is_some_and(|c| c.status == Status::Pass))
}

fn label(row: &SweepRow) -> String {
    format!("{}({}={})", row.family, row.family.parameter(), row.param)
}

/// Failing rows, and whether each of them is a known-gap row whose socle
/// centralizer check shows the central subgroup.
fn explain(failing: &[&SweepRow]) -> bool {
    failing
        .iter()
        .all(|r| KNOWN_GAP.contains(&r.family) && !check_passes(r, "socle_centralizer"))
}

fn criterion_from_rows(number: usize, all: &[&SweepRow], pred: impl Fn(&SweepRow) -> bool, what: &str) -> Line {
    let failing: Vec<&SweepRow> = all.iter().copied().filter(|r| !pred(r)).collect();
    let names: Vec<String> = failing.iter().map(|r| label(r)).collect();
    Line {
        number,
        pass: failing.is_empty(),
        explained: explain(&failing),
        detail: if failing.is_empty() {
            format!("{what} on {} rows", all.len())
        } else {
            format!("{what} fails on {}", names.join(", "))
        },
    }
}

fn criterion1(all: &[&SweepRow], elapsed: Duration) -> Line {
    let mut line = criterion_from_rows(
        1,
        all,
        |r| r.passed() && check_passes(r, "socle_case"),
        "every check and the expected (case, k)",
    );
    let families: HashSet<FamilyId> = all.iter().map(|r| r.family).collect();
    if families.len() != 8 || elapsed > Duration::from_secs(120) {
        line.pass = false;
        line.explained = false;
    }
    line.detail = format!("{}; {} families in {:.1?}", line.detail, families.len(), elapsed);
    line
}

fn data(family: FamilyId) -> WreathData {
    match family {
        FamilyId::B4 => zoo::b4_data(7),
        FamilyId::C2 => zoo::c2_data(7),
        _ => zoo::c4_data(7),
    }
    .expect("p = 7 data")
}

fn criterion5() -> Line {
    let mut notes = Vec::new();
    let mut pass = true;
    for family in [FamilyId::B4, FamilyId::C2, FamilyId::C4] {
        let d = data(family);
        let c = check_condition2(&d.h, &d.v, &d.y, &d.phi).expect("phi~ normalizes H");
        let expected_h = 168u128.pow(d.k as u32) * d.v.order();
        let mut ok = c.core_free && c.y_not_in_product && c.index_two && c.generates;
        ok &= d.h.order() == expected_h && c.generated_order == expected_h;
        match family {
            FamilyId::B4 => {
                let h2 = d.h2.clone().expect("B4 has h2");
                let meet: HashSet<Permutation> = c.intersection.iter().cloned().collect();
                ok &= meet == HashSet::from([h2.clone(), Permutation::identity(h2.degree())]);
            }
            FamilyId::C2 => ok &= c.v_order == 2,
            _ => {}
        }
        pass &= ok;
        notes.push(format!("{family}: |H| = 168^{} * {}", d.k, d.v.order()));
    }
    Line {
        number: 5,
        pass,
        explained: false,
        detail: notes.join("; "),
    }
}

/// Size of the group generated by `gens`, by breadth-first closure on
/// image lists.
fn closure_order(gens: &[Vec<u32>], degree: usize) -> usize {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g[i as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn criterion6() -> Line {
    let mut pass = true;
    let mut checked = 0;
    for family in [FamilyId::B4, FamilyId::C2, FamilyId::C4] {
        let d = data(family);
        let deg = d.block_degree();
        let mut gens = vec![d.y.clone()];
        gens.extend(d.y_conjugates.iter().cloned());
        let sub = PermGroup::new(d.k * deg, gens.clone()).unwrap();
        let r = subdirect_full(&sub, d.k, deg, 168).unwrap();
        pass &= r.full;
        for &((i, j), order) in &r.pairwise {
            let restricted: Vec<Vec<u32>> = gens
                .iter()
                .map(|g| g.restrict_to_ranges(&[(i * deg, deg), (j * deg, deg)]).unwrap().images().to_vec())
                .collect();
            pass &= order == 28224 && closure_order(&restricted, 2 * deg) == 28224;
            checked += 1;
        }
    }
    Line {
        number: 6,
        pass,
        explained: false,
        detail: format!("{checked} pairwise projections of order 28224 by both methods"),
    }
}

fn tuple(pair: &zoo::GeneratingPair, words: &[&str], top: &str) -> Permutation {
    let coords: Vec<Permutation> = words.iter().map(|w| pair.word(w).unwrap()).collect();
    let top = Permutation::parse_cycles(words.len(), top).unwrap();
    wreath_element(&coords, &top).unwrap()
}

fn criterion7() -> Line {
    type Printed = (FamilyId, &'static [&'static str], Option<(&'static [&'static str], &'static str)>);
    let printed: [Printed; 3] = [
        (
            FamilyId::B4,
            &["bab", "baba", "ab^2", "ab^2a"],
            Some((&["b^-1aba", "ab^-1ab", "b^-1aba", "ab^-1ab"], "(0 3)(1 2)")),
        ),
        (FamilyId::C2, &["b^2a", "ab^2a", "bab", "b^2"], None),
        (
            FamilyId::C4,
            &["1", "a", "ab^2a", "ab^2", "1", "ababa", "b^2", "ab^2aba"],
            Some((
                &["b^2", "ab^2a", "aba", "b", "b^2aba", "ab^2ab", "b^2aba", "ab^2ab"],
                "(0 3)(1 2)(4 7)(5 6)",
            )),
        ),
    ];
    let mut pass = true;
    let mut matched = Vec::new();
    for (family, y_words, h2) in printed {
        let d = data(family);
        let y = tuple(&d.t, y_words, "()");
        pass &= &d.phi * &d.phi == y && d.y == y;
        matched.push(format!("{family} y"));
        if let Some((words, top)) = h2 {
            let h2 = tuple(&d.t, words, top);
            pass &= d.h1.conjugate(&d.phi).unwrap() == h2;
            matched.push(format!("{family} h2"));
        }
    }
    Line {
        number: 7,
        pass,
        explained: false,
        detail: format!("recomputed and matched: {}", matched.join(", ")),
    }
}

fn engine_groups() -> Vec<(&'static str, PermGroup)> {
    let perm = |n: usize, s: &str| Permutation::parse_cycles(n, s).unwrap();
    let group = |n: usize, gens: &[&str]| PermGroup::new(n, gens.iter().map(|s| perm(n, s)).collect()).unwrap();
    let psl = |p: u64| zoo::psl2_on_projective_line(p).unwrap().0;
    let d4 = zoo::dihedral(4);
    let s3 = zoo::symmetric(3);
    let z3 = zoo::cyclic(3);
    let swap = perm(2, "(0 1)");
    vec![
        ("C7", zoo::cyclic(7)),
        ("C12", zoo::cyclic(12)),
        ("D5", zoo::dihedral(5)),
        ("D8", zoo::dihedral(8)),
        ("D12", zoo::dihedral(12)),
        ("Alt(3)", zoo::alternating(3)),
        ("Alt(4)", zoo::alternating(4)),
        ("Alt(5)", zoo::alternating(5)),
        ("Alt(6)", zoo::alternating(6)),
        ("Sym(3)", zoo::symmetric(3)),
        ("Sym(4)", zoo::symmetric(4)),
        ("Sym(5)", zoo::symmetric(5)),
        ("Sym(6)", zoo::symmetric(6)),
        ("PSL(2,5)", psl(5)),
        ("PSL(2,7)", psl(7)),
        ("PSL(2,11)", psl(11)),
        ("PSL(2,13)", psl(13)),
        ("Z3^2", zoo::cyclic_and_elementary(3, 2).unwrap()),
        ("AGL(1,5)", group(5, &["(0 1 2 3 4)", "(1 2 4 3)"])),
        ("AGL(1,7)", group(7, &["(0 1 2 3 4 5 6)", "(1 3 2 6 4 5)"])),
        ("Z7:Z3", group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"])),
        ("Sym(3) x Sym(3)", group(6, &["(0 1)", "(0 1 2)", "(3 4)", "(3 4 5)"])),
        ("Sym(3) wr Sym(2)", og4_core::direct_power_with_top(&s3, 2, &[swap.clone()]).unwrap()),
        ("Z3 wr Z2", og4_core::direct_power_with_top(&z3, 2, &[swap.clone()]).unwrap()),
        ("D4 wr Z2", og4_core::direct_power_with_top(&d4, 2, &[swap]).unwrap()),
    ]
}

fn criterion8() -> Line {
    let mut rng = StdRng::seed_from_u64(0x0064_0004);
    let mut pass = true;
    let mut bad = Vec::new();
    let groups = engine_groups();
    for (name, g) in &groups {
        let n = g.degree();
        let gens: Vec<Vec<u32>> = g.generators().iter().map(|x| x.images().to_vec()).collect();
        let mut members = HashSet::new();
        let mut queue = vec![(0..n as u32).collect::<Vec<u32>>()];
        members.insert(queue[0].clone());
        while let Some(x) = queue.pop() {
            for s in &gens {
                let y: Vec<u32> = x.iter().map(|&i| s[i as usize]).collect();
                if members.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let mut ok = members.len() as u128 == g.order() && members.len() <= 5000;
        for _ in 0..200 {
            let len = rng.gen_range(1..=20);
            let mut w = Permutation::identity(n);
            for _ in 0..len {
                let s = g.generators().choose(&mut rng).unwrap();
                w = if rng.gen_bool(0.5) { &w * s } else { &w * &s.inverse() };
            }
            ok &= g.contains(&w).unwrap() && members.contains(w.images());
            let mut images: Vec<u32> = (0..n as u32).collect();
            images.shuffle(&mut rng);
            let x = Permutation::from_images(images).unwrap();
            ok &= g.contains(&x).unwrap() == members.contains(x.images());
        }
        if !ok {
            bad.push(*name);
        }
        pass &= ok;
    }
    Line {
        number: 8,
        pass,
        explained: false,
        detail: if bad.is_empty() {
            format!("{} groups: orders equal closure counts, 200 words and 200 random permutations each", groups.len())
        } else {
            format!("disagreement on {}", bad.join(", "))
        },
    }
}

fn criterion9() -> Line {
    let (pass, detail) = match find_neighbour_instance(7) {
        Ok(Some(inst)) => match verify_neighbour_sets(&inst, None, false) {
            Ok(r) => (
                r.holds() && r.part_a && r.part_b,
                format!(
                    "H of degree {} and order {}, {} vertices; in/out sets of alpha and gamma match",
                    inst.h.degree(),
                    inst.h.order(),
                    inst.pair.graph.vertex_count()
                ),
            ),
            Err(e) => (false, format!("error: {e}")),
        },
        Ok(None) => (false, "no instance found".into()),
        Err(e) => (false, format!("error: {e}")),
    };
    Line {
        number: 9,
        pass,
        explained: false,
        detail,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let outcomes = sweep::run(&sweep::default_plan(), &Budgets::default(), jobs);
    let elapsed = start.elapsed();
    let all = rows(&outcomes);
    let explicit: Vec<&SweepRow> = all
        .iter()
        .copied()
        .filter(|r| r.family.tier() == og4_core::verify::Tier::Explicit)
        .collect();
    let lines = vec![
        criterion1(&all, elapsed),
        criterion_from_rows(2, &explicit, |r| check_passes(r, "oriented"), "two arc orbits, 2+2 stabilizer orbits"),
        criterion_from_rows(3, &explicit, |r| check_passes(r, "s_arcs"), "oriented s-arc count = |G|, chain 2^i"),
        criterion_from_rows(4, &explicit, |r| check_passes(r, "normal_quotients"), "all normal quotients K1 or K2"),
        criterion5(),
        criterion6(),
        criterion7(),
        criterion8(),
        criterion9(),
    ];
    let mut unexplained = 0;
    for l in &lines {
        let verdict = match (l.pass, l.explained) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap: central involutions in B1, B2, C1)",
            (false, false) => {
                unexplained += 1;
                "FAIL"
            }
        };
        println!("criterion {}: {verdict}: {}", l.number, l.detail);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/{} criteria pass", lines.len());
    if unexplained == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
