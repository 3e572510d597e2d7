use og4_core::constructions::{
    build_family, table2_sweep, verify_instance, Budgets, FamilyId, InstanceData,
};
use og4_core::verify::{SocleCase, Status, Tier};
use og4_core::Error;

#[test]
fn explicit_sizes() {
    let b = Budgets::default();
    for (family, param, vertices, order) in [(FamilyId::A1, 5, 10, 20), (FamilyId::A2, 3, 18, 36)] {
        let inst = build_family(family, param, &b).unwrap();
        let InstanceData::Explicit(e) = &inst.data else { panic!("{family} is explicit") };
        assert_eq!(e.pair.graph.vertex_count(), vertices);
        assert_eq!(e.pair.group.order(), order);
        assert!(e.build_checks.iter().all(|(_, ok, _)| *ok));
    }
}

#[test]
fn b1_connection_set_has_four_elements() {
    let inst = build_family(FamilyId::B1, 5, &Budgets::default()).unwrap();
    let InstanceData::Explicit(e) = &inst.data else { panic!() };
    assert_eq!(e.s.len(), 4);
    assert_eq!(e.pair.graph.vertex_count(), 120);
    assert!(e.build_checks.iter().all(|(_, ok, _)| *ok));
}

#[test]
fn c4_bundle_order() {
    let inst = build_family(FamilyId::C4, 7, &Budgets::default()).unwrap();
    let InstanceData::Certificate(c) = &inst.data else { panic!() };
    assert_eq!(c.data.h.order(), 168u128.pow(8) * 4);
    assert_eq!(inst.expected(), (SocleCase::C, 8));
}

#[test]
fn inadmissible_parameters_name_the_congruence() {
    let b = Budgets::default();
    let Err(Error::Inadmissible(msg)) = build_family(FamilyId::A1, 7, &b) else { panic!() };
    assert!(msg.contains("p = 1 (mod 4)"), "{msg}");
    let rows = table2_sweep(&[(FamilyId::A1, 7), (FamilyId::A2, 3)], &b);
    assert!(matches!(rows[0].result, Err(Error::Inadmissible(_))));
    assert!(rows[1].passed());
}

#[test]
fn vertex_budget_is_enforced() {
    let b = Budgets {
        vertices: 100,
        ..Budgets::default()
    };
    assert!(matches!(
        build_family(FamilyId::B1, 5, &b),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn certificate_reports_pass_and_are_deterministic() {
    let b = Budgets::default();
    for family in [FamilyId::B4, FamilyId::C2, FamilyId::C4] {
        let inst = build_family(family, 7, &b).unwrap();
        let report = verify_instance(&inst, &b);
        assert_eq!(report.tier, Tier::Certificate);
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.check("coset_graph").unwrap().status, Status::SkippedWithCertificate);
        assert_eq!(report, verify_instance(&inst, &b));
    }
}

#[test]
fn explicit_abelian_reports_pass() {
    let b = Budgets::default();
    for (family, param) in [(FamilyId::A1, 13), (FamilyId::A2, 7)] {
        let report = verify_instance(&build_family(family, param, &b).unwrap(), &b);
        assert!(report.passed(), "{report:#?}");
    }
}
