//! Verification of a user-supplied graph and group.

use og4_core::constructions::Budgets;
use og4_core::verify::{
    basic_type, check_oriented, classify_socle_case, g_plus_faithful, s_arc_report, BasicType, OrientedPair, Status,
    Tier, VerificationReport,
};

use crate::json::PairJson;
use crate::Error;

/// Reads the pair. Anything that does not describe a group of graph
/// automorphisms is an input error.
pub fn load_pair(text: &str) -> Result<OrientedPair, Error> {
    let doc: PairJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.schema != crate::json::SCHEMA {
        return Err(Error::Format(format!("unsupported schema {}", doc.schema)));
    }
    let graph = doc.graph.to_graph()?;
    let group = doc.group.to_group()?;
    if group.degree() != graph.vertex_count() {
        return Err(Error::Format(format!(
            "group of degree {} on a graph with {} vertices",
            group.degree(),
            graph.vertex_count()
        )));
    }
    Ok(OrientedPair::new(graph, group)?)
}

/// The explicit-tier checks that need no knowledge of a family.
pub fn verify_pair(pair: &OrientedPair, budgets: &Budgets) -> VerificationReport {
    let mut report = VerificationReport::new("input", Vec::new(), Tier::Explicit);
    let g = &pair.graph;
    let ok = g.regular_degree() == Some(4) && g.is_connected();
    report.push(
        "four_valent_connected",
        Status::from_bool(ok),
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()),
        "the graph is connected and 4-valent",
    );
    if !ok {
        return report;
    }
    let mut pair = pair.clone();
    match check_oriented(&pair) {
        Ok(r) => {
            let shape: Vec<usize> = r.stabilizer_orbits.iter().map(Vec::len).collect();
            report.push(
                "oriented",
                Status::from_bool(r.is_in_og4 && shape == [2, 2]),
                format!("arc orbits {}, stabilizer orbits {shape:?}", r.arc_orbit_count),
                "G is transitive on vertices and edges but not arcs",
            );
            match r.orientation {
                Some(o) => pair = pair.with_orientation(o),
                None => return report,
            }
        }
        Err(e) => {
            report.push("oriented", Status::Fail, format!("error: {e}"), "G is transitive on vertices and edges but not arcs");
            return report;
        }
    }
    let (status, evidence) = match s_arc_report(&pair) {
        Ok(r) => (
            Status::from_bool(r.regular && r.stabilizer_chain_ok),
            format!("s = {}, counts {:?}, |G| = {}", r.s, r.arc_counts, r.group_order),
        ),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    report.push("s_arcs", status, evidence, "G acts regularly on oriented s-arcs");
    let (status, evidence) = match basic_type(&pair, budgets.order_bound) {
        Ok(r) => (Status::from_bool(r.kind == BasicType::Biquasiprimitive), format!("{:?}", r.kind)),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    report.push("normal_quotients", status, evidence, "every normal quotient is K1 or K2, and some is K2");
    let (status, evidence) = match g_plus_faithful(&pair) {
        Ok(ok) => (Status::from_bool(ok), format!("faithful: {ok}")),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    report.push("g_plus_faithful", status, evidence, "G+ acts faithfully on each part");
    let (status, evidence) = match classify_socle_case(&pair, budgets.order_bound) {
        Ok(r) => (
            Status::Pass,
            format!("case ({}) with k = {}, |soc(G)| = {}, T {}", r.case.letter(), r.k, r.socle_order, r.t_description),
        ),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    report.push("socle_case", status, evidence, "soc(G) = T^k");
    report
}
