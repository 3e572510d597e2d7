//! Checks on G-oriented pairs and on the data of the coset-graph families.

mod coset;
mod normal;
mod oriented;

use alloc::string::String;
use alloc::vec::Vec;

pub use coset::{
    biquasiprimitive_certificate, check_condition1, check_condition2, diag_subgroup, find_neighbour_instance,
    point_coset_instance, subdirect_full, verify_neighbour_sets, Certificate, Condition1, Condition2, DiagData,
    NeighbourSets, PointCosetInstance, SubdirectReport,
};
pub use normal::{
    basic_type, centralizer_order, classify_quotient, classify_socle_case, g_plus_faithful, minimal_normal_subgroups, normal_quotient,
    BasicType, BasicTypeReport, NormalQuotient, QuotientClass, QuotientSummary, SocleCase, SocleReport,
    DEFAULT_ORDER_BOUND,
};
pub use oriented::{arc_orbits, check_oriented, s_arc_report, OrientedPair, OrientedReport, Orientation, SArcReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not computed directly; covered by a checked certificate.
    SkippedWithCertificate,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedWithCertificate => "skipped-with-certificate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub evidence: String,
    /// The mathematical statement being checked.
    pub claim: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Graph built and every property computed on it.
    Explicit,
    /// Graph too large; hypotheses of the structural argument checked instead.
    Certificate,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Explicit => "explicit",
            Tier::Certificate => "certificate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub family: String,
    pub params: Vec<(String, u64)>,
    pub tier: Tier,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(family: impl Into<String>, params: Vec<(String, u64)>, tier: Tier) -> Self {
        VerificationReport {
            family: family.into(),
            params,
            tier,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, status: Status, evidence: impl Into<String>, claim: &str) {
        self.checks.push(Check {
            name: name.into(),
            status,
            evidence: evidence.into(),
            claim: claim.into(),
        });
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
