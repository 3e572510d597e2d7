//! JSON documents: permutations, groups, graphs, reports and bundles.
//! Every top-level document carries `"schema": 1`.

use std::collections::BTreeMap;

use og4_core::constructions::{CertificateInstance, FamilyId, SweepRow};
use og4_core::graph::Graph;
use og4_core::verify::VerificationReport;
use og4_core::{PermGroup, Permutation};
use serde::{Deserialize, Serialize};

use crate::Error;

pub const SCHEMA: u32 = 1;

/// A permutation as an image list or in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermJson {
    Images(Vec<u32>),
    Cycles(String),
}

impl PermJson {
    pub fn images(x: &Permutation) -> Self {
        PermJson::Images(x.images().to_vec())
    }

    pub fn cycles(x: &Permutation) -> Self {
        PermJson::Cycles(x.to_string())
    }

    pub fn to_perm(&self, degree: usize) -> Result<Permutation, Error> {
        let x = match self {
            PermJson::Images(images) => Permutation::from_images(images.clone())?,
            PermJson::Cycles(text) => Permutation::parse_cycles(degree, text)?,
        };
        if x.degree() != degree {
            return Err(Error::Format(format!(
                "permutation of degree {} in a group of degree {degree}",
                x.degree()
            )));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<PermJson>,
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(PermJson::images).collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup, Error> {
        let gens = self
            .generators
            .iter()
            .map(|x| x.to_perm(self.degree))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::new(self.degree, gens)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[u32; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, Error> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Ok(Graph::from_edges(self.vertices, &edges)?)
    }
}

/// Input of `og4 verify --input`: a graph and a group acting on its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub schema: u32,
    pub graph: GraphJson,
    pub group: GroupJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub evidence: String,
    pub claim: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub construction: String,
    pub params: BTreeMap<String, u64>,
    pub tier: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl ReportJson {
    pub fn from_report(r: &VerificationReport) -> Self {
        ReportJson {
            schema: SCHEMA,
            construction: r.family.clone(),
            params: r.params.iter().cloned().collect(),
            tier: r.tier.as_str().into(),
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    status: c.status.as_str().into(),
                    evidence: c.evidence.clone(),
                    claim: c.claim.clone(),
                })
                .collect(),
        }
    }
}

/// Sidecar written next to an exported graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetadataJson {
    pub schema: u32,
    pub construction: String,
    pub parameters: BTreeMap<String, u64>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub valency: Option<usize>,
    pub group_order: u128,
    pub format: String,
    pub group: GroupJson,
}

/// The data `(H, V, y, phi~)` of a coset-graph family, written when the
/// graph itself is too large.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBundleJson {
    pub schema: u32,
    pub construction: String,
    pub parameters: BTreeMap<String, u64>,
    pub k: usize,
    pub block_degree: usize,
    pub h: GroupJson,
    pub v: GroupJson,
    pub y: PermJson,
    pub phi: PermJson,
    pub h_order: u128,
    pub g_order: u128,
    pub coset_graph_index: u128,
}

impl CertificateBundleJson {
    pub fn new(family: FamilyId, param: u64, c: &CertificateInstance) -> Self {
        let d = &c.data;
        CertificateBundleJson {
            schema: SCHEMA,
            construction: family.name().into(),
            parameters: params(family, param),
            k: d.k,
            block_degree: d.block_degree(),
            h: GroupJson::from_group(&d.h),
            v: GroupJson::from_group(&d.v),
            y: PermJson::cycles(&d.y),
            phi: PermJson::cycles(&d.phi),
            h_order: d.h.order(),
            g_order: c.diag.group.order(),
            coset_graph_index: c.diag.group.order() / c.diag.s.order(),
        }
    }
}

pub fn params(family: FamilyId, param: u64) -> BTreeMap<String, u64> {
    BTreeMap::from([(family.parameter().to_string(), param)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRowJson {
    pub construction: String,
    pub params: BTreeMap<String, u64>,
    pub expected_case: Option<char>,
    pub expected_k: Option<usize>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepJson {
    pub schema: u32,
    pub rows_passed: usize,
    pub rows: Vec<SweepRowJson>,
}

impl SweepRowJson {
    pub fn from_row(row: &SweepRow) -> Self {
        let (case, k) = row.family.expected();
        let (status, error, report) = match &row.result {
            Ok(r) => (
                if r.passed() { "pass" } else { "fail" },
                None,
                Some(ReportJson::from_report(r)),
            ),
            Err(e) => ("error", Some(e.to_string()), None),
        };
        SweepRowJson {
            construction: row.family.name().into(),
            params: params(row.family, row.param),
            expected_case: Some(case.letter()),
            expected_k: Some(k),
            status: status.into(),
            error,
            report,
        }
    }

    /// A row that could not be run at all, such as an unknown family name.
    pub fn invalid(name: &str, param: u64, message: String) -> Self {
        SweepRowJson {
            construction: name.into(),
            params: BTreeMap::from([("param".to_string(), param)]),
            expected_case: None,
            expected_k: None,
            status: "error".into(),
            error: Some(message),
            report: None,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
