//! Parallel sweeps over families and the table printed by `og4 table2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use og4_core::constructions::{default_rows, run_row, Budgets, FamilyId, SweepRow};

use crate::json::{SweepJson, SweepRowJson, SCHEMA};
use crate::Error;

/// A row to run, or a row of a parameter file that names no family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planned {
    Row(FamilyId, u64),
    Invalid { name: String, param: u64 },
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Ran(SweepRow),
    Invalid { name: String, param: u64 },
}

/// Parses a parameter file of the form `{"A1": [5, 13], "C4": [7]}`.
/// Unknown names become invalid rows rather than errors.
pub fn parse_params_file(text: &str) -> Result<Vec<Planned>, Error> {
    let map: BTreeMap<String, Vec<u64>> =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("parameter file: {e}")))?;
    let mut rows = Vec::new();
    for (name, params) in map {
        let family = name.parse::<FamilyId>().ok();
        for p in params {
            rows.push(match family {
                Some(f) => Planned::Row(f, p),
                None => Planned::Invalid { name: name.clone(), param: p },
            });
        }
    }
    rows.sort_by_key(|r| match r {
        Planned::Row(f, p) => (0, Some(*f), String::new(), *p),
        Planned::Invalid { name, param } => (1, None, name.clone(), *param),
    });
    Ok(rows)
}

pub fn default_plan() -> Vec<Planned> {
    default_rows().into_iter().map(|(f, p)| Planned::Row(f, p)).collect()
}

/// Keeps only rows of the given families. Invalid rows are kept.
pub fn restrict(plan: Vec<Planned>, families: &[FamilyId]) -> Vec<Planned> {
    plan.into_iter()
        .filter(|r| match r {
            Planned::Row(f, _) => families.contains(f),
            Planned::Invalid { .. } => true,
        })
        .collect()
}

/// Runs the plan on up to `jobs` threads. Output order is the plan order.
pub fn run(plan: &[Planned], budgets: &Budgets, jobs: usize) -> Vec<Outcome> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Outcome>>> = Mutex::new(vec![None; plan.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, plan.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = plan.get(i) else { break };
                let outcome = match item {
                    Planned::Row(f, p) => Outcome::Ran(run_row(*f, *p, budgets)),
                    Planned::Invalid { name, param } => Outcome::Invalid {
                        name: name.clone(),
                        param: *param,
                    },
                };
                slots.lock().unwrap()[i] = Some(outcome);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|o| o.expect("every slot is filled")).collect()
}

pub fn to_json(outcomes: &[Outcome]) -> SweepJson {
    let rows: Vec<SweepRowJson> = outcomes
        .iter()
        .map(|o| match o {
            Outcome::Ran(row) => SweepRowJson::from_row(row),
            Outcome::Invalid { name, param } => {
                SweepRowJson::invalid(name, *param, format!("unknown family {name:?}"))
            }
        })
        .collect();
    SweepJson {
        schema: SCHEMA,
        rows_passed: rows.iter().filter(|r| r.status == "pass").count(),
        rows,
    }
}

/// The socle case found by the `socle_case` check, read from its evidence.
fn found_case(row: &SweepRow) -> String {
    let Ok(report) = &row.result else { return "-".into() };
    let Some(check) = report.check("socle_case") else { return "-".into() };
    match check.evidence.strip_prefix("case (") {
        Some(rest) => {
            let letter = &rest[..1];
            let k = rest.split("k = ").nth(1).and_then(|s| s.split(|c: char| !c.is_ascii_digit()).next());
            format!("({letter}) k={}", k.unwrap_or("?"))
        }
        None => "none".into(),
    }
}

/// A plain-text table with one line per row and the failing checks listed.
pub fn render_table(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<6} {:<8} {:<11} {:<8} {:<11} {:<9} {:<9} {}",
        "family", "param", "method", "T", "tier", "expected", "found", "status"
    )
    .unwrap();
    let mut passed = 0;
    for o in outcomes {
        match o {
            Outcome::Ran(row) => {
                let f = row.family;
                let (case, k) = f.expected();
                let status = match &row.result {
                    Ok(r) if r.passed() => {
                        passed += 1;
                        "pass".to_string()
                    }
                    Ok(r) => {
                        let failing: Vec<&str> = r
                            .checks
                            .iter()
                            .filter(|c| c.status == og4_core::verify::Status::Fail)
                            .map(|c| c.name.as_str())
                            .collect();
                        format!("FAIL: {}", failing.join(", "))
                    }
                    Err(e) => format!("ERROR: {e}"),
                };
                writeln!(
                    out,
                    "{:<6} {:<8} {:<11} {:<8} {:<11} {:<9} {:<9} {}",
                    f.name(),
                    format!("{}={}", f.parameter(), row.param),
                    f.method(),
                    f.simple_group(),
                    f.tier().as_str(),
                    format!("({}) k={k}", case.letter()),
                    found_case(row),
                    status
                )
                .unwrap();
            }
            Outcome::Invalid { name, param } => {
                writeln!(out, "{name:<6} {param:<8} ERROR: unknown family").unwrap();
            }
        }
    }
    writeln!(out, "{passed}/{} rows verified", outcomes.len()).unwrap();
    out
}
