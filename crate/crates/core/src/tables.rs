//! Reproduction of the two reference tables: cubic distance-transitive graphs
//! and distance-regular graphs of small order.
//!
//! Rows live in `data/tables.txt` with the literal table strings. Parameterized
//! rows are evaluated per instance; where a printed formula disagrees with the
//! constructed graphs the corrected value is used and the erratum is reported.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::audit::audit;
use crate::automorphisms::automorphism_group;
use crate::certifier::{certify, CertifyError, CertifyOptions, Verdict, MAX_AUT_VERTICES};
use crate::drg::{is_distance_regular, DrgCheck, IntersectionArray};
use crate::families::{self, FamilySpec};
use crate::knowledge::{self, KnownVerdict};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

const TABLE_DATA: &str = include_str!("../data/tables.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table data line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("row {row}: {message}")]
    Evaluate { row: String, message: String },
    #[error("report JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// The order is printed in the table.
    Printed,
    /// The order follows from the printed group name.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub param: usize,
    /// False when only order and array are checked.
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: u8,
    pub name: String,
    /// Family spec, with `{n}` or `{k}` standing for the parameter.
    pub spec: String,
    pub order: String,
    pub aut: String,
    pub aut_order: String,
    pub provenance: Provenance,
    pub quantum_group: String,
    pub array: String,
    pub verdict: KnownVerdict,
    pub instances: Vec<Instance>,
}

fn short_verdict(v: KnownVerdict) -> &'static str {
    match v {
        KnownVerdict::NoQsym => "NO",
        KnownVerdict::HasQsym => "HAS",
        KnownVerdict::Unknown => "?",
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let provenance = match self.provenance {
            Provenance::Printed => "PRINTED",
            Provenance::Derived => "DERIVED",
        };
        let instances = if self.instances.is_empty() {
            "-".to_string()
        } else {
            self.instances
                .iter()
                .map(|i| format!("{}{}", i.param, if i.full { "" } else { "*" }))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}|{}|{}|{}|{}|{}|{}|{}|{}|{}|{}",
            self.table,
            self.name,
            self.spec,
            self.order,
            self.aut,
            self.aut_order,
            provenance,
            self.quantum_group,
            self.array,
            short_verdict(self.verdict),
            instances
        )
    }
}

impl FromStr for TableRow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split('|').collect();
        let [table, name, spec, order, aut, aut_order, provenance, qgroup, array, verdict, instances] =
            fields[..]
        else {
            return Err(format!("expected 11 fields, found {}", fields.len()));
        };
        let table = match table {
            "1" => 1,
            "2" => 2,
            other => return Err(format!("unknown table {other:?}")),
        };
        let provenance = match provenance {
            "PRINTED" => Provenance::Printed,
            "DERIVED" => Provenance::Derived,
            other => return Err(format!("unknown provenance {other:?}")),
        };
        let instances = if instances == "-" {
            Vec::new()
        } else {
            instances
                .split(',')
                .map(|item| {
                    let (digits, full) = match item.strip_suffix('*') {
                        Some(d) => (d, false),
                        None => (item, true),
                    };
                    digits
                        .parse()
                        .map(|param| Instance { param, full })
                        .map_err(|e| format!("instance {item:?}: {e}"))
                })
                .collect::<Result<_, _>>()?
        };
        let parameterized = spec.contains('{');
        if parameterized == instances.is_empty() {
            return Err("parameterized rows need instances and fixed rows none".into());
        }
        Ok(TableRow {
            table,
            name: name.into(),
            spec: spec.into(),
            order: order.into(),
            aut: aut.into(),
            aut_order: aut_order.into(),
            provenance,
            quantum_group: qgroup.into(),
            array: array.into(),
            verdict: verdict.parse()?,
            instances,
        })
    }
}

pub fn parse_rows(text: &str) -> Result<Vec<TableRow>, TableError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            l.parse().map_err(|message| TableError::Parse {
                line: i + 1,
                message,
            })
        })
        .collect()
}

/// The embedded rows of both tables, in table order.
pub fn table_rows() -> Vec<TableRow> {
    parse_rows(TABLE_DATA).expect("embedded table data parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Template {
    Complete,
    Cycle,
    CompleteBipartite,
    Crown,
    JohnsonTwo,
    KneserTwo,
    Odd,
    HammingThree,
}

impl Template {
    fn of(spec: &str) -> Option<Template> {
        Some(match spec {
            "complete:{n}" => Template::Complete,
            "cycle:{n}" => Template::Cycle,
            "complete-bipartite:{n}" => Template::CompleteBipartite,
            "crown:{n}" => Template::Crown,
            "johnson:{n},2" => Template::JohnsonTwo,
            "kneser:{n},2" => Template::KneserTwo,
            "odd:{k}" => Template::Odd,
            "hamming:{n},3" => Template::HammingThree,
            _ => return None,
        })
    }

    fn order(self, n: usize) -> usize {
        match self {
            Template::Complete | Template::Cycle => n,
            Template::CompleteBipartite | Template::Crown => 2 * n,
            Template::JohnsonTwo | Template::KneserTwo => n * (n - 1) / 2,
            Template::Odd => binomial(2 * n - 1, n - 1),
            Template::HammingThree => 3usize.pow(n as u32),
        }
    }

    fn aut_order(self, n: usize) -> BigUint {
        match self {
            Template::Complete | Template::JohnsonTwo | Template::KneserTwo => factorial(n),
            Template::Cycle => BigUint::from(2 * n),
            Template::CompleteBipartite => factorial(n) * factorial(n) * 2u32,
            Template::Crown => factorial(n) * 2u32,
            Template::Odd => factorial(2 * n - 1),
            Template::HammingThree => BigUint::from(6u32).pow(n as u32) * factorial(n),
        }
    }

    /// The array as printed and the corrected array, as `(b, c)` lists.
    fn arrays(self, n: usize) -> ((Vec<usize>, Vec<usize>), (Vec<usize>, Vec<usize>)) {
        let same = |x: (Vec<usize>, Vec<usize>)| (x.clone(), x);
        match self {
            Template::Complete => same((vec![n - 1], vec![1])),
            Template::Cycle => {
                let d = n / 2;
                let mut b = vec![1; d];
                b[0] = 2;
                let mut c = vec![1; d];
                if n.is_multiple_of(2) {
                    c[d - 1] = 2;
                }
                same((b, c))
            }
            Template::CompleteBipartite => ((vec![n, n], vec![1, n]), (vec![n, n - 1], vec![1, n])),
            Template::Crown => (
                (vec![n - 1, n - 2, 1], vec![1, n - 1, n - 2]),
                (vec![n - 1, n - 2, 1], vec![1, n - 2, n - 1]),
            ),
            Template::JohnsonTwo => same((vec![2 * n - 4, n - 3], vec![1, 4])),
            Template::KneserTwo => same((
                vec![(n - 2) * (n - 3) / 2, 2 * n - 8],
                vec![1, (n - 3) * (n - 4) / 2],
            )),
            Template::Odd => {
                let k = n;
                let l = k.div_ceil(2);
                let mut b = vec![k];
                for t in (l + 1..k).rev() {
                    b.extend([t, t]);
                }
                let pairs = |top: usize| (1..=top).flat_map(|t| [t, t]).collect::<Vec<_>>();
                if k % 2 == 1 {
                    b.push(l);
                    ((b.clone(), pairs(l)), (b, pairs(l - 1)))
                } else {
                    let mut c = pairs(l - 1);
                    c.push(l);
                    same((b, c))
                }
            }
            Template::HammingThree => {
                same(((1..=n).rev().map(|i| 2 * i).collect(), (1..=n).collect()))
            }
        }
    }

    fn erratum(self) -> &'static str {
        match self {
            Template::CompleteBipartite => "printed b_1 = n; the graph has b_1 = n-1",
            Template::Crown => {
                "printed c_2, c_3 = n-1, n-2 are swapped; the graph has c_2 = n-2, c_3 = n-1"
            }
            Template::Odd => {
                "for odd k = 2l-1 the printed c-sequence ends l,l; the graph ends l-1,l-1"
            }
            _ => "",
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn array_text((b, c): &(Vec<usize>, Vec<usize>)) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("{{{};{}}}", join(b), join(c))
}

/// Expected values for one graph of a row.
#[derive(Debug, Clone)]
struct Expected {
    spec: FamilySpec,
    order: usize,
    aut_order: BigUint,
    array: String,
    full: bool,
    notes: Vec<String>,
}

fn expectations(row: &TableRow) -> Result<Vec<Expected>, TableError> {
    let fail = |message: String| TableError::Evaluate {
        row: row.name.clone(),
        message,
    };
    let Some(template) = Template::of(&row.spec) else {
        let spec: FamilySpec = row.spec.parse().map_err(|e| fail(format!("{e}")))?;
        let order = row.order.parse().map_err(|e| fail(format!("order: {e}")))?;
        let aut_order = row
            .aut_order
            .parse()
            .map_err(|e| fail(format!("aut order: {e}")))?;
        let mut notes = Vec::new();
        if spec == FamilySpec::Named(families::NamedGraph::HoffmanSingleton) {
            notes.push(
                "|PSU(3,5)| = 126000; the full group adds the field automorphism: 50 * |S_7| = 252000".into(),
            );
        }
        return Ok(vec![Expected {
            spec,
            order,
            aut_order,
            array: row.array.clone(),
            full: true,
            notes,
        }]);
    };
    row.instances
        .iter()
        .map(|inst| {
            let n = inst.param;
            let spec_text = row
                .spec
                .replace("{n}", &n.to_string())
                .replace("{k}", &n.to_string());
            let spec: FamilySpec = spec_text
                .parse()
                .map_err(|e| fail(format!("{spec_text}: {e}")))?;
            let (printed, corrected) = template.arrays(n);
            let mut notes = Vec::new();
            if printed != corrected {
                notes.push(format!(
                    "erratum: printed array evaluates to {}; {}",
                    array_text(&printed),
                    template.erratum()
                ));
            }
            Ok(Expected {
                spec,
                order: template.order(n),
                aut_order: template.aut_order(n),
                array: array_text(&corrected),
                full: inst.full,
                notes,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The engine certified every class and agrees with the recorded verdict.
    Certified,
    /// Quantum symmetry recorded in the knowledge base.
    RecordedHas,
    /// Verdict recorded from the literature; the engine left classes open.
    RecordedEngineInconclusive,
    /// No verdict is known.
    Open,
    /// Invariants only; certification was not attempted.
    ArrayOnly,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::RecordedHas => "recorded HAS_QSYM",
            Status::RecordedEngineInconclusive => "recorded, engine inconclusive",
            Status::Open => "open",
            Status::ArrayOnly => "array only",
            Status::Failed => "FAILED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub table: u8,
    pub row: String,
    pub graph: String,
    pub spec: FamilySpec,
    pub order: usize,
    pub expected_order: usize,
    pub array: Option<String>,
    pub expected_array: String,
    pub aut_order: Option<String>,
    pub expected_aut_order: String,
    pub provenance: Provenance,
    pub quantum_group: String,
    pub recorded: KnownVerdict,
    pub knowledge_base: KnownVerdict,
    pub engine: Option<String>,
    pub certified_classes: Vec<usize>,
    pub status: Status,
    pub notes: Vec<String>,
    pub mismatches: Vec<String>,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub schema_version: u32,
    pub rows: Vec<InstanceReport>,
}

impl TablesReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(InstanceReport::ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = (&InstanceReport, &String)> {
        self.rows
            .iter()
            .flat_map(|r| r.mismatches.iter().map(move |m| (r, m)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        serde_json::from_str(text).map_err(|e| TableError::Json(e.to_string()))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut current = 0;
        for r in &self.rows {
            if r.table != current {
                current = r.table;
                out.push_str(&format!(
                    "\nTable {current}\n{:<32} {:>5} {:>8} {:<36} {:<8} {}\n",
                    "graph", "order", "|Aut|", "intersection array", "verdict", "status"
                ));
            }
            out.push_str(&format!(
                "{:<32} {:>5} {:>8} {:<36} {:<8} {}{}\n",
                r.graph,
                r.order,
                r.aut_order.as_deref().unwrap_or("-"),
                r.array.as_deref().unwrap_or("not distance-regular"),
                short_verdict(r.recorded),
                r.status,
                if r.ok() { "" } else { "  MISMATCH" }
            ));
            for note in &r.notes {
                out.push_str(&format!("    note: {note}\n"));
            }
            for m in &r.mismatches {
                out.push_str(&format!("    mismatch: {m}\n"));
            }
        }
        let bad = self.rows.iter().filter(|r| !r.ok()).count();
        out.push_str(&format!(
            "\n{} graphs checked, {} with mismatches\n",
            self.rows.len(),
            bad
        ));
        out
    }
}

/// Recomputes every row of the selected table (both when `which` is None).
pub fn reproduce_tables(which: Option<u8>) -> Result<TablesReport, TableError> {
    let mut jobs = Vec::new();
    for row in table_rows()
        .into_iter()
        .filter(|r| which.is_none_or(|w| r.table == w))
    {
        for exp in expectations(&row)? {
            jobs.push((row.clone(), exp));
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(row, exp)| check_instance(&row, exp))
        .collect();
    Ok(TablesReport {
        schema_version: REPORT_SCHEMA_VERSION,
        rows,
    })
}

fn check_instance(row: &TableRow, exp: Expected) -> InstanceReport {
    let mut mismatches = Vec::new();
    let mut notes = exp.notes;
    let kb = knowledge::lookup(&exp.spec).verdict;
    let mut report = InstanceReport {
        table: row.table,
        row: row.name.clone(),
        graph: exp.spec.display_name(),
        spec: exp.spec,
        order: 0,
        expected_order: exp.order,
        array: None,
        expected_array: exp.array.clone(),
        aut_order: None,
        expected_aut_order: exp.aut_order.to_string(),
        provenance: row.provenance,
        quantum_group: row.quantum_group.clone(),
        recorded: row.verdict,
        knowledge_base: kb,
        engine: None,
        certified_classes: Vec::new(),
        status: Status::ArrayOnly,
        notes: Vec::new(),
        mismatches: Vec::new(),
    };
    if kb != row.verdict {
        mismatches.push(format!(
            "table verdict {} but knowledge base says {kb}",
            short_verdict(row.verdict)
        ));
    }
    let g = match families::build(&exp.spec) {
        Ok(fg) => fg.graph,
        Err(e) => {
            report.status = Status::Failed;
            report.mismatches = vec![format!("construction failed: {e}")];
            return report;
        }
    };
    report.order = g.order();
    if g.order() != exp.order {
        mismatches.push(format!("order {} != {}", g.order(), exp.order));
    }
    report.array = match is_distance_regular(&g) {
        Ok(DrgCheck::Regular(ia)) => Some(ia.to_string()),
        _ => None,
    };
    if report.array.as_deref() != Some(exp.array.as_str()) {
        mismatches.push(format!("array {:?} != {}", report.array, exp.array));
    }
    debug_assert!(exp.array.parse::<IntersectionArray>().is_ok());

    if exp.full && g.order() <= MAX_AUT_VERTICES {
        match automorphism_group(&g) {
            Ok(aut) => {
                report.aut_order = Some(aut.order().to_string());
                if *aut.order() != exp.aut_order {
                    mismatches.push(format!("|Aut| {} != {}", aut.order(), exp.aut_order));
                }
            }
            Err(e) => mismatches.push(format!("automorphism search: {e}")),
        }
    }

    if exp.full {
        let options = CertifyOptions {
            label: Some(report.graph.clone()),
            ..Default::default()
        };
        match certify(&g, Some(&exp.spec), &options) {
            Ok(cert) => {
                let verdict = audit(&cert, &g);
                if !verdict.passed() {
                    mismatches.push(verdict.to_string());
                }
                report.certified_classes = cert.certified_classes();
                report.engine = Some(cert.verdict.to_string());
                report.status = match (&cert.verdict, kb) {
                    (Verdict::NoQsym, KnownVerdict::NoQsym) => Status::Certified,
                    (Verdict::HasQsym { .. }, _) => Status::RecordedHas,
                    (Verdict::Inconclusive { .. }, KnownVerdict::NoQsym) => {
                        Status::RecordedEngineInconclusive
                    }
                    (Verdict::Inconclusive { .. }, KnownVerdict::Unknown) => Status::Open,
                    (v, k) => {
                        mismatches.push(format!("engine verdict {v} against recorded {k}"));
                        Status::Failed
                    }
                };
                notes.extend(cert.notes);
            }
            Err(e @ CertifyError::Unsound(_)) => {
                mismatches.push(e.to_string());
                report.status = Status::Failed;
            }
            Err(e) => mismatches.push(format!("certify: {e}")),
        }
    }
    report.notes = notes;
    report.mismatches = mismatches;
    report
}
