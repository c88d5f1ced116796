//! Rule engine that certifies commutation of generator pairs one distance
//! class at a time and records every step in an auditable certificate.
//!
//! Class `m` collects the generator pairs `u_ij, u_kl` with
//! `d(i,k) = d(j,l) = m`. A graph has no quantum symmetry once every class
//! from 1 to the diameter is certified.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphisms::{
    automorphism_group_with, is_distance_transitive, AutError, AutGroup, AutOptions,
};
use crate::drg::{is_distance_regular_with, DrgCheck, IntersectionArray};
use crate::families::{self, FamilyError, FamilySpec};
use crate::graph::{DistanceData, Graph, Vertex};
use crate::io::to_graph6;
use crate::knowledge::{self, KnownVerdict, QsymFact};

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;
/// Automorphism groups (and hence orbit mode) are only computed up to this order.
pub const MAX_AUT_VERTICES: usize = 130;
/// Pivot sets never exceed this size.
pub const MAX_PIVOTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("unsound: engine certified every class of {0}, which is recorded as having quantum symmetry")]
    Unsound(String),
    #[error("orbit mode requested but {0}")]
    OrbitModeUnavailable(String),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("complement transfer: {0}")]
    Transfer(String),
    #[error("certificate JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    Girth5,
    OneCommon,
    TwoCommon,
    IaA,
    IaB,
    IaC,
    CubicD2,
    CubicStepI,
    CubicStepIi,
    UniqueFar,
    PivotIntersection,
    KritSearch,
    Combined,
}

/// The order in which rules are tried on each open class.
pub const RULE_ORDER: [RuleId; 13] = [
    RuleId::Girth5,
    RuleId::OneCommon,
    RuleId::TwoCommon,
    RuleId::IaA,
    RuleId::IaB,
    RuleId::IaC,
    RuleId::CubicD2,
    RuleId::CubicStepI,
    RuleId::CubicStepIi,
    RuleId::UniqueFar,
    RuleId::PivotIntersection,
    RuleId::KritSearch,
    RuleId::Combined,
];

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Girth5 => "girth5",
            RuleId::OneCommon => "one_common",
            RuleId::TwoCommon => "two_common",
            RuleId::IaA => "ia(a)",
            RuleId::IaB => "ia(b)",
            RuleId::IaC => "ia(c)",
            RuleId::CubicD2 => "cubic_d2",
            RuleId::CubicStepI => "cubic_step(i)",
            RuleId::CubicStepIi => "cubic_step(ii)",
            RuleId::UniqueFar => "unique_far",
            RuleId::PivotIntersection => "pivot_intersection",
            RuleId::KritSearch => "krit_search",
            RuleId::Combined => "combined",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::Girth5 => "girth at least five: adjacent generator pairs commute",
            RuleId::OneCommon => "adjacent vertices have exactly one common neighbor",
            RuleId::TwoCommon => {
                "clique number three and exactly two common neighbors at distance one and two"
            }
            RuleId::IaA => "intersection array: c_m >= 2, c_2 = 1, b_1 + 1 = b_0, class m-1 commutes",
            RuleId::IaB => "intersection array: c_m >= 2, c_2 = 1, b_1 + 2 = b_0, class m-1 commutes",
            RuleId::IaC => "intersection array: m = 2, c_2 = 2, b_1 + 3 = b_0, class 1 commutes",
            RuleId::CubicD2 => "cubic with girth at least five: distance-two pairs commute",
            RuleId::CubicStepI => "cubic distance-regular, b_{m-1} = 1, classes below m commute",
            RuleId::CubicStepIi => {
                "cubic distance-regular, b_{m-1} = 2, b_m = c_m = 1, girth >= 2m, classes below m commute"
            }
            RuleId::UniqueFar => "exactly one vertex at distance m from every vertex",
            RuleId::PivotIntersection => {
                "pivot expansions over commuting classes intersect in the single candidate j"
            }
            RuleId::KritSearch => "every other candidate p is excluded by a distance witness q",
            RuleId::Combined => "pivots shrink the candidates, distance witnesses exclude the rest",
        }
    }

    fn is_search(self) -> bool {
        matches!(
            self,
            RuleId::PivotIntersection | RuleId::KritSearch | RuleId::Combined
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeRequest {
    /// Orbit mode for distance-transitive graphs, all pairs otherwise.
    #[default]
    Auto,
    Orbit,
    AllPairs,
}

impl std::str::FromStr for ModeRequest {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(ModeRequest::Auto),
            "orbit" => Ok(ModeRequest::Orbit),
            "all-pairs" => Ok(ModeRequest::AllPairs),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Orbit,
    AllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub mode: ModeRequest,
    /// Elementary distance lookups allowed per search rule and class.
    pub search_budget: u64,
    pub aut_budget: u64,
    /// When false, recorded verdicts never short-circuit the result; the
    /// soundness check against them still runs.
    pub use_knowledge_base: bool,
    pub label: Option<String>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: ModeRequest::Auto,
            search_budget: DEFAULT_SEARCH_BUDGET,
            aut_budget: crate::automorphisms::DEFAULT_NODE_BUDGET,
            use_knowledge_base: true,
            label: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KritWitness {
    pub p: Vertex,
    pub q: Vertex,
    pub s: usize,
}

/// Witness data for one representative pair `(j, l)` at distance `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub j: Vertex,
    pub l: Vertex,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pivots: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub krit: Vec<KritWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub class: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SearchMode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<PairWitness>,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NoQsym,
    HasQsym { reason: String },
    Inconclusive { open_classes: Vec<usize> },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoQsym => f.write_str("NO_QSYM"),
            Verdict::HasQsym { .. } => f.write_str("HAS_QSYM"),
            Verdict::Inconclusive { open_classes } => write!(f, "INCONCLUSIVE{open_classes:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphId {
    pub label: String,
    pub order: usize,
    pub edges: usize,
    pub graph6: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    pub graph: GraphId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    pub diameter: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_array: Option<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knowledge_base: Option<QsymFact>,
    pub rule_order: Vec<RuleId>,
    pub applications: Vec<RuleApplication>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Automorphisms backing orbit-mode applications.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vertex>>>,
    /// Certificate for the complement, when this one was obtained by transfer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer: Option<Box<Certificate>>,
}

impl Certificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Single-line record for batch output.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CertifyError> {
        serde_json::from_str(text).map_err(|e| CertifyError::Json(e.to_string()))
    }

    /// Certified classes in application order.
    pub fn certified_classes(&self) -> Vec<usize> {
        self.applications.iter().map(|a| a.class).collect()
    }

    /// Compact chain such as `girth5@1 cubic_d2@2 ia(a)@3`.
    pub fn chain(&self) -> String {
        self.applications
            .iter()
            .map(|a| format!("{}@{}", a.rule, a.class))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "graph: {} (n={}, m={})\n",
            self.graph.label, self.graph.order, self.graph.edges
        ));
        out.push_str(&format!("graph6: {}\n", self.graph.graph6));
        if let Some(ia) = &self.intersection_array {
            out.push_str(&format!("intersection array: {ia}\n"));
        }
        out.push_str(&format!("diameter: {}\n", self.diameter));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Verdict::HasQsym { reason } = &self.verdict {
            out.push_str(&format!("  reason: {reason}\n"));
        }
        if let Some(kb) = &self.knowledge_base {
            out.push_str(&format!("recorded: {} ({})\n", kb.verdict, kb.source));
        }
        for app in &self.applications {
            let mode = app.mode.map(|m| format!(" [{m:?}]")).unwrap_or_default();
            out.push_str(&format!(
                "  class {}: {}{}  -- {}\n",
                app.class, app.rule, mode, app.citation
            ));
            for w in &app.witnesses {
                let mut parts = vec![format!("j={} l={}", w.j, w.l)];
                if !w.pivots.is_empty() {
                    parts.push(format!("pivots={:?}", w.pivots));
                }
                if !w.krit.is_empty() {
                    let k: Vec<String> = w
                        .krit
                        .iter()
                        .map(|k| format!("{}<-{}(s={})", k.p, k.q, k.s))
                        .collect();
                    parts.push(format!("krit=[{}]", k.join(", ")));
                }
                out.push_str(&format!("      {}\n", parts.join(" ")));
            }
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        if let Some(inner) = &self.transfer {
            out.push_str("transferred from the complement:\n");
            for line in inner.render_text().lines() {
                out.push_str(&format!("  | {line}\n"));
            }
        }
        out
    }
}

/// Builds the family member and certifies it under its spec.
pub fn certify_family(
    spec: &FamilySpec,
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    let fg = families::build(spec)?;
    let mut options = options.clone();
    if options.label.is_none() {
        options.label = Some(spec.display_name());
    }
    certify(&fg.graph, Some(spec), &options)
}

pub fn certify(
    g: &Graph,
    family: Option<&FamilySpec>,
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    if g.order() == 0 {
        return Err(CertifyError::Empty);
    }
    let dd = g.distances();
    if !dd.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    let label = options
        .label
        .clone()
        .or_else(|| family.map(FamilySpec::display_name))
        .unwrap_or_else(|| format!("graph on {} vertices", g.order()));
    let ia = match is_distance_regular_with(g, &dd) {
        Ok(DrgCheck::Regular(ia)) => Some(ia),
        _ => None,
    };

    let mut notes = Vec::new();
    let orbit_group = choose_mode(g, &dd, options, &mut notes)?;
    let mut engine = Engine::new(
        g,
        &dd,
        ia.as_ref(),
        orbit_group.as_ref(),
        options.search_budget,
    );
    engine.run();

    let kb = family.map(knowledge::lookup);
    let all_certified = engine.open_classes().is_empty();
    if all_certified
        && kb
            .as_ref()
            .is_some_and(|f| f.verdict == KnownVerdict::HasQsym)
    {
        return Err(CertifyError::Unsound(label));
    }
    let verdict = match &kb {
        Some(f) if options.use_knowledge_base && f.verdict == KnownVerdict::HasQsym => {
            Verdict::HasQsym {
                reason: f.source.clone(),
            }
        }
        _ if all_certified => Verdict::NoQsym,
        _ => Verdict::Inconclusive {
            open_classes: engine.open_classes(),
        },
    };
    let uses_orbits = engine
        .applications
        .iter()
        .any(|a| a.mode == Some(SearchMode::Orbit));
    notes.extend(engine.notes.iter().cloned());
    Ok(Certificate {
        format_version: CERTIFICATE_FORMAT_VERSION,
        graph: GraphId {
            label,
            order: g.order(),
            edges: g.edge_count(),
            graph6: to_graph6(g),
        },
        family: family.copied(),
        diameter: dd.diameter(),
        intersection_array: ia.as_ref().map(IntersectionArray::to_string),
        verdict,
        knowledge_base: kb,
        rule_order: RULE_ORDER.to_vec(),
        applications: engine.applications,
        notes,
        generators: uses_orbits
            .then(|| orbit_group.map(|a| a.generators().to_vec()))
            .flatten(),
        transfer: None,
    })
}

/// Returns the automorphism group when orbit mode will be used.
fn choose_mode(
    g: &Graph,
    dd: &DistanceData,
    options: &CertifyOptions,
    notes: &mut Vec<String>,
) -> Result<Option<AutGroup>, CertifyError> {
    let strict = options.mode == ModeRequest::Orbit;
    if options.mode == ModeRequest::AllPairs {
        return Ok(None);
    }
    if g.order() > MAX_AUT_VERTICES {
        let why = format!("automorphism search is limited to {MAX_AUT_VERTICES} vertices");
        if strict {
            return Err(CertifyError::OrbitModeUnavailable(why));
        }
        notes.push(format!("all-pairs mode: {why}"));
        return Ok(None);
    }
    let aut = match automorphism_group_with(
        g,
        &AutOptions {
            node_budget: options.aut_budget,
        },
    ) {
        Ok(aut) => aut,
        Err(e) if !strict => {
            notes.push(format!("all-pairs mode: {e}"));
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    if is_distance_transitive(dd, &aut) {
        Ok(Some(aut))
    } else if strict {
        Err(CertifyError::OrbitModeUnavailable(
            "the graph is not distance-transitive".into(),
        ))
    } else {
        notes.push("all-pairs mode: graph is not distance-transitive".into());
        Ok(None)
    }
}

/// Certificate for `g` from a no-quantum-symmetry certificate of its
/// complement. Transferring a transferred certificate back returns the
/// original.
pub fn complement_transfer(
    g: &Graph,
    complement_cert: &Certificate,
) -> Result<Certificate, CertifyError> {
    let co = g.complement();
    if complement_cert.graph.graph6 != to_graph6(&co) {
        return Err(CertifyError::Transfer(
            "certificate is not for the complement of this graph".into(),
        ));
    }
    if complement_cert.verdict != Verdict::NoQsym {
        return Err(CertifyError::Transfer(format!(
            "complement verdict is {}",
            complement_cert.verdict
        )));
    }
    if !co.is_connected() {
        return Err(CertifyError::Transfer("complement is disconnected".into()));
    }
    if let Some(inner) = &complement_cert.transfer {
        if inner.graph.graph6 == to_graph6(g) {
            return Ok((**inner).clone());
        }
    }
    let dd = g.distances();
    if !dd.is_connected() {
        return Err(CertifyError::Disconnected);
    }
    let ia = match is_distance_regular_with(g, &dd) {
        Ok(DrgCheck::Regular(ia)) => Some(ia.to_string()),
        _ => None,
    };
    Ok(Certificate {
        format_version: CERTIFICATE_FORMAT_VERSION,
        graph: GraphId {
            label: format!("complement of {}", complement_cert.graph.label),
            order: g.order(),
            edges: g.edge_count(),
            graph6: to_graph6(g),
        },
        family: None,
        diameter: dd.diameter(),
        intersection_array: ia,
        verdict: Verdict::NoQsym,
        knowledge_base: None,
        rule_order: RULE_ORDER.to_vec(),
        applications: Vec::new(),
        notes: vec!["a graph and its complement share their quantum automorphism group".into()],
        generators: None,
        transfer: Some(Box::new(complement_cert.clone())),
    })
}

/// Bitset over the candidate list of one pair.
type Mask = Vec<u64>;

fn mask_with(len: usize, bits: impl Iterator<Item = usize>) -> Mask {
    let mut m = vec![0u64; len.div_ceil(64).max(1)];
    for b in bits {
        m[b / 64] |= 1 << (b % 64);
    }
    m
}

fn and(a: &Mask, b: &Mask) -> Mask {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn disjoint(a: &Mask, b: &Mask) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

struct Engine<'a> {
    g: &'a Graph,
    dd: &'a DistanceData,
    ia: Option<&'a IntersectionArray>,
    orbit_group: Option<&'a AutGroup>,
    budget: u64,
    girth: Option<usize>,
    certified: Vec<bool>,
    applications: Vec<RuleApplication>,
    notes: Vec<String>,
}

/// Outcome of running one search rule on one class.
enum SearchOutcome {
    Found(Vec<PairWitness>),
    Failed,
    Budget,
}

impl<'a> Engine<'a> {
    fn new(
        g: &'a Graph,
        dd: &'a DistanceData,
        ia: Option<&'a IntersectionArray>,
        orbit_group: Option<&'a AutGroup>,
        budget: u64,
    ) -> Self {
        Engine {
            g,
            dd,
            ia,
            orbit_group,
            budget,
            girth: g.girth(),
            certified: vec![false; dd.diameter() + 1],
            applications: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn diameter(&self) -> usize {
        self.dd.diameter()
    }

    fn open_classes(&self) -> Vec<usize> {
        (1..=self.diameter())
            .filter(|&m| !self.certified[m])
            .collect()
    }

    /// Repeated ascending passes until no open class can be closed.
    fn run(&mut self) {
        loop {
            let mut progress = false;
            for m in 1..=self.diameter() {
                if self.certified[m] {
                    continue;
                }
                for rule in RULE_ORDER {
                    if let Some(app) = self.try_rule(rule, m) {
                        debug_assert!(self.prerequisites_met(rule, m));
                        self.certified[m] = true;
                        self.applications.push(app);
                        progress = true;
                        break;
                    }
                }
            }
            if !progress {
                break;
            }
        }
    }

    fn prerequisites_met(&self, rule: RuleId, m: usize) -> bool {
        match rule {
            RuleId::IaA | RuleId::IaB | RuleId::IaC => self.certified[m - 1],
            RuleId::CubicD2 => self.certified[1],
            RuleId::CubicStepI | RuleId::CubicStepIi => (1..m).all(|t| self.certified[t]),
            _ => true,
        }
    }

    fn girth_at_least(&self, bound: usize) -> bool {
        self.girth.is_none_or(|g| g >= bound)
    }

    fn cubic_ia(&self) -> Option<&IntersectionArray> {
        self.ia.filter(|ia| ia.degree() == 3)
    }

    fn simple(&self, rule: RuleId, m: usize) -> RuleApplication {
        RuleApplication {
            rule,
            class: m,
            mode: None,
            witnesses: Vec::new(),
            citation: rule.citation().into(),
        }
    }

    fn try_rule(&mut self, rule: RuleId, m: usize) -> Option<RuleApplication> {
        let holds = match rule {
            RuleId::Girth5 => m == 1 && self.girth_at_least(5),
            RuleId::OneCommon => m == 1 && self.common_counts_equal(&[1], 1),
            RuleId::TwoCommon => {
                m == 1 && self.common_counts_equal(&[1, 2], 2) && self.g.clique_number() == 3
            }
            RuleId::IaA | RuleId::IaB | RuleId::IaC => self.ia_holds(rule, m),
            RuleId::CubicD2 => {
                m == 2
                    && self.g.regular_degree() == Some(3)
                    && self.girth_at_least(5)
                    && self.certified[1]
            }
            RuleId::CubicStepI | RuleId::CubicStepIi => self.cubic_step_holds(rule, m),
            RuleId::UniqueFar => (0..self.g.order()).all(|v| self.dd.k(v, m) == 1),
            RuleId::PivotIntersection | RuleId::KritSearch | RuleId::Combined => {
                return self.search(rule, m);
            }
        };
        holds.then(|| self.simple(rule, m))
    }

    /// Every pair at one of the given distances has exactly `count` common neighbors.
    fn common_counts_equal(&self, distances: &[usize], count: usize) -> bool {
        let n = self.g.order();
        (0..n).all(|u| {
            (u + 1..n).all(|v| {
                !distances.contains(&self.dd.d(u, v))
                    || self
                        .g
                        .neighbors(u)
                        .iter()
                        .filter(|&&w| self.g.adjacent(v, w))
                        .count()
                        == count
            })
        })
    }

    fn ia_holds(&self, rule: RuleId, m: usize) -> bool {
        let Some(ia) = self.ia else { return false };
        if m < 2 || !self.certified[m - 1] || ia.c(m).is_none_or(|c| c < 2) {
            return false;
        }
        let (b0, b1, c2) = (ia.degree(), ia.b(1).unwrap_or(0), ia.c(2).unwrap_or(0));
        match rule {
            RuleId::IaA => c2 == 1 && b1 + 1 == b0,
            RuleId::IaB => c2 == 1 && b1 + 2 == b0,
            RuleId::IaC => c2 == 2 && m == 2 && b1 + 3 == b0,
            _ => unreachable!(),
        }
    }

    fn cubic_step_holds(&self, rule: RuleId, m: usize) -> bool {
        let Some(ia) = self.cubic_ia() else {
            return false;
        };
        if m < 2 || !(1..m).all(|t| self.certified[t]) {
            return false;
        }
        match rule {
            RuleId::CubicStepI => ia.b(m - 1) == Some(1),
            RuleId::CubicStepIi => {
                ia.b(m - 1) == Some(2)
                    && ia.b(m) == Some(1)
                    && ia.c(m) == Some(1)
                    && self.girth_at_least(2 * m)
            }
            _ => unreachable!(),
        }
    }

    fn search(&mut self, rule: RuleId, m: usize) -> Option<RuleApplication> {
        debug_assert!(rule.is_search());
        let (pairs, mode) = match self.orbit_group {
            Some(aut) => (
                aut.orbit_representatives(self.dd, m).ok()?,
                SearchMode::Orbit,
            ),
            None => (
                self.dd.pairs_at(m).collect::<Vec<_>>(),
                SearchMode::AllPairs,
            ),
        };
        let finder = PairSearch {
            g: self.g,
            dd: self.dd,
            certified: &self.certified,
            m,
        };
        let mut spent = 0u64;
        let mut witnesses = Vec::with_capacity(pairs.len());
        let mut outcome = SearchOutcome::Failed;
        for chunk in pairs.chunks(256) {
            let results: Vec<(Option<PairWitness>, u64)> = chunk
                .par_iter()
                .map(|&(j, l)| {
                    let mut cost = 0u64;
                    let w = finder.find(rule, j, l, &mut cost);
                    (w, cost)
                })
                .collect();
            let mut failed = false;
            for (w, cost) in results {
                spent = spent.saturating_add(cost);
                match w {
                    Some(w) => witnesses.push(w),
                    None => failed = true,
                }
            }
            if spent > self.budget {
                outcome = SearchOutcome::Budget;
                break;
            }
            if failed {
                break;
            }
            if witnesses.len() == pairs.len() {
                outcome = SearchOutcome::Found(std::mem::take(&mut witnesses));
            }
        }
        match outcome {
            SearchOutcome::Found(witnesses) => Some(RuleApplication {
                rule,
                class: m,
                mode: Some(mode),
                witnesses,
                citation: rule.citation().into(),
            }),
            SearchOutcome::Budget => {
                let note = format!(
                    "class {m}: {rule} inapplicable, budget of {} lookups exceeded",
                    self.budget
                );
                if !self.notes.contains(&note) {
                    self.notes.push(note);
                }
                None
            }
            SearchOutcome::Failed => None,
        }
    }
}

/// Per-pair witness searches; shared immutably across worker threads.
struct PairSearch<'a> {
    g: &'a Graph,
    dd: &'a DistanceData,
    certified: &'a [bool],
    m: usize,
}

impl PairSearch<'_> {
    fn find(&self, rule: RuleId, j: Vertex, l: Vertex, cost: &mut u64) -> Option<PairWitness> {
        let candidates = self.dd.sphere(l, self.m);
        *cost += self.g.order() as u64;
        match rule {
            RuleId::PivotIntersection => {
                let pivots = self.pivot_set(j, l, &candidates, None, cost)?;
                Some(PairWitness {
                    j,
                    l,
                    pivots,
                    krit: Vec::new(),
                })
            }
            RuleId::KritSearch => {
                let krit = candidates
                    .iter()
                    .filter(|&&p| p != j)
                    .map(|&p| self.krit(j, l, p, cost))
                    .collect::<Option<Vec<_>>>()?;
                Some(PairWitness {
                    j,
                    l,
                    pivots: Vec::new(),
                    krit,
                })
            }
            RuleId::Combined => {
                let found: Vec<(Vertex, Option<KritWitness>)> = candidates
                    .iter()
                    .filter(|&&p| p != j)
                    .map(|&p| (p, self.krit(j, l, p, cost)))
                    .collect();
                let bad = mask_with(
                    candidates.len(),
                    found
                        .iter()
                        .filter(|(_, w)| w.is_none())
                        .map(|(p, _)| candidates.binary_search(p).unwrap()),
                );
                let pivots = self.pivot_set(j, l, &candidates, Some(&bad), cost)?;
                let survivors = self.survivors(j, &candidates, &pivots);
                let krit = found
                    .into_iter()
                    .filter(|(p, _)| *p != j && survivors.contains(p))
                    .map(|(_, w)| w.expect("survivors all have witnesses"))
                    .collect();
                Some(PairWitness { j, l, pivots, krit })
            }
            _ => unreachable!(),
        }
    }

    fn survivors(&self, j: Vertex, candidates: &[Vertex], pivots: &[Vertex]) -> Vec<Vertex> {
        candidates
            .iter()
            .copied()
            .filter(|&p| pivots.iter().all(|&q| self.dd.d(p, q) == self.dd.d(j, q)))
            .collect()
    }

    /// Least pivot set (by size, then lexicographically) whose filtered
    /// candidate set is `{j}`, or, with `avoid`, disjoint from `avoid`.
    fn pivot_set(
        &self,
        j: Vertex,
        l: Vertex,
        candidates: &[Vertex],
        avoid: Option<&Mask>,
        cost: &mut u64,
    ) -> Option<Vec<Vertex>> {
        let len = candidates.len();
        let target = match avoid {
            Some(_) => None,
            None => Some(mask_with(
                len,
                candidates.binary_search(&j).ok().into_iter(),
            )),
        };
        let good = |mask: &Mask| match (&target, avoid) {
            (Some(t), _) => mask == t,
            (None, Some(a)) => disjoint(mask, a),
            (None, None) => unreachable!(),
        };
        if avoid.is_some_and(|a| a.iter().all(|&w| w == 0)) {
            return Some(Vec::new());
        }
        let full = mask_with(len, 0..len);
        let mut pivots: Vec<(Vertex, Mask)> = Vec::new();
        for q in 0..self.g.order() {
            if q == l || !self.certified[self.dd.d(q, l)] {
                continue;
            }
            *cost += len as u64;
            let dj = self.dd.d(j, q);
            let mask = mask_with(len, (0..len).filter(|&i| self.dd.d(candidates[i], q) == dj));
            if mask != full {
                pivots.push((q, mask));
            }
        }
        for (q, mask) in &pivots {
            if good(mask) {
                return Some(vec![*q]);
            }
        }
        let words = full.len() as u64;
        for a in 0..pivots.len() {
            for b in a + 1..pivots.len() {
                *cost += words;
                if good(&and(&pivots[a].1, &pivots[b].1)) {
                    return Some(vec![pivots[a].0, pivots[b].0]);
                }
            }
        }
        if MAX_PIVOTS < 3 {
            return None;
        }
        for a in 0..pivots.len() {
            for b in a + 1..pivots.len() {
                let ab = and(&pivots[a].1, &pivots[b].1);
                for c in b + 1..pivots.len() {
                    *cost += words;
                    if good(&and(&ab, &pivots[c].1)) {
                        return Some(vec![pivots[a].0, pivots[b].0, pivots[c].0]);
                    }
                }
            }
        }
        None
    }

    /// Least `q` with `d(j,q) != d(p,q)` such that `l` is the only vertex at
    /// distance `m` from both `j` and `p` and at distance `d(q,l)` from `q`.
    fn krit(&self, j: Vertex, l: Vertex, p: Vertex, cost: &mut u64) -> Option<KritWitness> {
        let n = self.g.order();
        let m = self.m;
        *cost += 2 * n as u64;
        let rivals: Vec<Vertex> = (0..n)
            .filter(|&x| x != l && self.dd.d(x, j) == m && self.dd.d(x, p) == m)
            .collect();
        (0..n).find_map(|q| {
            *cost += 1 + rivals.len() as u64;
            let s = self.dd.d(q, l);
            (self.dd.d(j, q) != self.dd.d(p, q) && rivals.iter().all(|&x| self.dd.d(x, q) != s))
                .then_some(KritWitness { p, q, s })
        })
    }
}

/// Whether `w` passes the krit validity predicate for the pair `(j, l)`.
pub fn krit_witness_valid(dd: &DistanceData, j: Vertex, l: Vertex, w: &KritWitness) -> bool {
    let m = dd.d(j, l);
    let n = dd.order();
    w.p != j
        && dd.d(w.p, l) == m
        && dd.d(w.q, l) == w.s
        && dd.d(j, w.q) != dd.d(w.q, w.p)
        && (0..n)
            .filter(|&x| dd.d(x, w.q) == w.s && dd.d(x, j) == m && dd.d(x, w.p) == m)
            .eq(std::iter::once(l))
}

/// Candidate set `{p : d(l,p) = m, d(p,q) = d(j,q) for every pivot q}`.
pub fn pivot_intersection(
    dd: &DistanceData,
    j: Vertex,
    l: Vertex,
    pivots: &[Vertex],
) -> BTreeSet<Vertex> {
    let m = dd.d(j, l);
    (0..dd.order())
        .filter(|&p| dd.d(l, p) == m && pivots.iter().all(|&q| dd.d(p, q) == dd.d(j, q)))
        .collect()
}
