//! Published quantum-symmetry verdicts, keyed on family specs.

use serde::{Deserialize, Serialize};

use crate::families::{FamilySpec, NamedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KnownVerdict {
    NoQsym,
    HasQsym,
    Unknown,
}

impl std::fmt::Display for KnownVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KnownVerdict::NoQsym => "NO_QSYM",
            KnownVerdict::HasQsym => "HAS_QSYM",
            KnownVerdict::Unknown => "UNKNOWN",
        })
    }
}

impl std::str::FromStr for KnownVerdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "NO_QSYM" | "NO" => Ok(KnownVerdict::NoQsym),
            "HAS_QSYM" | "HAS" => Ok(KnownVerdict::HasQsym),
            "UNKNOWN" | "?" => Ok(KnownVerdict::Unknown),
            other => Err(format!("unknown verdict {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsymFact {
    /// Family spec or named-graph description the fact covers.
    pub subject: String,
    pub verdict: KnownVerdict,
    pub source: String,
    /// Quantum automorphism group as tabulated, when one is named.
    pub quantum_group: Option<String>,
}

fn fact(
    subject: impl Into<String>,
    verdict: KnownVerdict,
    source: &str,
    group: Option<&str>,
) -> QsymFact {
    QsymFact {
        subject: subject.into(),
        verdict,
        source: source.to_string(),
        quantum_group: group.map(str::to_string),
    }
}

const BANICA_BICHON: &str =
    "Banica-Bichon classification of vertex-transitive graphs of order at most 11";
const HAMMING_FACT: &str =
    "Hamming graphs H(d,q) with q >= 4, or q = 2 and d >= 2, have quantum symmetry";
const NO_QSYM_SOURCE: &str = "no quantum symmetry: commutation of all generator pairs";
const HYPEROCTAHEDRAL: &str =
    "hypercube quantum automorphism group is the twisted orthogonal group O_n^{-1}";

/// The recorded verdict for `spec`. Specs outside every recorded domain get `Unknown`.
pub fn lookup(spec: &FamilySpec) -> QsymFact {
    use KnownVerdict::*;
    let subject = spec.to_string();
    match *spec {
        FamilySpec::Complete { n } if n >= 4 => {
            fact(subject, HasQsym, BANICA_BICHON, Some("S_n^+"))
        }
        FamilySpec::Complete { .. } => fact(subject, NoQsym, "S_n^+ = S_n for n <= 3", Some("S_n")),
        FamilySpec::Cycle { n: 4 } => fact(subject, HasQsym, BANICA_BICHON, Some("S_2^+ wr_* Z_2")),
        FamilySpec::Cycle { .. } => fact(subject, NoQsym, BANICA_BICHON, Some("D_n")),
        FamilySpec::CompleteBipartite { n } if n >= 2 => {
            fact(subject, HasQsym, BANICA_BICHON, Some("S_n^+ wr_* Z_2"))
        }
        FamilySpec::CompleteBipartite { .. } => fact(subject, NoQsym, "K_{1,1} = K_2", Some("Z_2")),
        FamilySpec::Crown { n } if n >= 4 => {
            fact(subject, HasQsym, BANICA_BICHON, Some("S_n^+ x Z_2"))
        }
        FamilySpec::Crown { .. } => fact(subject, Unknown, "threshold not recorded", None),
        FamilySpec::Hamming { d, q } => match (d, q) {
            (_, q) if q >= 4 => fact(subject, HasQsym, HAMMING_FACT, None),
            (d, 2) if d >= 2 => fact(subject, HasQsym, HAMMING_FACT, Some("O_d^{-1}")),
            (_, 3) => fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut")),
            _ => fact(
                subject,
                NoQsym,
                "H(1,2) = K_2 and H(d,1) = K_1",
                Some("Aut"),
            ),
        },
        FamilySpec::Cube { n } if n >= 2 => {
            fact(subject, HasQsym, HYPEROCTAHEDRAL, Some("O_n^{-1}"))
        }
        FamilySpec::Cube { .. } => fact(subject, NoQsym, "Q_1 = K_2", Some("Z_2")),
        FamilySpec::Johnson { n, k: 2 } if n >= 5 => {
            fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut"))
        }
        FamilySpec::Johnson { n: 4, k: 2 } => {
            fact(subject, HasQsym, BANICA_BICHON, Some("Z_2 wr_* S_3"))
        }
        FamilySpec::Johnson { n, k } if k == 1 || k + 1 == n => lookup(&FamilySpec::Complete { n }),
        FamilySpec::Johnson { n: 6, k: 3 } => fact(
            subject,
            Unknown,
            "open question: quantum symmetry of J(6,3)",
            None,
        ),
        FamilySpec::Kneser { n, k: 2 } if n >= 5 => {
            fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut"))
        }
        FamilySpec::Kneser { n, k: 1 } => lookup(&FamilySpec::Complete { n }),
        FamilySpec::Kneser { n, k } if k >= 2 && n == 2 * k + 1 => {
            lookup(&FamilySpec::Odd { k: k + 1 })
        }
        FamilySpec::Odd { .. } => fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut")),
        FamilySpec::Paley { q: 5 } => lookup(&FamilySpec::Cycle { n: 5 }),
        FamilySpec::Paley { q: 9 } => fact(subject, NoQsym, BANICA_BICHON, Some("Aut")),
        FamilySpec::Paley { q: 13 | 17 } => fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut")),
        FamilySpec::Named(name) => named_fact(name),
        _ => fact(subject, Unknown, "not recorded", None),
    }
}

fn named_fact(name: NamedGraph) -> QsymFact {
    use KnownVerdict::*;
    let subject = format!("named:{name}");
    match name {
        NamedGraph::K4 => fact(subject, HasQsym, BANICA_BICHON, Some("S_4^+")),
        NamedGraph::K33 => fact(subject, HasQsym, BANICA_BICHON, Some("S_3 wr_* Z_2")),
        NamedGraph::Q3 => fact(subject, HasQsym, BANICA_BICHON, Some("S_4^+ x Z_2")),
        NamedGraph::Clebsch => fact(
            subject,
            HasQsym,
            "folded cube quantum automorphism group",
            Some("SO_5^{-1}"),
        ),
        NamedGraph::Petersen => fact(
            subject,
            NoQsym,
            "quantum automorphism group of the Petersen graph",
            Some("Aut"),
        ),
        _ => fact(subject, NoQsym, NO_QSYM_SOURCE, Some("Aut")),
    }
}

/// Recorded facts about graphs the toolkit does not construct.
pub fn unconstructed_facts() -> Vec<QsymFact> {
    vec![fact(
        "Tutte 12-cage",
        KnownVerdict::Unknown,
        "open question: the only cubic distance-regular graph that is not distance-transitive",
        None,
    )]
}
