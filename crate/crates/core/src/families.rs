//! Constructors for the graph families and sporadic graphs, each checked
//! against its known invariants before it is handed out.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drg::{is_distance_regular, DrgCheck, IntersectionArray};
use crate::graph::{Graph, Vertex};
use crate::io;

/// Constructions beyond this many vertices are refused.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: String,
    },
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error("{spec} would have {order} vertices (limit {MAX_ORDER})")]
    TooLarge { spec: String, order: usize },
    #[error("{spec} failed validation: {reason}")]
    Validation { spec: String, reason: String },
}

fn invalid(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameters {
        family,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedGraph {
    Petersen,
    Heawood,
    CoHeawood,
    Pappus,
    Desargues,
    Dodecahedron,
    Coxeter,
    Tutte8Cage,
    Foster,
    BiggsSmith,
    Shrikhande,
    Icosahedron,
    Clebsch,
    HoffmanSingleton,
    K4,
    K33,
    Q3,
    LinePetersen,
}

impl NamedGraph {
    pub const ALL: [NamedGraph; 18] = [
        NamedGraph::Petersen,
        NamedGraph::Heawood,
        NamedGraph::CoHeawood,
        NamedGraph::Pappus,
        NamedGraph::Desargues,
        NamedGraph::Dodecahedron,
        NamedGraph::Coxeter,
        NamedGraph::Tutte8Cage,
        NamedGraph::Foster,
        NamedGraph::BiggsSmith,
        NamedGraph::Shrikhande,
        NamedGraph::Icosahedron,
        NamedGraph::Clebsch,
        NamedGraph::HoffmanSingleton,
        NamedGraph::K4,
        NamedGraph::K33,
        NamedGraph::Q3,
        NamedGraph::LinePetersen,
    ];

    pub fn slug(self) -> &'static str {
        match self {
            NamedGraph::Petersen => "petersen",
            NamedGraph::Heawood => "heawood",
            NamedGraph::CoHeawood => "co-heawood",
            NamedGraph::Pappus => "pappus",
            NamedGraph::Desargues => "desargues",
            NamedGraph::Dodecahedron => "dodecahedron",
            NamedGraph::Coxeter => "coxeter",
            NamedGraph::Tutte8Cage => "tutte-8-cage",
            NamedGraph::Foster => "foster",
            NamedGraph::BiggsSmith => "biggs-smith",
            NamedGraph::Shrikhande => "shrikhande",
            NamedGraph::Icosahedron => "icosahedron",
            NamedGraph::Clebsch => "clebsch",
            NamedGraph::HoffmanSingleton => "hoffman-singleton",
            NamedGraph::K4 => "k4",
            NamedGraph::K33 => "k33",
            NamedGraph::Q3 => "q3",
            NamedGraph::LinePetersen => "line-petersen",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            NamedGraph::Petersen => "Petersen graph",
            NamedGraph::Heawood => "Heawood graph",
            NamedGraph::CoHeawood => "co-Heawood graph",
            NamedGraph::Pappus => "Pappus graph",
            NamedGraph::Desargues => "Desargues graph",
            NamedGraph::Dodecahedron => "Dodecahedron",
            NamedGraph::Coxeter => "Coxeter graph",
            NamedGraph::Tutte8Cage => "Tutte 8-cage",
            NamedGraph::Foster => "Foster graph",
            NamedGraph::BiggsSmith => "Biggs-Smith graph",
            NamedGraph::Shrikhande => "Shrikhande graph",
            NamedGraph::Icosahedron => "Icosahedron",
            NamedGraph::Clebsch => "Clebsch graph",
            NamedGraph::HoffmanSingleton => "Hoffman-Singleton graph",
            NamedGraph::K4 => "K_4",
            NamedGraph::K33 => "K_{3,3}",
            NamedGraph::Q3 => "Cube Q_3",
            NamedGraph::LinePetersen => "Line graph of Petersen graph",
        }
    }

    /// (order, degree, girth, intersection array).
    fn profile(self) -> (usize, usize, usize, &'static str) {
        match self {
            NamedGraph::Petersen => (10, 3, 5, "{3,2;1,1}"),
            NamedGraph::Heawood => (14, 3, 6, "{3,2,2;1,1,3}"),
            NamedGraph::CoHeawood => (14, 4, 4, "{4,3,2;1,2,4}"),
            NamedGraph::Pappus => (18, 3, 6, "{3,2,2,1;1,1,2,3}"),
            NamedGraph::Desargues => (20, 3, 6, "{3,2,2,1,1;1,1,2,2,3}"),
            NamedGraph::Dodecahedron => (20, 3, 5, "{3,2,1,1,1;1,1,1,2,3}"),
            NamedGraph::Coxeter => (28, 3, 7, "{3,2,2,1;1,1,1,2}"),
            NamedGraph::Tutte8Cage => (30, 3, 8, "{3,2,2,2;1,1,1,3}"),
            NamedGraph::Foster => (90, 3, 10, "{3,2,2,2,2,1,1,1;1,1,1,1,2,2,2,3}"),
            NamedGraph::BiggsSmith => (102, 3, 9, "{3,2,2,2,1,1,1;1,1,1,1,1,1,3}"),
            NamedGraph::Shrikhande => (16, 6, 3, "{6,3;1,2}"),
            NamedGraph::Icosahedron => (12, 5, 3, "{5,2,1;1,2,5}"),
            NamedGraph::Clebsch => (16, 5, 4, "{5,4;1,2}"),
            NamedGraph::HoffmanSingleton => (50, 7, 5, "{7,6;1,1}"),
            NamedGraph::K4 => (4, 3, 3, "{3;1}"),
            NamedGraph::K33 => (6, 3, 4, "{3,2;1,3}"),
            NamedGraph::Q3 => (8, 3, 4, "{3,2,1;1,2,3}"),
            NamedGraph::LinePetersen => (15, 4, 3, "{4,2,1;1,1,4}"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let squash = |t: &str| {
            t.chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect::<String>()
                .to_lowercase()
        };
        let key = squash(s);
        NamedGraph::ALL
            .into_iter()
            .find(|g| squash(g.slug()) == key)
            .ok_or_else(|| FamilyError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Identifies one member of a family, e.g. `odd:4`, `hamming:2,3`
/// (diameter `d`, alphabet `q`), `named:heawood`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilySpec {
    Odd { k: usize },
    Hamming { d: usize, q: usize },
    Johnson { n: usize, k: usize },
    Kneser { n: usize, k: usize },
    Paley { q: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { n: usize },
    Crown { n: usize },
    Cube { n: usize },
    Named(NamedGraph),
}

impl FamilySpec {
    pub fn display_name(&self) -> String {
        match *self {
            FamilySpec::Odd { k } => format!("Odd graph O_{k}"),
            FamilySpec::Hamming { d, q } => format!("Hamming graph H({d},{q})"),
            FamilySpec::Johnson { n, k } => format!("Johnson graph J({n},{k})"),
            FamilySpec::Kneser { n, k } => format!("Kneser graph K({n},{k})"),
            FamilySpec::Paley { q } => format!("Paley graph P_{q}"),
            FamilySpec::Cycle { n } => format!("C_{n}"),
            FamilySpec::Complete { n } => format!("K_{n}"),
            FamilySpec::CompleteBipartite { n } => format!("K_{{{n},{n}}}"),
            FamilySpec::Crown { n } => format!("(K_{n} □ K_2)^c"),
            FamilySpec::Cube { n } => format!("Cube Q_{n}"),
            FamilySpec::Named(g) => g.display_name().to_string(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Odd { k } => write!(f, "odd:{k}"),
            FamilySpec::Hamming { d, q } => write!(f, "hamming:{d},{q}"),
            FamilySpec::Johnson { n, k } => write!(f, "johnson:{n},{k}"),
            FamilySpec::Kneser { n, k } => write!(f, "kneser:{n},{k}"),
            FamilySpec::Paley { q } => write!(f, "paley:{q}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite { n } => write!(f, "complete-bipartite:{n}"),
            FamilySpec::Crown { n } => write!(f, "crown:{n}"),
            FamilySpec::Cube { n } => write!(f, "cube:{n}"),
            FamilySpec::Named(g) => write!(f, "named:{g}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(s.to_string());
        let (family, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let family = family.trim().to_lowercase();
        if family == "named" {
            return Ok(FamilySpec::Named(args.parse()?));
        }
        let nums: Vec<usize> = args
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let spec = match (family.as_str(), nums.as_slice()) {
            ("odd", &[k]) => FamilySpec::Odd { k },
            ("hamming", &[d, q]) => FamilySpec::Hamming { d, q },
            ("johnson", &[n, k]) => FamilySpec::Johnson { n, k },
            ("kneser", &[n, k]) => FamilySpec::Kneser { n, k },
            ("paley", &[q]) => FamilySpec::Paley { q },
            ("cycle", &[n]) => FamilySpec::Cycle { n },
            ("complete", &[n]) => FamilySpec::Complete { n },
            ("complete-bipartite" | "complete_bipartite" | "bipartite", &[n]) => {
                FamilySpec::CompleteBipartite { n }
            }
            ("crown", &[n]) => FamilySpec::Crown { n },
            ("cube", &[n]) => FamilySpec::Cube { n },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl From<FamilySpec> for String {
    fn from(spec: FamilySpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = FamilyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A constructed graph with its spec and a human-readable label per vertex.
#[derive(Debug, Clone)]
pub struct FamilyGraph {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub labels: Vec<String>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `Some((p, e))` when `q = p^e` for a prime `p`.
fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Vertex count of `spec`, computed without building anything.
pub fn expected_order(spec: &FamilySpec) -> usize {
    match *spec {
        FamilySpec::Odd { k } => binomial((2 * k).saturating_sub(1), k.saturating_sub(1)),
        FamilySpec::Hamming { d, q } => q.checked_pow(d as u32).unwrap_or(usize::MAX),
        FamilySpec::Johnson { n, k } | FamilySpec::Kneser { n, k } => binomial(n, k),
        FamilySpec::Paley { q } => q,
        FamilySpec::Cycle { n } | FamilySpec::Complete { n } => n,
        FamilySpec::CompleteBipartite { n } | FamilySpec::Crown { n } => 2 * n,
        FamilySpec::Cube { n } => 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
        FamilySpec::Named(g) => g.profile().0,
    }
}

/// The intersection array a member of the family must have, where one is known.
pub fn expected_array(spec: &FamilySpec) -> Option<IntersectionArray> {
    let (b, c): (Vec<usize>, Vec<usize>) = match *spec {
        FamilySpec::Odd { k } if k >= 2 => {
            let d = k - 1;
            let b = (0..d)
                .map(|i| if i == 0 { k } else { k - i.div_ceil(2) })
                .collect();
            let c = (1..=d).map(|i| i.div_ceil(2)).collect();
            (b, c)
        }
        FamilySpec::Hamming { d, q } if q >= 2 => (
            (0..d).map(|i| (d - i) * (q - 1)).collect(),
            (1..=d).collect(),
        ),
        FamilySpec::Cube { n } => ((0..n).map(|i| n - i).collect(), (1..=n).collect()),
        FamilySpec::Johnson { n, k } if k <= n => {
            let d = k.min(n - k);
            (
                (0..d).map(|i| (k - i) * (n - k - i)).collect(),
                (1..=d).map(|i| i * i).collect(),
            )
        }
        FamilySpec::Kneser { n, k: 1 } if n >= 2 => (vec![n - 1], vec![1]),
        FamilySpec::Kneser { n, k: 2 } if n >= 5 => (
            vec![(n - 2) * (n - 3) / 2, 2 * n - 8],
            vec![1, (n - 3) * (n - 4) / 2],
        ),
        FamilySpec::Kneser { n, k } if k >= 2 && n == 2 * k + 1 => {
            return expected_array(&FamilySpec::Odd { k: k + 1 })
        }
        FamilySpec::Paley { q } => {
            let h = (q - 1) / 4;
            (vec![2 * h, h], vec![1, h])
        }
        FamilySpec::Cycle { n } if n >= 3 => {
            let d = n / 2;
            let b = (0..d).map(|i| if i == 0 { 2 } else { 1 }).collect();
            let c = (1..=d)
                .map(|i| if i == d && n % 2 == 0 { 2 } else { 1 })
                .collect();
            (b, c)
        }
        FamilySpec::Complete { n } if n >= 2 => (vec![n - 1], vec![1]),
        FamilySpec::CompleteBipartite { n } if n >= 2 => (vec![n, n - 1], vec![1, n]),
        FamilySpec::CompleteBipartite { n: 1 } => (vec![1], vec![1]),
        FamilySpec::Crown { n } if n >= 3 => (vec![n - 1, n - 2, 1], vec![1, n - 2, n - 1]),
        FamilySpec::Named(g) => return g.profile().3.parse().ok(),
        _ => return None,
    };
    IntersectionArray::new(b, c).ok()
}

pub fn build(spec: &FamilySpec) -> Result<FamilyGraph, FamilyError> {
    check_domain(spec)?;
    let order = expected_order(spec);
    if order > MAX_ORDER {
        return Err(FamilyError::TooLarge {
            spec: spec.to_string(),
            order,
        });
    }
    let (graph, labels) = match *spec {
        FamilySpec::Odd { k } => subsets_graph(2 * k - 1, k - 1, |a, b| a & b == 0),
        FamilySpec::Hamming { d, q } => hamming_graph(d, q),
        FamilySpec::Cube { n } => hamming_graph(n, 2),
        FamilySpec::Johnson { n, k } => {
            subsets_graph(n, k, |a, b| (a & b).count_ones() as usize == k - 1)
        }
        FamilySpec::Kneser { n, k } => subsets_graph(n, k, |a, b| a & b == 0),
        FamilySpec::Paley { q } => paley_graph(q),
        FamilySpec::Cycle { n } => (cycle(n), numbered(n)),
        FamilySpec::Complete { n } => (complete(n), numbered(n)),
        FamilySpec::CompleteBipartite { n } => complete_bipartite(n),
        FamilySpec::Crown { n } => crown(n),
        FamilySpec::Named(g) => named(g),
    };
    validate(spec, &graph)?;
    Ok(FamilyGraph {
        spec: *spec,
        graph,
        labels,
    })
}

fn check_domain(spec: &FamilySpec) -> Result<(), FamilyError> {
    match *spec {
        FamilySpec::Odd { k } if k < 2 => Err(invalid("odd", "k must be at least 2")),
        FamilySpec::Hamming { d, q } if d < 1 || q < 1 => {
            Err(invalid("hamming", "d and q must be at least 1"))
        }
        FamilySpec::Johnson { n, k } if k < 1 || k > n => {
            Err(invalid("johnson", "need 1 <= k <= n"))
        }
        FamilySpec::Kneser { n, k } if k < 1 || k > n => Err(invalid("kneser", "need 1 <= k <= n")),
        FamilySpec::Paley { q } => match prime_power(q) {
            Some((_, e)) if q % 4 == 1 && e <= 2 => Ok(()),
            Some((_, e)) if q % 4 == 1 => Err(invalid(
                "paley",
                format!("q = p^{e} needs a field of degree > 2"),
            )),
            _ => Err(invalid(
                "paley",
                "q must be a prime or prime square with q = 1 mod 4",
            )),
        },
        FamilySpec::Cycle { n } if n < 3 => Err(invalid("cycle", "n must be at least 3")),
        FamilySpec::Complete { n } if n < 1 => Err(invalid("complete", "n must be at least 1")),
        FamilySpec::CompleteBipartite { n } if n < 1 => {
            Err(invalid("complete-bipartite", "n must be at least 1"))
        }
        FamilySpec::Crown { n } if n < 3 => Err(invalid("crown", "n must be at least 3")),
        FamilySpec::Cube { n } if n < 1 => Err(invalid("cube", "n must be at least 1")),
        _ => Ok(()),
    }
}

fn validate(spec: &FamilySpec, g: &Graph) -> Result<(), FamilyError> {
    let fail = |reason: String| FamilyError::Validation {
        spec: spec.to_string(),
        reason,
    };
    let order = expected_order(spec);
    if g.order() != order {
        return Err(fail(format!("order {} != {order}", g.order())));
    }
    if let FamilySpec::Named(name) = spec {
        let (_, degree, girth, _) = name.profile();
        if g.regular_degree() != Some(degree) {
            return Err(fail(format!("not {degree}-regular")));
        }
        if g.girth() != Some(girth) {
            return Err(fail(format!("girth {:?} != {girth}", g.girth())));
        }
    }
    if let Some(expected) = expected_array(spec) {
        match is_distance_regular(g) {
            Ok(DrgCheck::Regular(ia)) if ia == expected => {}
            Ok(DrgCheck::Regular(ia)) => return Err(fail(format!("array {ia} != {expected}"))),
            Ok(DrgCheck::NotRegular(v)) => {
                return Err(fail(format!("not distance-regular at {:?}", v.pair)))
            }
            Err(e) => return Err(fail(e.to_string())),
        }
    }
    Ok(())
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

fn cycle(n: usize) -> Graph {
    Graph::from_fn(n, |u, v| v - u == 1 || (u == 0 && v == n - 1))
}

fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true)
}

fn complete_bipartite(n: usize) -> (Graph, Vec<String>) {
    let g = Graph::from_fn(2 * n, |u, v| (u < n) != (v < n));
    let labels = (0..2 * n)
        .map(|v| {
            if v < n {
                format!("a{v}")
            } else {
                format!("b{}", v - n)
            }
        })
        .collect();
    (g, labels)
}

fn crown(n: usize) -> (Graph, Vec<String>) {
    let g = complete(n).cartesian_product(&complete(2)).complement();
    let labels = (0..2 * n)
        .map(|v| format!("({},{})", v / 2, v % 2))
        .collect();
    (g, labels)
}

/// Lexicographic `k`-subsets of `{1..n}` as bitmasks, joined by `adjacent`.
fn subsets_graph(n: usize, k: usize, adjacent: impl Fn(u64, u64) -> bool) -> (Graph, Vec<String>) {
    let subsets = k_subsets(n, k);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    let g = Graph::from_fn(masks.len(), |a, b| adjacent(masks[a], masks[b]));
    let labels = subsets
        .iter()
        .map(|s| {
            format!(
                "{{{}}}",
                s.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    (g, labels)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..n {
            if n - x < k - current.len() {
                break;
            }
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Words of length `d` over `0..q`, first coordinate most significant.
fn hamming_graph(d: usize, q: usize) -> (Graph, Vec<String>) {
    let n = q.pow(d as u32);
    let digits = |mut v: usize| {
        let mut w = vec![0; d];
        for slot in w.iter_mut().rev() {
            *slot = v % q;
            v /= q;
        }
        w
    };
    let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let g = Graph::from_fn(n, |a, b| {
        words[a]
            .iter()
            .zip(&words[b])
            .filter(|(x, y)| x != y)
            .count()
            == 1
    });
    let labels = words
        .iter()
        .map(|w| {
            format!(
                "({})",
                w.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    (g, labels)
}

/// Elements of GF(q), q = p or p^2; index `a + p*b` stands for `a + b*x`
/// with `x^2 = r` for the least quadratic non-residue `r` mod `p`.
fn paley_graph(q: usize) -> (Graph, Vec<String>) {
    let (p, e) = prime_power(q).expect("domain checked");
    let r = (2..p)
        .find(|&r| (1..p).all(|z| z * z % p != r))
        .unwrap_or(0);
    let mul = |x: usize, y: usize| -> usize {
        let (a, b) = (x % p, x / p);
        let (c, d) = (y % p, y / p);
        let re = (a * c + b * d % p * r) % p;
        let im = (a * d + b * c) % p;
        re + p * im
    };
    let sub = |x: usize, y: usize| -> usize {
        let re = (x % p + p - y % p) % p;
        let im = (x / p + p - y / p) % p;
        re + p * im
    };
    let mut square = vec![false; q];
    for z in 1..q {
        square[mul(z, z)] = true;
    }
    let g = Graph::from_fn(q, |u, v| square[sub(u, v)]);
    let labels = (0..q)
        .map(|x| {
            if e == 1 {
                x.to_string()
            } else {
                format!("{}+{}x", x % p, x / p)
            }
        })
        .collect();
    (g, labels)
}

/// Generalized Petersen graph GP(n, k): outer cycle, spokes, inner star polygon.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::from_edge_list(2 * n, &edges).expect("generalized Petersen edges are simple")
}

fn embedded(text: &str) -> Graph {
    io::from_edge_list(text).expect("embedded edge list is well formed")
}

/// Points `0..7` and lines `7..14` of the Fano plane; line `i` is `{i, i+1, i+3}`.
fn heawood() -> Graph {
    Graph::from_fn(14, |u, v| {
        u < 7 && v >= 7 && [0, 1, 3].contains(&((u + 7 - (v - 7)) % 7))
    })
}

fn tutte_8_cage() -> (Graph, Vec<String>) {
    let pairs = k_subsets(6, 2);
    let mut matchings: Vec<[(usize, usize); 3]> = Vec::new();
    // Perfect matchings of K_6 containing {0, x}, then a matching of the remaining four.
    for x in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&y| y != x).collect();
        let (w, others) = (rest[0], &rest[1..]);
        for (i, &y) in others.iter().enumerate() {
            let mut remaining: Vec<usize> = others.to_vec();
            remaining.remove(i);
            matchings.push([(0, x), (w, y), (remaining[0], remaining[1])]);
        }
    }
    let g = Graph::from_fn(30, |u, v| {
        if u >= 15 || v < 15 {
            return false;
        }
        let (a, b) = (pairs[u][0], pairs[u][1]);
        matchings[v - 15].contains(&(a, b))
    });
    let mut labels: Vec<String> = pairs
        .iter()
        .map(|p| format!("{{{},{}}}", p[0] + 1, p[1] + 1))
        .collect();
    labels.extend(matchings.iter().map(|m| {
        m.iter()
            .map(|&(a, b)| format!("{}{}", a + 1, b + 1))
            .collect::<Vec<_>>()
            .join("|")
    }));
    (g, labels)
}

fn named(name: NamedGraph) -> (Graph, Vec<String>) {
    let g = match name {
        NamedGraph::Petersen => generalized_petersen(5, 2),
        NamedGraph::Heawood => heawood(),
        NamedGraph::CoHeawood => {
            let points: Vec<Vertex> = (0..7).collect();
            let lines: Vec<Vertex> = (7..14).collect();
            heawood()
                .bipartite_complement(&points, &lines)
                .expect("Heawood graph is bipartite")
        }
        NamedGraph::Pappus => embedded(include_str!("../data/pappus.edges")),
        NamedGraph::Desargues => generalized_petersen(10, 3),
        NamedGraph::Dodecahedron => generalized_petersen(10, 2),
        NamedGraph::Coxeter => embedded(include_str!("../data/coxeter.edges")),
        NamedGraph::Tutte8Cage => return tutte_8_cage(),
        NamedGraph::Foster => embedded(include_str!("../data/foster.edges")),
        NamedGraph::BiggsSmith => embedded(include_str!("../data/biggs_smith.edges")),
        NamedGraph::Shrikhande => {
            let steps = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
            Graph::from_fn(16, |u, v| {
                let d = ((v / 4 + 4 - u / 4) % 4, (v % 4 + 4 - u % 4) % 4);
                steps.contains(&d)
            })
        }
        NamedGraph::Icosahedron => {
            let mut edges = Vec::new();
            for i in 0..5 {
                let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
                let (low, low_next) = (6 + i, 6 + (i + 1) % 5);
                edges.extend([
                    (0, up),
                    (up, up_next),
                    (low, low_next),
                    (low, 11),
                    (up, low),
                    (up, low_next),
                ]);
            }
            Graph::from_edge_list(12, &edges).expect("icosahedron edges are simple")
        }
        NamedGraph::Clebsch => Graph::from_fn(16, |u, v| matches!((u ^ v).count_ones(), 1 | 4)),
        NamedGraph::HoffmanSingleton => Graph::from_fn(50, |u, v| {
            // u < v, so a pentagon vertex (below 25) always comes first.
            let (h, j) = (u / 5, u % 5);
            match (u < 25, v < 25) {
                (true, true) => h == v / 5 && matches!((v % 5 + 5 - j) % 5, 1 | 4),
                (false, false) => h == v / 5 && matches!((v % 5 + 5 - j) % 5, 2 | 3),
                _ => {
                    let (i, l) = ((v - 25) / 5, (v - 25) % 5);
                    l == (h * i + j) % 5
                }
            }
        }),
        NamedGraph::K4 => complete(4),
        NamedGraph::K33 => complete_bipartite(3).0,
        NamedGraph::Q3 => hamming_graph(3, 2).0,
        NamedGraph::LinePetersen => {
            let (line, edges) = generalized_petersen(5, 2).line_graph();
            let labels = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            return (line, labels);
        }
    };
    let n = g.order();
    (g, numbered(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn built(s: &str) -> FamilyGraph {
        build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "odd:4",
            "hamming:2,3",
            "johnson:6,3",
            "kneser:5,2",
            "paley:13",
            "cycle:5",
            "complete:4",
            "complete-bipartite:3",
            "crown:4",
            "cube:3",
            "named:tutte-8-cage",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "named:Tutte8Cage".parse::<FamilySpec>().unwrap(),
            FamilySpec::Named(NamedGraph::Tutte8Cage)
        );
        assert!("named:tutte-12-cage".parse::<FamilySpec>().is_err());
        assert!("odd:x".parse::<FamilySpec>().is_err());
        assert!("odd".parse::<FamilySpec>().is_err());
        assert!("hamming:3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn spec_serde_uses_strings() {
        let spec = FamilySpec::Hamming { d: 3, q: 3 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, "\"hamming:3,3\"");
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
    }

    #[test]
    fn every_named_graph_builds() {
        for name in NamedGraph::ALL {
            let fg = build(&FamilySpec::Named(name)).unwrap();
            assert_eq!(fg.labels.len(), fg.graph.order(), "{name}");
        }
    }

    #[test]
    fn parameter_domains() {
        assert!(matches!(
            build(&FamilySpec::Odd { k: 1 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Paley { q: 7 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Paley { q: 15 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Paley { q: 81 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Johnson { n: 3, k: 4 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Cycle { n: 2 }),
            Err(FamilyError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(&FamilySpec::Hamming { d: 10, q: 10 }),
            Err(FamilyError::TooLarge { .. })
        ));
    }

    #[test]
    fn small_family_members() {
        assert_eq!(built("odd:2").graph, complete(3));
        assert_eq!(built("kneser:6,1").graph, complete(6));
        assert_eq!(built("hamming:1,5").graph, complete(5));
        assert_eq!(built("hamming:1,1").graph.order(), 1);
        assert_eq!(built("cube:2").graph.girth(), Some(4));
    }

    #[test]
    fn odd_graph_orders() {
        for k in 2..=6 {
            let fg = build(&FamilySpec::Odd { k }).unwrap();
            assert_eq!(fg.graph.order(), binomial(2 * k - 1, k - 1));
            assert_eq!(fg.graph.regular_degree(), Some(k));
        }
    }

    #[test]
    fn hamming_matches_cartesian_power() {
        let k3 = complete(3);
        let h = built("hamming:3,3").graph;
        assert_eq!(h, k3.cartesian_product(&k3).cartesian_product(&k3));
        assert_eq!(built("hamming:2,3").labels[5], "(1,2)");
    }

    #[test]
    fn johnson_labels_are_one_based_subsets() {
        let fg = built("johnson:5,2");
        assert_eq!(fg.labels[0], "{1,2}");
        assert_eq!(fg.labels[9], "{4,5}");
        assert_eq!(expected_array(&fg.spec).unwrap().to_string(), "{6,2;1,4}");
    }

    #[test]
    fn paley_squares() {
        let p13 = built("paley:13").graph;
        let from_zero: Vec<_> = p13.neighbors(0).to_vec();
        assert_eq!(from_zero, vec![1, 3, 4, 9, 10, 12]);
        let p17 = built("paley:17").graph;
        assert_eq!(p17.neighbors(0), &[1, 2, 4, 8, 9, 13, 15, 16]);
        assert_eq!(built("paley:9").graph.regular_degree(), Some(4));
        assert_eq!(built("paley:25").graph.regular_degree(), Some(12));
    }

    #[test]
    fn heawood_bipartite_complement_is_co_heawood() {
        let h = built("named:heawood").graph;
        let co = built("named:co-heawood").graph;
        let points: Vec<_> = (0..7).collect();
        let lines: Vec<_> = (7..14).collect();
        assert_eq!(co.bipartite_complement(&points, &lines).unwrap(), h);
    }

    #[test]
    fn crown_formula_matches() {
        for n in 3..=6 {
            let fg = build(&FamilySpec::Crown { n }).unwrap();
            assert_eq!(fg.graph.regular_degree(), Some(n - 1));
        }
    }
}
